//! Univariate factorization over towers, within a declared scope.
//!
//! Supported scope:
//! * any degree over a small finite field (exhaustive roots, then trial
//!   division by enumerated low-degree monic polynomials);
//! * degree <= 4 over characteristic-0 algebraic towers (square-free
//!   decomposition, rational root search, discriminant tests for
//!   quadratics, resolvent cubic for quartics);
//! * over towers with a transcendental step, factors of degree <= 2 in the
//!   main variable.
//!
//! Anything else is an `UnsupportedFactorization` error, never a guess.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::elem::TowerElem;
use super::sqrt::{enumerate_elements, field_size_at, sqrt_in_tower};
use super::upoly::UniPoly;
use super::{FieldError, FieldTower};

/// Result of [`factor_univariate`]: `unit * prod(factor^mult)` equals the
/// input exactly; factors are monic, irreducible within scope, and sorted
/// lexicographically on their canonical coefficient sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: TowerElem,
    pub factors: Vec<(UniPoly, u32)>,
}

impl Factorization {
    /// Re-multiplies unit and factors; used by tests as an exactness oracle.
    pub fn expand(&self, t: &FieldTower) -> UniPoly {
        let mut acc = UniPoly::constant(t, self.unit.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(t, &f.pow(t, *m as u64));
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Factors a nonzero univariate polynomial over the tower.
pub fn factor_univariate(t: &FieldTower, f: &UniPoly) -> Result<Factorization, FieldError> {
    if f.is_zero() {
        return Err(FieldError::ZeroPolynomial);
    }
    let unit = f.leading_coefficient().expect("nonzero").clone();
    let g = f.monic(t);
    if g.degree() == Some(0) {
        return Ok(Factorization { unit, factors: Vec::new() });
    }
    let mut factors = if t.is_finite_field() {
        factor_finite(t, &g)?
    } else {
        factor_char0(t, &g)?
    };
    factors.sort();
    Ok(Factorization { unit, factors })
}

// ---- finite fields ---------------------------------------------------------

fn factor_finite(t: &FieldTower, g: &UniPoly) -> Result<Vec<(UniPoly, u32)>, FieldError> {
    let mut out = Vec::new();
    for (part, mult) in squarefree_finite(t, g)? {
        for f in factor_squarefree_finite(t, &part)? {
            out.push((f, mult));
        }
    }
    Ok(out)
}

/// Square-free decomposition in characteristic p, including the case where
/// the derivative vanishes (then `g` is a p-th power).
fn squarefree_finite(t: &FieldTower, g: &UniPoly) -> Result<Vec<(UniPoly, u32)>, FieldError> {
    let p = t.characteristic() as u32;
    let deriv = g.derivative(t);
    if deriv.is_zero() {
        let root = pth_root_poly(t, g)?;
        let inner = squarefree_finite(t, &root)?;
        return Ok(inner.into_iter().map(|(f, m)| (f, m * p)).collect());
    }
    let mut out: Vec<(UniPoly, u32)> = Vec::new();
    let mut c = g.gcd(t, &deriv);
    let mut w = g.divmod(t, &c).0;
    let mut i = 1u32;
    while w.degree() > Some(0) {
        let y = w.gcd(t, &c);
        let fac = w.divmod(t, &y).0;
        if fac.degree() > Some(0) {
            out.push((fac, i));
        }
        w = y.clone();
        c = c.divmod(t, &y).0;
        i += 1;
    }
    if c.degree() > Some(0) {
        // remaining part is a p-th power
        let root = pth_root_poly(t, &c)?;
        for (f, m) in squarefree_finite(t, &root)? {
            merge_factor(&mut out, f, m * p);
        }
    }
    Ok(out)
}

fn merge_factor(out: &mut Vec<(UniPoly, u32)>, f: UniPoly, m: u32) {
    for (g, n) in out.iter_mut() {
        if *g == f {
            *n += m;
            return;
        }
    }
    out.push((f, m));
}

/// For `g(y) = h(y^p)`, returns the polynomial whose p-th power is `g`.
fn pth_root_poly(t: &FieldTower, g: &UniPoly) -> Result<UniPoly, FieldError> {
    let p = t.characteristic() as usize;
    let q = field_size_at(t, t.level())
        .ok_or_else(|| FieldError::UnsupportedFactorization("infinite field".into()))?;
    let mut coeffs = Vec::new();
    for (i, c) in g.coeffs().iter().enumerate() {
        if i % p == 0 {
            // p-th root via Frobenius inverse: a^(q/p)
            coeffs.push(t.pow(c, (q / p as u128) as u64));
        } else if !t.is_zero(c) {
            return Err(FieldError::UnsupportedFactorization(
                "polynomial with zero derivative is not a p-th power".into(),
            ));
        }
    }
    Ok(UniPoly::new(t, coeffs))
}

fn factor_squarefree_finite(t: &FieldTower, h: &UniPoly) -> Result<Vec<UniPoly>, FieldError> {
    let mut out = Vec::new();
    let mut rest = h.clone();
    if rest.degree() <= Some(0) {
        return Ok(out);
    }
    let elems = enumerate_elements(t, t.level()).ok_or_else(|| {
        FieldError::UnsupportedFactorization("finite field too large to enumerate".into())
    })?;
    // exhaustive root search for the linear factors
    for r in &elems {
        if rest.degree() < Some(1) {
            break;
        }
        if t.is_zero(&rest.eval(t, r)) {
            let lin = UniPoly::new(t, vec![t.neg(r), t.one()]);
            let (q, rem) = rest.divmod(t, &lin);
            debug_assert!(rem.is_zero());
            out.push(lin);
            rest = q;
        }
    }
    // ascending trial division; any divisor of degree k found after all
    // factors of degree < k are removed is irreducible
    let mut k = 2usize;
    while rest.degree() > Some(2 * k - 1) {
        let qsize = field_size_at(t, t.level()).expect("finite");
        if qsize.pow(k as u32) > (1u128 << 16) {
            return Err(FieldError::UnsupportedFactorization(format!(
                "trial division budget exceeded at degree {k}"
            )));
        }
        for cand in monic_polys_of_degree(t, &elems, k) {
            if rest.degree() < Some(k) {
                break;
            }
            loop {
                let (q, rem) = rest.divmod(t, &cand);
                if rem.is_zero() {
                    out.push(cand.clone());
                    rest = q;
                } else {
                    break;
                }
            }
        }
        k += 1;
    }
    if rest.degree() > Some(0) {
        out.push(rest);
    }
    Ok(out)
}

fn monic_polys_of_degree(t: &FieldTower, elems: &[TowerElem], k: usize) -> Vec<UniPoly> {
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    loop {
        let mut coeffs: Vec<TowerElem> = idx.iter().map(|&i| elems[i].clone()).collect();
        coeffs.push(t.one());
        out.push(UniPoly::new(t, coeffs));
        let mut carry = 0;
        loop {
            if carry == k {
                return out;
            }
            idx[carry] += 1;
            if idx[carry] == elems.len() {
                idx[carry] = 0;
                carry += 1;
            } else {
                break;
            }
        }
    }
}

// ---- characteristic zero ---------------------------------------------------

fn factor_char0(t: &FieldTower, g: &UniPoly) -> Result<Vec<(UniPoly, u32)>, FieldError> {
    let mut out = Vec::new();
    for (part, mult) in squarefree_char0(t, g) {
        for f in factor_squarefree_char0(t, &part)? {
            out.push((f, mult));
        }
    }
    Ok(out)
}

fn squarefree_char0(t: &FieldTower, g: &UniPoly) -> Vec<(UniPoly, u32)> {
    let deriv = g.derivative(t);
    let mut out = Vec::new();
    let mut c = g.gcd(t, &deriv);
    let mut w = g.divmod(t, &c).0;
    let mut i = 1u32;
    while w.degree() > Some(0) {
        let y = w.gcd(t, &c);
        let fac = w.divmod(t, &y).0;
        if fac.degree() > Some(0) {
            out.push((fac, i));
        }
        w = y.clone();
        c = c.divmod(t, &y).0;
        i += 1;
    }
    out
}

fn factor_squarefree_char0(t: &FieldTower, h: &UniPoly) -> Result<Vec<UniPoly>, FieldError> {
    match h.degree() {
        None | Some(0) => Ok(Vec::new()),
        Some(1) => Ok(vec![h.clone()]),
        Some(2) => factor_quadratic(t, h),
        Some(3) => factor_cubic(t, h),
        Some(4) => factor_quartic(t, h),
        Some(d) => {
            if has_transcendental(t) {
                Err(FieldError::UnsupportedFactorization(format!(
                    "degree {d} over a tower with a transcendental step (scope: degree <= 2)"
                )))
            } else {
                Err(FieldError::UnsupportedFactorization(format!(
                    "degree {d} over an algebraic tower (scope: degree <= 4)"
                )))
            }
        }
    }
}

fn has_transcendental(t: &FieldTower) -> bool {
    t.steps().iter().any(|s| s.degree().is_none())
}

/// Monic quadratic: splits iff the discriminant is a square in the tower.
fn factor_quadratic(t: &FieldTower, h: &UniPoly) -> Result<Vec<UniPoly>, FieldError> {
    let b = h.coeff(t, 1);
    let c = h.coeff(t, 0);
    let disc = t.sub(&t.mul(&b, &b), &t.mul(&t.from_i64(4), &c));
    match sqrt_in_tower(t, &disc)? {
        None => Ok(vec![h.clone()]),
        Some(w) => {
            let two = t.from_i64(2);
            let r1 = t.div(&t.sub(&w, &b), &two)?;
            let r2 = t.div(&t.sub(&t.neg(&w), &b), &two)?;
            Ok(vec![
                UniPoly::new(t, vec![t.neg(&r1), t.one()]),
                UniPoly::new(t, vec![t.neg(&r2), t.one()]),
            ])
        }
    }
}

fn factor_cubic(t: &FieldTower, h: &UniPoly) -> Result<Vec<UniPoly>, FieldError> {
    if has_transcendental(t) {
        return Err(FieldError::UnsupportedFactorization(
            "cubic over a tower with a transcendental step".into(),
        ));
    }
    let rat_coeffs = to_rational_poly(t, h);
    let Some(rc) = rat_coeffs else {
        return Err(FieldError::UnsupportedFactorization(
            "cubic with non-rational coefficients".into(),
        ));
    };
    if let Some(root) = rational_root(&rc)? {
        let r = t.from_rat(root);
        let lin = UniPoly::new(t, vec![t.neg(&r), t.one()]);
        let (quot, rem) = h.divmod(t, &lin);
        debug_assert!(rem.is_zero());
        let mut out = vec![lin];
        out.extend(factor_quadratic(t, &quot)?);
        return Ok(out);
    }
    // no rational root: irreducible over Q; stays irreducible over towers
    // whose absolute degree is coprime to 3
    match t.absolute_degree() {
        Some(d) if d % 3 != 0 => Ok(vec![h.clone()]),
        _ => Err(FieldError::UnsupportedFactorization(
            "cubic over a tower of degree divisible by 3".into(),
        )),
    }
}

/// Monic quartic with rational coefficients: rational roots first, then the
/// resolvent cubic. Over towers of 2-power absolute degree the search is
/// complete: a quadratic split `(y^2+uy+v)(y^2-uy+w)` forces `u^2` to be a
/// root of the rational resolvent, and tower elements of 2-power degree
/// that satisfy a rational cubic are rational.
fn factor_quartic(t: &FieldTower, h: &UniPoly) -> Result<Vec<UniPoly>, FieldError> {
    if has_transcendental(t) {
        return Err(FieldError::UnsupportedFactorization(
            "quartic over a tower with a transcendental step".into(),
        ));
    }
    let Some(rc) = to_rational_poly(t, h) else {
        return Err(FieldError::UnsupportedFactorization(
            "quartic with non-rational coefficients".into(),
        ));
    };
    if let Some(root) = rational_root(&rc)? {
        let r = t.from_rat(root);
        let lin = UniPoly::new(t, vec![t.neg(&r), t.one()]);
        let (quot, rem) = h.divmod(t, &lin);
        debug_assert!(rem.is_zero());
        let mut out = vec![lin];
        out.extend(factor_cubic(t, &quot)?);
        return Ok(out);
    }
    // depress: y -> y - b3/4
    let b3 = h.coeff(t, 3);
    let shift = t.div(&b3, &t.from_i64(4))?;
    let sub = UniPoly::new(t, vec![t.neg(&shift), t.one()]);
    let dep = h.compose(t, &sub);
    debug_assert!(t.is_zero(&dep.coeff(t, 3)));
    let a = dep.coeff(t, 2);
    let b = dep.coeff(t, 1);
    let c = dep.coeff(t, 0);

    let unshift = UniPoly::new(t, vec![shift.clone(), t.one()]);
    let finish = |t: &FieldTower, f1: UniPoly, f2: UniPoly| -> Result<Vec<UniPoly>, FieldError> {
        let g1 = f1.compose(t, &unshift);
        let g2 = f2.compose(t, &unshift);
        let mut out = factor_quadratic(t, &g1)?;
        out.extend(factor_quadratic(t, &g2)?);
        Ok(out)
    };

    // u = 0 branch: (y^2 + v)(y^2 + w), needs b = 0
    if t.is_zero(&b) {
        let disc = t.sub(&t.mul(&a, &a), &t.mul(&t.from_i64(4), &c));
        if let Some(wd) = sqrt_in_tower(t, &disc)? {
            let two = t.from_i64(2);
            let v = t.div(&t.add(&a, &wd), &two)?;
            let w = t.div(&t.sub(&a, &wd), &two)?;
            let f1 = UniPoly::new(t, vec![v, t.zero(), t.one()]);
            let f2 = UniPoly::new(t, vec![w, t.zero(), t.one()]);
            return finish(t, f1, f2);
        }
    }
    // resolvent cubic U^3 + 2a U^2 + (a^2 - 4c) U - b^2, rational roots
    let ra = to_rational(t, &a).expect("rational coefficients");
    let rb = to_rational(t, &b).expect("rational coefficients");
    let rcc = to_rational(t, &c).expect("rational coefficients");
    let resolvent = vec![
        -(&rb * &rb),
        &ra * &ra - BigRational::from_integer(4.into()) * &rcc,
        BigRational::from_integer(2.into()) * &ra,
        BigRational::one(),
    ];
    let mut uroots = all_rational_roots(&resolvent)?;
    uroots.sort();
    for u0 in uroots {
        if u0.is_zero() {
            continue; // u = 0 handled above
        }
        let u0e = t.from_rat(u0);
        if let Some(u) = sqrt_in_tower(t, &u0e)? {
            let two = t.from_i64(2);
            let bu = t.div(&b, &u)?;
            let v = t.div(&t.sub(&t.add(&a, &t.mul(&u, &u)), &bu), &two)?;
            let w = t.div(&t.add(&t.add(&a, &t.mul(&u, &u)), &bu), &two)?;
            if t.mul(&v, &w) == c {
                let f1 = UniPoly::new(t, vec![v, u.clone(), t.one()]);
                let f2 = UniPoly::new(t, vec![w, t.neg(&u), t.one()]);
                return finish(t, f1, f2);
            }
        }
    }
    let d = t.absolute_degree().expect("algebraic tower");
    if d.is_power_of_two() {
        Ok(vec![h.clone()])
    } else {
        Err(FieldError::UnsupportedFactorization(
            "quartic over a tower whose degree is not a power of 2".into(),
        ))
    }
}

// ---- rational helpers ------------------------------------------------------

/// Recognizes elements of the prime subfield in characteristic 0.
pub fn to_rational(t: &FieldTower, e: &TowerElem) -> Option<BigRational> {
    match e {
        TowerElem::Rat(r) => Some(r.clone()),
        TowerElem::Fp(_) => None,
        TowerElem::Alg(coords) => {
            for c in coords.iter().skip(1) {
                if !is_zero_shapeless(c) {
                    return None;
                }
            }
            match coords.first() {
                None => Some(BigRational::zero()),
                Some(c) => to_rational(t, c),
            }
        }
        TowerElem::Frac(num, den) => {
            if den.len() != 1 || !is_one_shapeless(&den[0]) {
                return None;
            }
            match num.len() {
                0 => Some(BigRational::zero()),
                1 => to_rational(t, &num[0]),
                _ => None,
            }
        }
    }
}

fn is_zero_shapeless(e: &TowerElem) -> bool {
    match e {
        TowerElem::Rat(r) => r.is_zero(),
        TowerElem::Fp(v) => *v == 0,
        TowerElem::Alg(coords) => coords.iter().all(is_zero_shapeless),
        TowerElem::Frac(num, _) => num.is_empty(),
    }
}

fn is_one_shapeless(e: &TowerElem) -> bool {
    match e {
        TowerElem::Rat(r) => r.is_one(),
        TowerElem::Fp(v) => *v == 1,
        TowerElem::Alg(coords) => {
            coords.first().map_or(false, is_one_shapeless)
                && coords.iter().skip(1).all(is_zero_shapeless)
        }
        TowerElem::Frac(num, den) => {
            num.len() == 1
                && is_one_shapeless(&num[0])
                && den.len() == 1
                && is_one_shapeless(&den[0])
        }
    }
}

fn to_rational_poly(t: &FieldTower, h: &UniPoly) -> Option<Vec<BigRational>> {
    h.coeffs().iter().map(|c| to_rational(t, c)).collect()
}

/// One rational root of a rational-coefficient polynomial, if any
/// (smallest in the candidate ordering).
fn rational_root(coeffs: &[BigRational]) -> Result<Option<BigRational>, FieldError> {
    let roots = all_rational_roots(coeffs)?;
    Ok(roots.into_iter().min())
}

/// All rational roots via the rational root theorem.
fn all_rational_roots(coeffs: &[BigRational]) -> Result<Vec<BigRational>, FieldError> {
    if coeffs.is_empty() {
        return Ok(Vec::new());
    }
    // clear denominators to an integer polynomial
    let mut den = BigInt::one();
    for c in coeffs {
        den = num_integer::lcm(den, c.denom().clone());
    }
    let ints: Vec<BigInt> =
        coeffs.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    let eval = |r: &BigRational| -> bool {
        let mut acc = BigRational::zero();
        for c in ints.iter().rev() {
            acc = acc * r + BigRational::from_integer(c.clone());
        }
        acc.is_zero()
    };
    // strip zero roots
    let mut low = 0;
    while low < ints.len() && ints[low].is_zero() {
        low += 1;
    }
    if low > 0 && low < ints.len() {
        roots.push(BigRational::zero());
    }
    if low >= ints.len() {
        return Ok(roots);
    }
    let a0 = ints[low].abs();
    let an = ints.last().expect("nonzero").abs();
    let p_divs = divisors(&a0)?;
    let q_divs = divisors(&an)?;
    for p in &p_divs {
        for q in &q_divs {
            for sign in [1i64, -1] {
                let cand = BigRational::new(p * BigInt::from(sign), q.clone());
                if eval(&cand) && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>, FieldError> {
    use num_traits::ToPrimitive;
    let n = n.abs();
    let small = n.to_u64().ok_or_else(|| {
        FieldError::UnsupportedFactorization("coefficient too large for root search".into())
    })?;
    if small == 0 {
        return Ok(vec![BigInt::one()]);
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= small {
        if small % d == 0 {
            out.push(BigInt::from(d));
            if d != small / d {
                out.push(BigInt::from(small / d));
            }
        }
        d += 1;
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::{make_prime_field, rationals};
    use super::*;

    #[test]
    fn quadratic_over_q() {
        let q = rationals();
        // y^2 - 4 = (y-2)(y+2)
        let f = UniPoly::from_i64(&q, &[-4, 0, 1]);
        let fac = factor_univariate(&q, &f).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.expand(&q), f);
        // y^2 - 2 irreducible
        let g = UniPoly::from_i64(&q, &[-2, 0, 1]);
        assert!(factor_univariate(&q, &g).unwrap().is_irreducible());
    }

    #[test]
    fn quadratic_over_q_sqrt2() {
        let q = rationals();
        let k = q.extend_algebraic("r2", &UniPoly::from_i64(&q, &[-2, 0, 1])).unwrap();
        // y^2 - 2 = (y - r2)(y + r2) over Q(r2)
        let f = UniPoly::from_i64(&k, &[-2, 0, 1]);
        let fac = factor_univariate(&k, &f).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.expand(&k), f);
        let r2 = k.generator(0);
        let roots: Vec<TowerElem> =
            fac.factors.iter().map(|(p, _)| k.neg(&p.coeff(&k, 0))).collect();
        assert!(roots.contains(&r2));
        assert!(roots.contains(&k.neg(&r2)));
    }

    #[test]
    fn quartic_y4_plus_1() {
        let q = rationals();
        // y^4 + 1 irreducible over Q
        let f = UniPoly::from_i64(&q, &[1, 0, 0, 0, 1]);
        assert!(factor_univariate(&q, &f).unwrap().is_irreducible());
        // but splits into two quadratics over Q(sqrt2)
        let k = q.extend_algebraic("r2", &UniPoly::from_i64(&q, &[-2, 0, 1])).unwrap();
        let f2 = UniPoly::from_i64(&k, &[1, 0, 0, 0, 1]);
        let fac = factor_univariate(&k, &f2).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.factors[0].0.degree(), Some(2));
        assert_eq!(fac.expand(&k), f2);
    }

    #[test]
    fn finite_field_factorizations() {
        let f2 = make_prime_field(2).unwrap();
        // y^2 + y + 1 irreducible over F_2 (no roots)
        let f = UniPoly::from_i64(&f2, &[1, 1, 1]);
        assert!(factor_univariate(&f2, &f).unwrap().is_irreducible());
        // it splits over F_4
        let f4 = f2.extend_algebraic("g", &f).unwrap();
        let f_up = UniPoly::from_i64(&f4, &[1, 1, 1]);
        let fac = factor_univariate(&f4, &f_up).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.expand(&f4), f_up);
        // y^4 + y^2 + y over F_2 = y (y^3 + y + 1)
        let g = UniPoly::from_i64(&f2, &[0, 1, 1, 0, 1]);
        let fac = factor_univariate(&f2, &g).unwrap();
        assert_eq!(fac.expand(&f2), g);
        assert_eq!(fac.factors.len(), 2);
    }

    #[test]
    fn repeated_factors() {
        let q = rationals();
        // (y-1)^2 (y+2)
        let f = UniPoly::from_i64(&q, &[-1, 1]);
        let g = UniPoly::from_i64(&q, &[2, 1]);
        let prod = f.mul(&q, &f).mul(&q, &g);
        let fac = factor_univariate(&q, &prod).unwrap();
        assert_eq!(fac.expand(&q), prod);
        assert!(fac.factors.iter().any(|(p, m)| *p == f && *m == 2));
        assert!(fac.factors.iter().any(|(p, m)| *p == g && *m == 1));
    }

    #[test]
    fn quadratic_over_rational_functions() {
        let q = rationals();
        let qx = q.extend_transcendental("x").unwrap();
        let x = qx.generator(0);
        // y^2 - x irreducible over Q(x)
        let f = UniPoly::new(&qx, vec![qx.neg(&x), qx.zero(), qx.one()]);
        assert!(factor_univariate(&qx, &f).unwrap().is_irreducible());
        // y^2 - x^2 = (y-x)(y+x)
        let g = UniPoly::new(&qx, vec![qx.neg(&qx.mul(&x, &x)), qx.zero(), qx.one()]);
        let fac = factor_univariate(&qx, &g).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.expand(&qx), g);
        // degree 3 is out of scope here
        let h = UniPoly::new(&qx, vec![qx.neg(&x), qx.zero(), qx.zero(), qx.one()]);
        assert!(matches!(
            factor_univariate(&qx, &h),
            Err(FieldError::UnsupportedFactorization(_))
        ));
    }
}
