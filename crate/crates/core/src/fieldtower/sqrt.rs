//! Square roots in towers, plus finite-field element enumeration.
//!
//! `sqrt_in_tower` is a three-valued decision: `Ok(Some(s))` with `s*s = a`,
//! `Ok(None)` certifying that no square root exists in the tower, or an
//! `UnsupportedFactorization` error when the tower shape is outside the
//! declared scope. Quadratic irreducibility tests rely on the certified
//! `None`, so the scope rules are strict.

use num_traits::Signed;

use super::elem::TowerElem;
use super::upoly;
use super::{FieldError, FieldTower, Step};

const ENUM_BUDGET: u128 = 1 << 16;

/// Square root of `a` in the tower, if one exists.
pub fn sqrt_in_tower(t: &FieldTower, a: &TowerElem) -> Result<Option<TowerElem>, FieldError> {
    sqrt_at(t, t.level(), a)
}

pub(crate) fn sqrt_at(
    t: &FieldTower,
    lvl: usize,
    a: &TowerElem,
) -> Result<Option<TowerElem>, FieldError> {
    if t.is_zero_at(lvl, a) {
        return Ok(Some(t.zero_at(lvl)));
    }
    match a {
        TowerElem::Rat(r) => {
            if r.is_negative() {
                return Ok(None);
            }
            let ns = r.numer().sqrt();
            let ds = r.denom().sqrt();
            if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
                Ok(Some(TowerElem::Rat(num_rational::BigRational::new(ns, ds))))
            } else {
                Ok(None)
            }
        }
        TowerElem::Fp(v) => {
            let p = t.characteristic();
            if p == 2 {
                return Ok(Some(TowerElem::Fp(*v)));
            }
            for s in 0..p {
                if super::elem::fp_mul(s, s, p) == *v {
                    return Ok(Some(TowerElem::Fp(s)));
                }
            }
            Ok(None)
        }
        TowerElem::Alg(coords) => {
            if t.prefix(lvl).is_finite_field() {
                return sqrt_finite(t, lvl, a);
            }
            let minpoly = match &t.steps()[lvl - 1] {
                Step::Algebraic { minpoly, .. } => minpoly.clone(),
                _ => unreachable!(),
            };
            if minpoly.len() - 1 != 2 {
                return Err(FieldError::UnsupportedFactorization(format!(
                    "square root above an algebraic step of degree {}",
                    minpoly.len() - 1
                )));
            }
            sqrt_quadratic_step(t, lvl, coords, &minpoly)
        }
        TowerElem::Frac(num, den) => sqrt_fraction(t, lvl, num, den),
    }
}

/// Exhaustive square root in a small finite field.
fn sqrt_finite(
    t: &FieldTower,
    lvl: usize,
    a: &TowerElem,
) -> Result<Option<TowerElem>, FieldError> {
    if t.characteristic() == 2 {
        // Frobenius is bijective: sqrt(a) = a^(q/2).
        let q = field_size_at(t, lvl).ok_or_else(|| {
            FieldError::UnsupportedFactorization("field not finite".to_string())
        })?;
        let s = pow_at(t, lvl, a, (q / 2) as u64);
        debug_assert_eq!(t.mul_at(lvl, &s, &s), *a);
        return Ok(Some(s));
    }
    let elems = enumerate_elements(t, lvl).ok_or_else(|| {
        FieldError::UnsupportedFactorization("finite field too large to enumerate".to_string())
    })?;
    for s in elems {
        if t.mul_at(lvl, &s, &s) == *a {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Square root above a quadratic algebraic step in characteristic 0.
///
/// With minimal polynomial `y^2 + p*y + q`, substitute `g' = g + p/2` so
/// `g'^2 = p^2/4 - q =: D`. Writing the input as `U + V*g'`, a root
/// `s + t*g'` must satisfy `s^2 + t^2 D = U` and `2 s t = V`; both branches
/// reduce to square roots one level down, so the answer is certified.
fn sqrt_quadratic_step(
    t: &FieldTower,
    lvl: usize,
    coords: &[TowerElem],
    minpoly: &[TowerElem],
) -> Result<Option<TowerElem>, FieldError> {
    if t.characteristic() == 2 {
        return Err(FieldError::UnsupportedFactorization(
            "square root above quadratic step in characteristic 2".to_string(),
        ));
    }
    let l = lvl - 1;
    let p = minpoly[1].clone();
    let q = minpoly[0].clone();
    let half = t.from_i64_at(l, 1);
    let half = t.div_at(l, &half, &t.from_i64_at(l, 2)).expect("2 invertible");
    let p_half = t.mul_at(l, &p, &half);
    // D = p^2/4 - q
    let d = t.sub_at(l, &t.mul_at(l, &p_half, &p_half), &q);
    let u0 = coords.first().cloned().unwrap_or_else(|| t.zero_at(l));
    let v = coords.get(1).cloned().unwrap_or_else(|| t.zero_at(l));
    // a = U + V g' with U = u0 - v p/2, V = v
    let u = t.sub_at(l, &u0, &t.mul_at(l, &v, &p_half));

    let back = |s: TowerElem, tt: TowerElem| -> TowerElem {
        // s + t g' = (s + t p/2) + t g
        let c0 = t.add_at(l, &s, &t.mul_at(l, &tt, &p_half));
        t.make_alg(lvl, vec![c0, tt])
    };

    if t.is_zero_at(l, &v) {
        if let Some(s) = sqrt_at(t, l, &u)? {
            return Ok(Some(back(s, t.zero_at(l))));
        }
        let ud = t.div_at(l, &u, &d).map_err(|_| {
            FieldError::UnsupportedFactorization("degenerate quadratic step".to_string())
        })?;
        if let Some(tt) = sqrt_at(t, l, &ud)? {
            return Ok(Some(back(t.zero_at(l), tt)));
        }
        return Ok(None);
    }
    // V != 0: t^2 = (U +- w) / (2D) with w = sqrt(U^2 - D V^2)
    let disc = t.sub_at(l, &t.mul_at(l, &u, &u), &t.mul_at(l, &d, &t.mul_at(l, &v, &v)));
    let w = match sqrt_at(t, l, &disc)? {
        Some(w) => w,
        None => return Ok(None),
    };
    let two_d = t.mul_at(l, &t.from_i64_at(l, 2), &d);
    for cand in [t.add_at(l, &u, &w), t.sub_at(l, &u, &w)] {
        let t2 = t.div_at(l, &cand, &two_d).expect("D nonzero for irreducible step");
        if t.is_zero_at(l, &t2) {
            continue;
        }
        if let Some(tt) = sqrt_at(t, l, &t2)? {
            let s = t.div_at(l, &v, &t.mul_at(l, &t.from_i64_at(l, 2), &tt))?;
            let root = back(s, tt);
            debug_assert_eq!(t.mul_at(lvl, &root, &root), t.make_alg(lvl, coords.to_vec()));
            return Ok(Some(root));
        }
    }
    Ok(None)
}

/// Square root of a reduced fraction `num/den`: both parts must be squares
/// (the denominator exactly, the numerator up to a square unit).
fn sqrt_fraction(
    t: &FieldTower,
    lvl: usize,
    num: &[TowerElem],
    den: &[TowerElem],
) -> Result<Option<TowerElem>, FieldError> {
    if t.characteristic() == 2 {
        return Err(FieldError::UnsupportedFactorization(
            "square root above transcendental step in characteristic 2".to_string(),
        ));
    }
    let l = lvl - 1;
    let lc = num.last().expect("nonzero numerator").clone();
    let lc_sqrt = match sqrt_at(t, l, &lc)? {
        Some(s) => s,
        None => return Ok(None),
    };
    let monic_num = upoly::vmonic(t, l, num.to_vec());
    let num_sqrt = match poly_sqrt_monic(t, l, &monic_num)? {
        Some(s) => s,
        None => return Ok(None),
    };
    let den_sqrt = match poly_sqrt_monic(t, l, den)? {
        Some(s) => s,
        None => return Ok(None),
    };
    let num_final = upoly::vscale(t, l, &num_sqrt, &lc_sqrt);
    Ok(Some(t.make_frac(lvl, num_final, den_sqrt)))
}

/// Square root of a monic polynomial by top-down coefficient matching.
pub(crate) fn poly_sqrt_monic(
    t: &FieldTower,
    lvl: usize,
    m: &[TowerElem],
) -> Result<Option<Vec<TowerElem>>, FieldError> {
    let deg = match upoly::vdeg(m) {
        None => return Ok(Some(Vec::new())),
        Some(d) => d,
    };
    if deg % 2 != 0 {
        return Ok(None);
    }
    let k = deg / 2;
    let mut s = vec![t.zero_at(lvl); k + 1];
    s[k] = t.one_at(lvl);
    let two = t.from_i64_at(lvl, 2);
    for i in (0..k).rev() {
        // coefficient of y^(k+i) in s^2, using the already fixed part
        let mut c = t.zero_at(lvl);
        for u in (i + 1)..=k {
            let v = k + i - u;
            if v <= k && v > i {
                c = t.add_at(lvl, &c, &t.mul_at(lvl, &s[u], &s[v]));
            }
        }
        let target = m.get(k + i).cloned().unwrap_or_else(|| t.zero_at(lvl));
        let num = t.sub_at(lvl, &target, &c);
        s[i] = t.div_at(lvl, &num, &two).expect("2 invertible in characteristic 0");
    }
    let sq = upoly::vmul(t, lvl, &s, &s);
    if sq == upoly::vtrim(t, lvl, m.to_vec()) {
        Ok(Some(upoly::vtrim(t, lvl, s)))
    } else {
        Ok(None)
    }
}

/// All elements of the prefix tower at `lvl`, when it is a small finite
/// field. Returns `None` if the tower is infinite or over budget.
pub(crate) fn enumerate_elements(t: &FieldTower, lvl: usize) -> Option<Vec<TowerElem>> {
    let size = field_size_at(t, lvl)?;
    if size > ENUM_BUDGET {
        return None;
    }
    Some(enumerate_rec(t, lvl))
}

fn enumerate_rec(t: &FieldTower, lvl: usize) -> Vec<TowerElem> {
    if lvl == 0 {
        return (0..t.characteristic()).map(TowerElem::Fp).collect();
    }
    let below = enumerate_rec(t, lvl - 1);
    let deg = t.steps()[lvl - 1].degree().expect("finite tower");
    let mut out = Vec::new();
    let mut idx = vec![0usize; deg];
    loop {
        out.push(t.make_alg(lvl, idx.iter().map(|&i| below[i].clone()).collect()));
        let mut carry = 0;
        loop {
            if carry == deg {
                return out;
            }
            idx[carry] += 1;
            if idx[carry] == below.len() {
                idx[carry] = 0;
                carry += 1;
            } else {
                break;
            }
        }
    }
}

/// `p^deg` for a finite prefix tower; `None` in characteristic 0 or above a
/// transcendental step.
pub(crate) fn field_size_at(t: &FieldTower, lvl: usize) -> Option<u128> {
    if t.characteristic() == 0 {
        return None;
    }
    let deg = t.prefix(lvl).absolute_degree()?;
    Some((t.characteristic() as u128).pow(deg as u32))
}

fn pow_at(t: &FieldTower, lvl: usize, a: &TowerElem, mut n: u64) -> TowerElem {
    let mut acc = t.one_at(lvl);
    let mut base = a.clone();
    while n > 0 {
        if n & 1 == 1 {
            acc = t.mul_at(lvl, &acc, &base);
        }
        base = t.mul_at(lvl, &base, &base);
        n >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::super::{make_prime_field, rationals, UniPoly};
    use super::*;

    #[test]
    fn rational_sqrt() {
        let q = rationals();
        assert_eq!(sqrt_in_tower(&q, &q.from_i64(4)).unwrap(), Some(q.from_i64(2)));
        assert_eq!(sqrt_in_tower(&q, &q.from_i64(2)).unwrap(), None);
        assert_eq!(sqrt_in_tower(&q, &q.from_i64(-4)).unwrap(), None);
    }

    #[test]
    fn sqrt_in_quadratic_extension() {
        let q = rationals();
        let k = q.extend_algebraic("r2", &UniPoly::from_i64(&q, &[-2, 0, 1])).unwrap();
        // 2 is a square in Q(sqrt2): (sqrt2)^2 = 2
        let s = sqrt_in_tower(&k, &k.from_i64(2)).unwrap().unwrap();
        assert_eq!(k.mul(&s, &s), k.from_i64(2));
        // 3 is not
        assert_eq!(sqrt_in_tower(&k, &k.from_i64(3)).unwrap(), None);
        // 3 + 2 sqrt2 = (1 + sqrt2)^2
        let r2 = k.generator(0);
        let a = k.add(&k.from_i64(3), &k.mul(&k.from_i64(2), &r2));
        let s = sqrt_in_tower(&k, &a).unwrap().unwrap();
        assert_eq!(k.mul(&s, &s), a);
    }

    #[test]
    fn sqrt_in_rational_functions() {
        let q = rationals();
        let qx = q.extend_transcendental("x").unwrap();
        let x = qx.generator(0);
        // x is not a square, x^2 is
        assert_eq!(sqrt_in_tower(&qx, &x).unwrap(), None);
        let x2 = qx.mul(&x, &x);
        assert_eq!(sqrt_in_tower(&qx, &x2).unwrap(), Some(x.clone()));
        // 4x^2 has root 2x
        let a = qx.mul(&qx.from_i64(4), &x2);
        let s = sqrt_in_tower(&qx, &a).unwrap().unwrap();
        assert_eq!(qx.mul(&s, &s), a);
    }

    #[test]
    fn sqrt_in_finite_fields() {
        let f2 = make_prime_field(2).unwrap();
        let f4 = f2.extend_algebraic("g", &UniPoly::from_i64(&f2, &[1, 1, 1])).unwrap();
        let g = f4.generator(0);
        let s = sqrt_in_tower(&f4, &g).unwrap().unwrap();
        assert_eq!(f4.mul(&s, &s), g);
        let f5 = make_prime_field(5).unwrap();
        assert_eq!(sqrt_in_tower(&f5, &f5.from_i64(4)).unwrap(), Some(f5.from_i64(2)));
        assert_eq!(sqrt_in_tower(&f5, &f5.from_i64(2)).unwrap(), None);
    }
}
