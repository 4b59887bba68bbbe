//! Canonical tower elements and exact field arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::upoly::{self, UniPoly};
use super::{FieldError, FieldTower, Step};

/// An element of a [`FieldTower`], in canonical coordinates.
///
/// The shape mirrors the tower: a base element is a reduced rational or a
/// residue mod `p`; an element above an algebraic step of degree `n` is a
/// coordinate vector of length at most `n` with no trailing zeros (empty
/// means zero); an element above a transcendental step is a reduced
/// fraction of coefficient vectors with monic denominator. Two elements
/// are equal iff their representations are.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TowerElem {
    Rat(BigRational),
    Fp(u64),
    Alg(Vec<TowerElem>),
    Frac(Vec<TowerElem>, Vec<TowerElem>),
}

impl FieldTower {
    pub fn zero(&self) -> TowerElem {
        self.zero_at(self.level())
    }

    pub fn one(&self) -> TowerElem {
        self.one_at(self.level())
    }

    pub fn from_i64(&self, n: i64) -> TowerElem {
        self.from_rat(BigRational::from_integer(n.into()))
    }

    /// Embeds a rational constant. In characteristic `p` the denominator
    /// must be invertible mod `p` (it is, for reduced rationals with
    /// denominator coprime to `p`; otherwise this panics).
    pub fn from_rat(&self, r: BigRational) -> TowerElem {
        self.lift_to_level(self.level(), self.base_from_rat(r))
    }

    pub fn is_zero(&self, a: &TowerElem) -> bool {
        self.is_zero_at(self.level(), a)
    }

    pub fn is_one(&self, a: &TowerElem) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        self.add_at(self.level(), a, b)
    }

    pub fn sub(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        self.add_at(self.level(), a, &self.neg_at(self.level(), b))
    }

    pub fn neg(&self, a: &TowerElem) -> TowerElem {
        self.neg_at(self.level(), a)
    }

    pub fn mul(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        self.mul_at(self.level(), a, b)
    }

    pub fn inv(&self, a: &TowerElem) -> Result<TowerElem, FieldError> {
        self.inv_at(self.level(), a)
    }

    pub fn div(&self, a: &TowerElem, b: &TowerElem) -> Result<TowerElem, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &TowerElem, n: u64) -> TowerElem {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    pub fn pow_i64(&self, a: &TowerElem, n: i64) -> Result<TowerElem, FieldError> {
        if n >= 0 {
            Ok(self.pow(a, n as u64))
        } else {
            Ok(self.pow(&self.inv(a)?, (-n) as u64))
        }
    }

    /// The generator adjoined at step `idx`, as a top-level element.
    pub fn generator(&self, idx: usize) -> TowerElem {
        assert!(idx < self.level(), "generator index out of range");
        let at_own = match &self.steps()[idx] {
            Step::Algebraic { .. } => {
                TowerElem::Alg(vec![self.zero_at(idx), self.one_at(idx)])
            }
            Step::Transcendental { .. } => {
                TowerElem::Frac(vec![self.zero_at(idx), self.one_at(idx)], vec![self.one_at(idx)])
            }
        };
        self.lift_from(idx + 1, at_own)
    }

    /// Lifts an element living at `lvl` up to the top of the tower.
    pub fn lift_from(&self, lvl: usize, e: TowerElem) -> TowerElem {
        let mut cur = e;
        for l in lvl..self.level() {
            cur = self.wrap_once(l, cur);
        }
        cur
    }

    // ---- level-aware internals -------------------------------------------

    pub(crate) fn base_from_rat(&self, r: BigRational) -> TowerElem {
        if self.characteristic() == 0 {
            TowerElem::Rat(r)
        } else {
            let p = self.characteristic();
            let num = mod_bigint(r.numer(), p);
            let den = mod_bigint(r.denom(), p);
            let den_inv = fp_inv(den, p).expect("denominator not invertible mod p");
            TowerElem::Fp(fp_mul(num, den_inv, p))
        }
    }

    pub(crate) fn zero_at(&self, lvl: usize) -> TowerElem {
        self.lift_to_level(lvl, self.base_zero())
    }

    pub(crate) fn one_at(&self, lvl: usize) -> TowerElem {
        self.lift_to_level(lvl, self.base_one())
    }

    fn base_zero(&self) -> TowerElem {
        if self.characteristic() == 0 {
            TowerElem::Rat(BigRational::zero())
        } else {
            TowerElem::Fp(0)
        }
    }

    fn base_one(&self) -> TowerElem {
        if self.characteristic() == 0 {
            TowerElem::Rat(BigRational::one())
        } else {
            TowerElem::Fp(1)
        }
    }

    fn lift_to_level(&self, lvl: usize, base: TowerElem) -> TowerElem {
        let mut cur = base;
        for l in 0..lvl {
            cur = self.wrap_once(l, cur);
        }
        cur
    }

    /// Wraps an element at level `lvl` into level `lvl + 1`.
    fn wrap_once(&self, lvl: usize, e: TowerElem) -> TowerElem {
        let zero = self.is_zero_at(lvl, &e);
        match &self.steps()[lvl] {
            Step::Algebraic { .. } => {
                if zero {
                    TowerElem::Alg(Vec::new())
                } else {
                    TowerElem::Alg(vec![e])
                }
            }
            Step::Transcendental { .. } => {
                if zero {
                    TowerElem::Frac(Vec::new(), vec![self.one_at(lvl)])
                } else {
                    TowerElem::Frac(vec![e], vec![self.one_at(lvl)])
                }
            }
        }
    }

    pub(crate) fn from_i64_at(&self, lvl: usize, n: i64) -> TowerElem {
        self.lift_to_level(lvl, self.base_from_rat(BigRational::from_integer(n.into())))
    }

    pub(crate) fn is_zero_at(&self, lvl: usize, a: &TowerElem) -> bool {
        match a {
            TowerElem::Rat(r) => r.is_zero(),
            TowerElem::Fp(v) => *v == 0,
            TowerElem::Alg(coords) => coords.iter().all(|c| self.is_zero_at(lvl - 1, c)),
            TowerElem::Frac(num, _) => num.is_empty(),
        }
    }

    pub(crate) fn add_at(&self, lvl: usize, a: &TowerElem, b: &TowerElem) -> TowerElem {
        match (a, b) {
            (TowerElem::Rat(x), TowerElem::Rat(y)) => TowerElem::Rat(x + y),
            (TowerElem::Fp(x), TowerElem::Fp(y)) => {
                TowerElem::Fp(fp_add(*x, *y, self.characteristic()))
            }
            (TowerElem::Alg(x), TowerElem::Alg(y)) => {
                TowerElem::Alg(upoly::vadd(self, lvl - 1, x, y))
            }
            (TowerElem::Frac(an, ad), TowerElem::Frac(bn, bd)) => {
                // a/b + c/d = (ad' + cb')/lcm via plain cross-multiplication,
                // then renormalize.
                let l = lvl - 1;
                let num = upoly::vadd(
                    self,
                    l,
                    &upoly::vmul(self, l, an, bd),
                    &upoly::vmul(self, l, bn, ad),
                );
                let den = upoly::vmul(self, l, ad, bd);
                self.make_frac(lvl, num, den)
            }
            _ => panic!("mismatched element shapes at level {lvl}"),
        }
    }

    pub(crate) fn neg_at(&self, lvl: usize, a: &TowerElem) -> TowerElem {
        match a {
            TowerElem::Rat(x) => TowerElem::Rat(-x),
            TowerElem::Fp(x) => TowerElem::Fp(fp_neg(*x, self.characteristic())),
            TowerElem::Alg(coords) => {
                TowerElem::Alg(coords.iter().map(|c| self.neg_at(lvl - 1, c)).collect())
            }
            TowerElem::Frac(num, den) => {
                TowerElem::Frac(num.iter().map(|c| self.neg_at(lvl - 1, c)).collect(), den.clone())
            }
        }
    }

    pub(crate) fn sub_at(&self, lvl: usize, a: &TowerElem, b: &TowerElem) -> TowerElem {
        self.add_at(lvl, a, &self.neg_at(lvl, b))
    }

    pub(crate) fn mul_at(&self, lvl: usize, a: &TowerElem, b: &TowerElem) -> TowerElem {
        match (a, b) {
            (TowerElem::Rat(x), TowerElem::Rat(y)) => TowerElem::Rat(x * y),
            (TowerElem::Fp(x), TowerElem::Fp(y)) => {
                TowerElem::Fp(fp_mul(*x, *y, self.characteristic()))
            }
            (TowerElem::Alg(x), TowerElem::Alg(y)) => {
                let minpoly = match &self.steps()[lvl - 1] {
                    Step::Algebraic { minpoly, .. } => minpoly,
                    _ => unreachable!("Alg element above non-algebraic step"),
                };
                let prod = upoly::vmul(self, lvl - 1, x, y);
                if prod.len() < minpoly.len() {
                    TowerElem::Alg(prod)
                } else {
                    TowerElem::Alg(upoly::vrem_monic(self, lvl - 1, &prod, minpoly))
                }
            }
            (TowerElem::Frac(an, ad), TowerElem::Frac(bn, bd)) => {
                let l = lvl - 1;
                let num = upoly::vmul(self, l, an, bn);
                let den = upoly::vmul(self, l, ad, bd);
                self.make_frac(lvl, num, den)
            }
            _ => panic!("mismatched element shapes at level {lvl}"),
        }
    }

    pub(crate) fn inv_at(&self, lvl: usize, a: &TowerElem) -> Result<TowerElem, FieldError> {
        if self.is_zero_at(lvl, a) {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match a {
            TowerElem::Rat(x) => TowerElem::Rat(x.recip()),
            TowerElem::Fp(x) => {
                TowerElem::Fp(fp_inv(*x, self.characteristic()).ok_or(FieldError::DivisionByZero)?)
            }
            TowerElem::Alg(coords) => {
                let minpoly = match &self.steps()[lvl - 1] {
                    Step::Algebraic { minpoly, .. } => minpoly.clone(),
                    _ => unreachable!("Alg element above non-algebraic step"),
                };
                TowerElem::Alg(upoly::vinv_mod(self, lvl - 1, coords, &minpoly)?)
            }
            TowerElem::Frac(num, den) => self.make_frac(lvl, den.clone(), num.clone()),
        })
    }

    pub(crate) fn div_at(
        &self,
        lvl: usize,
        a: &TowerElem,
        b: &TowerElem,
    ) -> Result<TowerElem, FieldError> {
        Ok(self.mul_at(lvl, a, &self.inv_at(lvl, b)?))
    }

    /// Builds a canonical algebraic-step element from raw coordinates.
    pub(crate) fn make_alg(&self, lvl: usize, coords: Vec<TowerElem>) -> TowerElem {
        TowerElem::Alg(upoly::vtrim(self, lvl - 1, coords))
    }

    /// Builds a canonical fraction at level `lvl` (a transcendental step):
    /// cancels the gcd and makes the denominator monic.
    pub(crate) fn make_frac(
        &self,
        lvl: usize,
        num: Vec<TowerElem>,
        den: Vec<TowerElem>,
    ) -> TowerElem {
        let l = lvl - 1;
        let num = upoly::vtrim(self, l, num);
        let mut den = upoly::vtrim(self, l, den);
        assert!(!den.is_empty(), "zero denominator in fraction");
        let mut num = num;
        if num.is_empty() {
            return TowerElem::Frac(Vec::new(), vec![self.one_at(l)]);
        }
        if den.len() == 1 {
            if !self.is_one_at(l, &den[0]) {
                let inv = self.inv_at(l, &den[0]).expect("nonzero denominator");
                num = upoly::vscale(self, l, &num, &inv);
            }
            return TowerElem::Frac(num, vec![self.one_at(l)]);
        }
        let g = upoly::vgcd(self, l, &num, &den);
        if upoly::vdeg(&g) > Some(0) {
            num = upoly::vdiv_exact(self, l, &num, &g);
            den = upoly::vdiv_exact(self, l, &den, &g);
        }
        let lc = den.last().expect("nonzero denominator").clone();
        if !self.is_one_at(l, &lc) {
            let lc_inv = self.inv_at(l, &lc).expect("leading coefficient invertible");
            num = upoly::vscale(self, l, &num, &lc_inv);
            den = upoly::vscale(self, l, &den, &lc_inv);
        }
        TowerElem::Frac(num, den)
    }

    pub(crate) fn is_one_at(&self, lvl: usize, a: &TowerElem) -> bool {
        *a == self.one_at(lvl)
    }

    // ---- rendering -------------------------------------------------------

    /// Deterministic human-readable form using the tower's generator names.
    pub fn render_elem(&self, e: &TowerElem) -> String {
        self.render_at(self.level(), e)
    }

    pub(crate) fn render_at(&self, lvl: usize, e: &TowerElem) -> String {
        match e {
            TowerElem::Rat(r) => render_rat(r),
            TowerElem::Fp(v) => format!("{v}"),
            TowerElem::Alg(coords) => {
                let name = self.steps()[lvl - 1].name().to_string();
                self.render_coeffs(lvl - 1, coords, &name)
            }
            TowerElem::Frac(num, den) => {
                let name = self.steps()[lvl - 1].name().to_string();
                let ns = self.render_coeffs(lvl - 1, num, &name);
                if upoly::vdeg(den) == Some(0) && self.is_one_at(lvl - 1, &den[0]) {
                    ns
                } else {
                    let ds = self.render_coeffs(lvl - 1, den, &name);
                    format!("({ns})/({ds})")
                }
            }
        }
    }

    /// Renders a coefficient vector as a polynomial in `var`.
    pub(crate) fn render_coeffs(&self, lvl: usize, coeffs: &[TowerElem], var: &str) -> String {
        let mut terms: Vec<String> = Vec::new();
        for (i, c) in coeffs.iter().enumerate().rev() {
            if self.is_zero_at(lvl, c) {
                continue;
            }
            let pow = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let cs = self.render_at(lvl, c);
            let atomic = is_atomic(&cs);
            let term = if i == 0 {
                if atomic {
                    cs
                } else {
                    format!("({cs})")
                }
            } else if cs == "1" {
                pow
            } else if cs == "-1" {
                format!("-{pow}")
            } else if atomic {
                format!("{cs}*{pow}")
            } else {
                format!("({cs})*{pow}")
            };
            terms.push(term);
        }
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut out = terms[0].clone();
        for t in &terms[1..] {
            if let Some(stripped) = t.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
        out
    }

    /// Renders a univariate polynomial over this tower.
    pub fn render_poly(&self, p: &UniPoly, var: &str) -> String {
        self.render_coeffs(self.level(), p.coeffs(), var)
    }
}

fn is_atomic(s: &str) -> bool {
    !s.contains(' ') && !s.contains('/') && !s.contains('*')
}

fn render_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

// ---- F_p helpers ----------------------------------------------------------

fn mod_bigint(n: &BigInt, p: u64) -> u64 {
    let p_big = BigInt::from(p);
    let mut m = n % &p_big;
    if m.is_negative() {
        m += &p_big;
    }
    let digits = m.to_u64_digits().1;
    if digits.is_empty() {
        0
    } else {
        digits[0]
    }
}

pub(crate) fn fp_add(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

pub(crate) fn fp_neg(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub(crate) fn fp_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn fp_inv(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    // extended Euclid
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        let r = r0 - q * r1;
        r0 = r1;
        r1 = r;
        let s = s0 - q * s1;
        s0 = s1;
        s1 = s;
    }
    debug_assert_eq!(r0, 1);
    let mut inv = s0 % p as i128;
    if inv < 0 {
        inv += p as i128;
    }
    Some(inv as u64)
}

#[cfg(test)]
mod tests {
    use super::super::{make_prime_field, rationals};
    use super::*;

    #[test]
    fn fp_basics() {
        assert_eq!(fp_inv(3, 7), Some(5));
        assert_eq!(fp_inv(0, 7), None);
        let f5 = make_prime_field(5).unwrap();
        let a = f5.from_i64(7); // 2 mod 5
        assert_eq!(a, TowerElem::Fp(2));
        assert_eq!(f5.inv(&a).unwrap(), TowerElem::Fp(3));
    }

    #[test]
    fn rational_function_normalization() {
        // (x^2 - 1)/(x - 1) normalizes to x + 1
        let q = rationals();
        let qx = q.extend_transcendental("x").unwrap();
        let x = qx.generator(0);
        let one = qx.one();
        let num = qx.sub(&qx.mul(&x, &x), &one); // x^2 - 1
        let den = qx.sub(&x, &one); // x - 1
        let val = qx.div(&num, &den).unwrap();
        let expect = qx.add(&x, &one);
        assert_eq!(val, expect);
        assert_eq!(qx.render_elem(&val), "x + 1");
    }

    #[test]
    fn quadratic_extension_arithmetic() {
        // Q(sqrt2): (sqrt2)^2 = 2, (1 + sqrt2)^{-1} = sqrt2 - 1
        let q = rationals();
        let minpoly = UniPoly::from_i64(&q, &[-2, 0, 1]);
        let k = q.extend_algebraic("r2", &minpoly).unwrap();
        let r2 = k.generator(0);
        assert_eq!(k.mul(&r2, &r2), k.from_i64(2));
        let v = k.add(&k.one(), &r2);
        let inv = k.inv(&v).unwrap();
        assert_eq!(k.mul(&v, &inv), k.one());
        assert_eq!(inv, k.sub(&r2, &k.one()));
        assert_eq!(k.render_elem(&inv), "r2 - 1");
    }
}
