//! Dense univariate polynomials over a tower level.
//!
//! The `v*` functions operate on raw coefficient vectors (no trailing
//! zeros, empty = zero) whose entries live at a given level of the tower;
//! they are the workhorses behind algebraic-step arithmetic, fraction
//! normalization, gcds and factorization. [`UniPoly`] wraps a coefficient
//! vector at the top level of a tower for use in public interfaces.

use super::elem::TowerElem;
use super::{FieldError, FieldTower};

pub(crate) fn vtrim(t: &FieldTower, lvl: usize, mut v: Vec<TowerElem>) -> Vec<TowerElem> {
    while let Some(last) = v.last() {
        if t.is_zero_at(lvl, last) {
            v.pop();
        } else {
            break;
        }
    }
    v
}

pub(crate) fn vdeg(v: &[TowerElem]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

pub(crate) fn vadd(t: &FieldTower, lvl: usize, a: &[TowerElem], b: &[TowerElem]) -> Vec<TowerElem> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(|| t.zero_at(lvl));
        let y = b.get(i).cloned().unwrap_or_else(|| t.zero_at(lvl));
        out.push(t.add_at(lvl, &x, &y));
    }
    vtrim(t, lvl, out)
}

pub(crate) fn vneg(t: &FieldTower, lvl: usize, a: &[TowerElem]) -> Vec<TowerElem> {
    a.iter().map(|c| t.neg_at(lvl, c)).collect()
}

pub(crate) fn vsub(t: &FieldTower, lvl: usize, a: &[TowerElem], b: &[TowerElem]) -> Vec<TowerElem> {
    vadd(t, lvl, a, &vneg(t, lvl, b))
}

pub(crate) fn vmul(t: &FieldTower, lvl: usize, a: &[TowerElem], b: &[TowerElem]) -> Vec<TowerElem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![t.zero_at(lvl); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if t.is_zero_at(lvl, x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let prod = t.mul_at(lvl, x, y);
            out[i + j] = t.add_at(lvl, &out[i + j], &prod);
        }
    }
    vtrim(t, lvl, out)
}

pub(crate) fn vscale(t: &FieldTower, lvl: usize, a: &[TowerElem], c: &TowerElem) -> Vec<TowerElem> {
    vtrim(t, lvl, a.iter().map(|x| t.mul_at(lvl, x, c)).collect())
}

/// Division with remainder by an arbitrary nonzero divisor (field
/// coefficients, so the leading coefficient is inverted).
pub(crate) fn vdivmod(
    t: &FieldTower,
    lvl: usize,
    a: &[TowerElem],
    b: &[TowerElem],
) -> (Vec<TowerElem>, Vec<TowerElem>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let db = b.len() - 1;
    let mut rem: Vec<TowerElem> = vtrim(t, lvl, a.to_vec());
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let lc = &b[db];
    let lc_inv = if t.is_one_at(lvl, lc) {
        None
    } else {
        Some(t.inv_at(lvl, lc).expect("nonzero leading coefficient"))
    };
    let mut quot = vec![t.zero_at(lvl); rem.len() - db];
    while rem.len() > db {
        let dr = rem.len() - 1;
        let q = match &lc_inv {
            None => rem[dr].clone(),
            Some(inv) => t.mul_at(lvl, &rem[dr], inv),
        };
        for i in 0..=db {
            let sub = t.mul_at(lvl, &q, &b[i]);
            rem[dr - db + i] = t.sub_at(lvl, &rem[dr - db + i], &sub);
        }
        quot[dr - db] = q;
        rem = vtrim(t, lvl, rem);
    }
    (vtrim(t, lvl, quot), rem)
}

/// Remainder modulo a monic divisor.
pub(crate) fn vrem_monic(
    t: &FieldTower,
    lvl: usize,
    a: &[TowerElem],
    m: &[TowerElem],
) -> Vec<TowerElem> {
    vdivmod(t, lvl, a, m).1
}

/// Exact division; panics if the remainder is nonzero.
pub(crate) fn vdiv_exact(
    t: &FieldTower,
    lvl: usize,
    a: &[TowerElem],
    b: &[TowerElem],
) -> Vec<TowerElem> {
    let (q, r) = vdivmod(t, lvl, a, b);
    assert!(r.is_empty(), "inexact polynomial division");
    q
}

/// Monic gcd via the Euclidean algorithm.
pub(crate) fn vgcd(t: &FieldTower, lvl: usize, a: &[TowerElem], b: &[TowerElem]) -> Vec<TowerElem> {
    let mut x = vtrim(t, lvl, a.to_vec());
    let mut y = vtrim(t, lvl, b.to_vec());
    while !y.is_empty() {
        let r = vdivmod(t, lvl, &x, &y).1;
        x = y;
        y = r;
    }
    vmonic(t, lvl, x)
}

pub(crate) fn vmonic(t: &FieldTower, lvl: usize, v: Vec<TowerElem>) -> Vec<TowerElem> {
    match v.last() {
        None => v,
        Some(lc) if t.is_one_at(lvl, lc) => v,
        Some(lc) => {
            let inv = t.inv_at(lvl, lc).expect("nonzero leading coefficient");
            vscale(t, lvl, &v, &inv)
        }
    }
}

/// Inverse of `a` modulo the monic polynomial `m` (extended Euclid).
pub(crate) fn vinv_mod(
    t: &FieldTower,
    lvl: usize,
    a: &[TowerElem],
    m: &[TowerElem],
) -> Result<Vec<TowerElem>, FieldError> {
    let mut r0 = m.to_vec();
    let mut r1 = vtrim(t, lvl, a.to_vec());
    if r1.is_empty() {
        return Err(FieldError::DivisionByZero);
    }
    if r1.len() == 1 {
        return Ok(vec![t.inv_at(lvl, &r1[0])?]);
    }
    let mut s0: Vec<TowerElem> = Vec::new();
    let mut s1: Vec<TowerElem> = vec![t.one_at(lvl)];
    while !r1.is_empty() {
        let (q, r) = vdivmod(t, lvl, &r0, &r1);
        let s = vsub(t, lvl, &s0, &vmul(t, lvl, &q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if vdeg(&r0) != Some(0) {
        // gcd has positive degree: `a` is a zero divisor mod m. With an
        // irreducible modulus this cannot happen for nonzero `a`.
        return Err(FieldError::DivisionByZero);
    }
    let lc_inv = t.inv_at(lvl, &r0[0])?;
    Ok(vscale(t, lvl, &s0, &lc_inv))
}

pub(crate) fn vderivative(t: &FieldTower, lvl: usize, a: &[TowerElem]) -> Vec<TowerElem> {
    if a.len() <= 1 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(a.len() - 1);
    for (i, c) in a.iter().enumerate().skip(1) {
        let k = t.from_i64_at(lvl, i as i64);
        out.push(t.mul_at(lvl, &k, c));
    }
    vtrim(t, lvl, out)
}

pub(crate) fn veval(t: &FieldTower, lvl: usize, a: &[TowerElem], x: &TowerElem) -> TowerElem {
    let mut acc = t.zero_at(lvl);
    for c in a.iter().rev() {
        acc = t.add_at(lvl, &t.mul_at(lvl, &acc, x), c);
    }
    acc
}

/// A univariate polynomial over the top level of a tower.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UniPoly {
    coeffs: Vec<TowerElem>,
}

impl UniPoly {
    pub fn new(t: &FieldTower, coeffs: Vec<TowerElem>) -> Self {
        UniPoly { coeffs: vtrim(t, t.level(), coeffs) }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn from_i64(t: &FieldTower, coeffs: &[i64]) -> Self {
        Self::new(t, coeffs.iter().map(|&n| t.from_i64(n)).collect())
    }

    /// The identity polynomial `y`.
    pub fn var(t: &FieldTower) -> Self {
        UniPoly { coeffs: vec![t.zero(), t.one()] }
    }

    pub fn constant(t: &FieldTower, c: TowerElem) -> Self {
        Self::new(t, vec![c])
    }

    pub fn coeffs(&self) -> &[TowerElem] {
        &self.coeffs
    }

    pub fn coeff(&self, t: &FieldTower, i: usize) -> TowerElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| t.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        vdeg(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coefficient(&self) -> Option<&TowerElem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self, t: &FieldTower) -> bool {
        self.leading_coefficient().map_or(false, |c| t.is_one(c))
    }

    pub fn add(&self, t: &FieldTower, other: &UniPoly) -> UniPoly {
        UniPoly { coeffs: vadd(t, t.level(), &self.coeffs, &other.coeffs) }
    }

    pub fn sub(&self, t: &FieldTower, other: &UniPoly) -> UniPoly {
        UniPoly { coeffs: vsub(t, t.level(), &self.coeffs, &other.coeffs) }
    }

    pub fn neg(&self, t: &FieldTower) -> UniPoly {
        UniPoly { coeffs: vneg(t, t.level(), &self.coeffs) }
    }

    pub fn mul(&self, t: &FieldTower, other: &UniPoly) -> UniPoly {
        UniPoly { coeffs: vmul(t, t.level(), &self.coeffs, &other.coeffs) }
    }

    pub fn scale(&self, t: &FieldTower, c: &TowerElem) -> UniPoly {
        UniPoly { coeffs: vscale(t, t.level(), &self.coeffs, c) }
    }

    pub fn divmod(&self, t: &FieldTower, other: &UniPoly) -> (UniPoly, UniPoly) {
        let (q, r) = vdivmod(t, t.level(), &self.coeffs, &other.coeffs);
        (UniPoly { coeffs: q }, UniPoly { coeffs: r })
    }

    pub fn gcd(&self, t: &FieldTower, other: &UniPoly) -> UniPoly {
        UniPoly { coeffs: vgcd(t, t.level(), &self.coeffs, &other.coeffs) }
    }

    pub fn derivative(&self, t: &FieldTower) -> UniPoly {
        UniPoly { coeffs: vderivative(t, t.level(), &self.coeffs) }
    }

    pub fn eval(&self, t: &FieldTower, x: &TowerElem) -> TowerElem {
        veval(t, t.level(), &self.coeffs, x)
    }

    pub fn monic(&self, t: &FieldTower) -> UniPoly {
        UniPoly { coeffs: vmonic(t, t.level(), self.coeffs.clone()) }
    }

    /// Substitution `self(q)` by Horner's rule.
    pub fn compose(&self, t: &FieldTower, q: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(t, q).add(t, &UniPoly::constant(t, c.clone()));
        }
        acc
    }

    pub fn pow(&self, t: &FieldTower, mut n: u64) -> UniPoly {
        let mut acc = UniPoly::from_i64(t, &[1]);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(t, &base);
            }
            base = base.mul(t, &base);
            n >>= 1;
        }
        acc
    }

    /// Maps the coefficients through a field morphism, producing a
    /// polynomial over the morphism's target tower.
    pub fn map_coeffs(
        &self,
        m: &super::FieldMorphism,
    ) -> Result<UniPoly, FieldError> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(m.apply(c)?);
        }
        Ok(UniPoly::new(m.target(), out))
    }

    /// Resultant via the Euclidean remainder sequence.
    pub fn resultant(&self, t: &FieldTower, other: &UniPoly) -> TowerElem {
        let f = self.clone();
        let g = other.clone();
        match (f.degree(), g.degree()) {
            (None, _) | (_, None) => t.zero(),
            (Some(0), Some(dg)) => t.pow(&f.coeffs[0], dg as u64),
            (Some(df), Some(0)) => t.pow(&g.coeffs[0], df as u64),
            (Some(df), Some(dg)) => {
                let r = f.divmod(t, &g).1;
                match r.degree() {
                    None => t.zero(),
                    Some(dr) => {
                        let lc = g.leading_coefficient().expect("nonzero").clone();
                        let sign = if (df * dg) % 2 == 1 { t.from_i64(-1) } else { t.one() };
                        let scale = t.pow(&lc, (df - dr) as u64);
                        t.mul(&sign, &t.mul(&scale, &g.resultant(t, &r)))
                    }
                }
            }
        }
    }

    /// Discriminant of a monic polynomial.
    pub fn discriminant(&self, t: &FieldTower) -> TowerElem {
        let d = self.degree().expect("nonzero polynomial");
        let res = self.resultant(t, &self.derivative(t));
        // disc = (-1)^(d(d-1)/2) * res(f, f')
        if (d * (d - 1) / 2) % 2 == 1 {
            t.neg(&res)
        } else {
            res
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::rationals;
    use super::*;

    #[test]
    fn divmod_and_gcd() {
        let q = rationals();
        // (x^2 - 1) = (x - 1)(x + 1)
        let f = UniPoly::from_i64(&q, &[-1, 0, 1]);
        let g = UniPoly::from_i64(&q, &[-1, 1]);
        let (quot, rem) = f.divmod(&q, &g);
        assert!(rem.is_zero());
        assert_eq!(quot, UniPoly::from_i64(&q, &[1, 1]));
        let h = UniPoly::from_i64(&q, &[1, 1]);
        assert_eq!(f.gcd(&q, &h), h.monic(&q));
    }

    #[test]
    fn eval_and_compose() {
        let q = rationals();
        let f = UniPoly::from_i64(&q, &[1, 2, 1]); // (y+1)^2
        assert_eq!(f.eval(&q, &q.from_i64(2)), q.from_i64(9));
        let shift = UniPoly::from_i64(&q, &[-1, 1]); // y - 1
        assert_eq!(f.compose(&q, &shift), UniPoly::from_i64(&q, &[0, 0, 1]));
    }
}
