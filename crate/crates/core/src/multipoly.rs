//! Sparse multivariate polynomials over a field tower, with the monomial
//! orders used by the Buchberger machinery.
//!
//! Terms are held in a `BTreeMap` keyed by exponent vectors (plain lex on
//! the vector), so polynomial identity is canonical independently of the
//! Groebner order in use; leading terms under a chosen order are computed
//! on demand, which is fine at desk scale.

use std::collections::BTreeMap;

use crate::fieldtower::{FieldError, FieldMorphism, FieldTower, TowerElem};

pub type Exp = Vec<u32>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Lexicographic with variable 0 largest; doubles as the elimination
    /// order when the variables to eliminate are listed first.
    Lex,
    DegRevLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::DegRevLex => {
                let da: u64 = a.iter().map(|&e| e as u64).sum();
                let db: u64 = b.iter().map(|&e| e as u64).sum();
                match da.cmp(&db) {
                    Ordering::Equal => {
                        for i in (0..a.len()).rev() {
                            match a[i].cmp(&b[i]) {
                                Ordering::Equal => continue,
                                Ordering::Less => return Ordering::Greater,
                                Ordering::Greater => return Ordering::Less,
                            }
                        }
                        Ordering::Equal
                    }
                    other => other,
                }
            }
        }
    }
}

pub fn exp_add(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn exp_checked_sub(a: &[u32], b: &[u32]) -> Option<Exp> {
    let mut out = Vec::with_capacity(a.len());
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return None;
        }
        out.push(x - y);
    }
    Some(out)
}

pub fn exp_lcm(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn exp_is_coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// A multivariate polynomial with tower coefficients.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Exp, TowerElem>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> MPoly {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(t: &FieldTower, nvars: usize, c: TowerElem) -> MPoly {
        let mut p = MPoly::zero(nvars);
        if !t.is_zero(&c) {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(t: &FieldTower, nvars: usize) -> MPoly {
        Self::constant(t, nvars, t.one())
    }

    pub fn var(t: &FieldTower, nvars: usize, i: usize) -> MPoly {
        let mut e = vec![0u32; nvars];
        e[i] = 1;
        let mut p = MPoly::zero(nvars);
        p.terms.insert(e, t.one());
        p
    }

    pub fn from_terms(
        t: &FieldTower,
        nvars: usize,
        terms: impl IntoIterator<Item = (Exp, TowerElem)>,
    ) -> MPoly {
        let mut p = MPoly::zero(nvars);
        for (e, c) in terms {
            p.add_term(t, &e, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &TowerElem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_value(&self, t: &FieldTower) -> Option<TowerElem> {
        if self.is_zero() {
            return Some(t.zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn add_term(&mut self, t: &FieldTower, e: &[u32], c: &TowerElem) {
        assert_eq!(e.len(), self.nvars);
        if t.is_zero(c) {
            return;
        }
        match self.terms.get_mut(e) {
            Some(existing) => {
                let sum = t.add(existing, c);
                if t.is_zero(&sum) {
                    self.terms.remove(e);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(e.to_vec(), c.clone());
            }
        }
    }

    pub fn add(&self, t: &FieldTower, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in other.terms.iter() {
            out.add_term(t, e, c);
        }
        out
    }

    pub fn neg(&self, t: &FieldTower) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), t.neg(c))).collect(),
        }
    }

    pub fn sub(&self, t: &FieldTower, other: &MPoly) -> MPoly {
        self.add(t, &other.neg(t))
    }

    pub fn mul(&self, t: &FieldTower, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e1, c1) in self.terms.iter() {
            for (e2, c2) in other.terms.iter() {
                out.add_term(t, &exp_add(e1, e2), &t.mul(c1, c2));
            }
        }
        out
    }

    pub fn mul_term(&self, t: &FieldTower, e: &[u32], c: &TowerElem) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e1, c1) in self.terms.iter() {
            out.add_term(t, &exp_add(e1, e), &t.mul(c1, c));
        }
        out
    }

    pub fn scale(&self, t: &FieldTower, c: &TowerElem) -> MPoly {
        self.mul_term(t, &vec![0; self.nvars], c)
    }

    pub fn pow(&self, t: &FieldTower, mut n: u64) -> MPoly {
        let mut acc = MPoly::one(t, self.nvars);
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

    /// Leading term under the given order.
    pub fn leading(&self, ord: MonomialOrder) -> Option<(&Exp, &TowerElem)> {
        self.terms.iter().max_by(|(a, _), (b, _)| ord.cmp(a, b))
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|e| e.iter().map(|&x| x as u64).sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn involves_var(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] > 0)
    }

    /// Coefficient of `x_var^k`, as a polynomial in the remaining variables
    /// (same variable count, exponent of `var` zeroed).
    pub fn coeff_of_power(&self, t: &FieldTower, var: usize, k: u32) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in self.terms.iter() {
            if e[var] == k {
                let mut e2 = e.clone();
                e2[var] = 0;
                out.add_term(t, &e2, c);
            }
        }
        out
    }

    /// Full substitution: variable `i` is replaced by `images[i]`.
    pub fn substitute(&self, t: &FieldTower, images: &[MPoly]) -> MPoly {
        assert_eq!(images.len(), self.nvars);
        let out_vars = images.first().map_or(self.nvars, |m| m.nvars);
        let mut out = MPoly::zero(out_vars);
        for (e, c) in self.terms.iter() {
            let mut term = MPoly::constant(t, out_vars, c.clone());
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    term = term.mul(t, &images[i].pow(t, exp as u64));
                }
            }
            out = out.add(t, &term);
        }
        out
    }

    /// Evaluation at tower elements.
    pub fn eval(&self, t: &FieldTower, point: &[TowerElem]) -> TowerElem {
        assert_eq!(point.len(), self.nvars);
        let mut acc = t.zero();
        for (e, c) in self.terms.iter() {
            let mut term = c.clone();
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    term = t.mul(&term, &t.pow(&point[i], exp as u64));
                }
            }
            acc = t.add(&acc, &term);
        }
        acc
    }

    /// Maps coefficients through a field morphism (same variables).
    pub fn map_coeffs(&self, m: &FieldMorphism) -> Result<MPoly, FieldError> {
        let t = m.target();
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in self.terms.iter() {
            out.add_term(t, e, &m.apply(c)?);
        }
        Ok(out)
    }

    /// Reindexes variables into a wider ring: `var_map[i]` is the new index
    /// of old variable `i`.
    pub fn embed_vars(&self, new_nvars: usize, var_map: &[usize]) -> MPoly {
        assert_eq!(var_map.len(), self.nvars);
        let mut terms = BTreeMap::new();
        for (e, c) in self.terms.iter() {
            let mut ne = vec![0u32; new_nvars];
            for (i, &exp) in e.iter().enumerate() {
                ne[var_map[i]] += exp;
            }
            terms.insert(ne, c.clone());
        }
        MPoly { nvars: new_nvars, terms }
    }

    pub fn monic(&self, t: &FieldTower, ord: MonomialOrder) -> MPoly {
        match self.leading(ord) {
            None => self.clone(),
            Some((_, lc)) => {
                if t.is_one(lc) {
                    self.clone()
                } else {
                    let inv = t.inv(lc).expect("nonzero leading coefficient");
                    self.scale(t, &inv)
                }
            }
        }
    }

    /// Deterministic rendering with the given variable names; terms are
    /// printed in descending lex order.
    pub fn render(&self, t: &FieldTower, var_names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mut factors: Vec<String> = Vec::new();
            for (i, &exp) in e.iter().enumerate() {
                match exp {
                    0 => {}
                    1 => factors.push(var_names[i].clone()),
                    _ => factors.push(format!("{}^{}", var_names[i], exp)),
                }
            }
            let cs = t.render_elem(c);
            let body = if factors.is_empty() {
                if cs.contains(' ') || cs.contains('/') {
                    format!("({cs})")
                } else {
                    cs
                }
            } else if cs == "1" {
                factors.join("*")
            } else if cs == "-1" {
                format!("-{}", factors.join("*"))
            } else if cs.contains(' ') || cs.contains('/') {
                format!("({})*{}", cs, factors.join("*"))
            } else {
                format!("{}*{}", cs, factors.join("*"))
            };
            parts.push(body);
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            if let Some(stripped) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldtower::rationals;

    #[test]
    fn arithmetic_and_orders() {
        let q = rationals();
        let x = MPoly::var(&q, 2, 0);
        let y = MPoly::var(&q, 2, 1);
        // (x + y)^2 = x^2 + 2xy + y^2
        let s = x.add(&q, &y);
        let sq = s.mul(&q, &s);
        assert_eq!(sq.num_terms(), 3);
        assert_eq!(sq.degree_in(0), 2);
        // lex leading term of x*y^2 + x^2 is x^2
        let p = x.mul(&q, &y.mul(&q, &y)).add(&q, &x.mul(&q, &x));
        let (e, _) = p.leading(MonomialOrder::Lex).unwrap();
        assert_eq!(e, &vec![2, 0]);
        // degrevlex picks the total-degree-3 term
        let (e, _) = p.leading(MonomialOrder::DegRevLex).unwrap();
        assert_eq!(e, &vec![1, 2]);
    }

    #[test]
    fn substitution() {
        let q = rationals();
        let x = MPoly::var(&q, 2, 0);
        let y = MPoly::var(&q, 2, 1);
        // x^2 with x -> y gives y^2
        let p = x.mul(&q, &x);
        let sub = p.substitute(&q, &[y.clone(), y.clone()]);
        assert_eq!(sub, y.mul(&q, &y));
    }

    #[test]
    fn render_is_stable() {
        let q = rationals();
        let x = MPoly::var(&q, 2, 0);
        let y = MPoly::var(&q, 2, 1);
        let p = x.mul(&q, &x).sub(&q, &y).add(&q, &MPoly::constant(&q, 2, q.from_i64(3)));
        assert_eq!(p.render(&q, &["x".into(), "y".into()]), "x^2 - y + 3");
    }
}
