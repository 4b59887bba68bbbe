//! Sigma-pseudo fields: finite cyclic products of fields with a sigma
//! action mapping component `i` into component `i+1`.
//!
//! A pseudo field of period `d` decomposes as `e_1 K + ... + e_d K` for
//! orthogonal idempotents cyclically permuted by sigma; each `e_i K` is a
//! field. Elements are coordinate vectors, one per component; an element is
//! invertible iff every coordinate is nonzero, and the zero divisors are
//! exactly the nonzero non-invertibles.

use thiserror::Error;

use crate::fieldtower::{
    tensor_decompose, FieldError, FieldMorphism, FieldTower, TowerElem,
};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PseudoError {
    #[error("cyclic structure broken: {0}")]
    CyclicStructureBroken(String),
    #[error("pseudo fields have mismatched periods: {0} vs {1}")]
    PeriodMismatch(usize, usize),
    #[error("component {0} does not extend the base component")]
    NotAnExtension(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A sigma-pseudo field presented as its component fields and the
/// connecting maps `sigma: e_i K -> e_{i+1} K` (indices mod the period).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoField {
    components: Vec<FieldTower>,
    sigma_maps: Vec<FieldMorphism>,
}

/// An element: one coordinate per component.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PseudoFieldElem {
    pub coords: Vec<TowerElem>,
}

/// Validates the cyclic structure and assembles a pseudo field.
pub fn make_pseudofield(
    components: Vec<FieldTower>,
    sigma_maps: Vec<FieldMorphism>,
) -> Result<PseudoField, PseudoError> {
    if components.is_empty() {
        return Err(PseudoError::CyclicStructureBroken("no components".to_string()));
    }
    if components.len() != sigma_maps.len() {
        return Err(PseudoError::CyclicStructureBroken(format!(
            "{} components but {} sigma maps",
            components.len(),
            sigma_maps.len()
        )));
    }
    let d = components.len();
    for (i, m) in sigma_maps.iter().enumerate() {
        if m.source() != &components[i] {
            return Err(PseudoError::CyclicStructureBroken(format!(
                "sigma map {i} does not start at component {i}"
            )));
        }
        if m.target() != &components[(i + 1) % d] {
            return Err(PseudoError::CyclicStructureBroken(format!(
                "sigma map {i} does not end at component {}",
                (i + 1) % d
            )));
        }
    }
    Ok(PseudoField { components, sigma_maps })
}

/// The trivial extension: `d` copies of a period-1 pseudo field with
/// `sigma(a_1, ..., a_d) = (sigma(a_d), sigma(a_1), ..., sigma(a_{d-1}))`.
pub fn trivial_extension(k: &PseudoField, d: usize) -> PseudoField {
    assert_eq!(k.period(), 1, "trivial extension starts from a period-1 pseudo field");
    assert!(d >= 1);
    let comp = k.components[0].clone();
    let map = k.sigma_maps[0].clone();
    PseudoField {
        components: vec![comp; d],
        sigma_maps: vec![map; d],
    }
}

impl PseudoField {
    /// A sigma-field viewed as a period-1 pseudo field.
    pub fn from_sigma_field(tower: FieldTower, sigma: FieldMorphism) -> Result<Self, PseudoError> {
        make_pseudofield(vec![tower], vec![sigma])
    }

    pub fn period(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[FieldTower] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &FieldTower {
        &self.components[i]
    }

    pub fn sigma_maps(&self) -> &[FieldMorphism] {
        &self.sigma_maps
    }

    /// The idempotents `e_1, ..., e_d`: `e_i` has 1 in coordinate `i`
    /// (0-indexed here) and 0 elsewhere.
    pub fn idempotents(&self) -> Vec<PseudoFieldElem> {
        let d = self.period();
        (0..d)
            .map(|i| {
                let coords = (0..d)
                    .map(|j| if i == j { self.components[j].one() } else { self.components[j].zero() })
                    .collect();
                PseudoFieldElem { coords }
            })
            .collect()
    }

    pub fn zero(&self) -> PseudoFieldElem {
        PseudoFieldElem { coords: self.components.iter().map(|c| c.zero()).collect() }
    }

    pub fn one(&self) -> PseudoFieldElem {
        PseudoFieldElem { coords: self.components.iter().map(|c| c.one()).collect() }
    }

    pub fn from_i64(&self, n: i64) -> PseudoFieldElem {
        PseudoFieldElem { coords: self.components.iter().map(|c| c.from_i64(n)).collect() }
    }

    /// Diagonal embedding of a component-0 element (components must all be
    /// the same tower, as in a trivial extension).
    pub fn diagonal(&self, e: &TowerElem) -> PseudoFieldElem {
        assert!(
            self.components.iter().all(|c| c == &self.components[0]),
            "diagonal embedding needs equal components"
        );
        PseudoFieldElem { coords: vec![e.clone(); self.period()] }
    }

    pub fn add(&self, a: &PseudoFieldElem, b: &PseudoFieldElem) -> PseudoFieldElem {
        self.zip(a, b, |t, x, y| t.add(x, y))
    }

    pub fn sub(&self, a: &PseudoFieldElem, b: &PseudoFieldElem) -> PseudoFieldElem {
        self.zip(a, b, |t, x, y| t.sub(x, y))
    }

    pub fn mul(&self, a: &PseudoFieldElem, b: &PseudoFieldElem) -> PseudoFieldElem {
        self.zip(a, b, |t, x, y| t.mul(x, y))
    }

    pub fn neg(&self, a: &PseudoFieldElem) -> PseudoFieldElem {
        PseudoFieldElem {
            coords: self
                .components
                .iter()
                .zip(&a.coords)
                .map(|(t, x)| t.neg(x))
                .collect(),
        }
    }

    fn zip(
        &self,
        a: &PseudoFieldElem,
        b: &PseudoFieldElem,
        f: impl Fn(&FieldTower, &TowerElem, &TowerElem) -> TowerElem,
    ) -> PseudoFieldElem {
        assert_eq!(a.coords.len(), self.period());
        assert_eq!(b.coords.len(), self.period());
        PseudoFieldElem {
            coords: self
                .components
                .iter()
                .zip(a.coords.iter().zip(&b.coords))
                .map(|(t, (x, y))| f(t, x, y))
                .collect(),
        }
    }

    pub fn is_zero(&self, a: &PseudoFieldElem) -> bool {
        self.components.iter().zip(&a.coords).all(|(t, x)| t.is_zero(x))
    }

    /// Invertible iff every coordinate is nonzero.
    pub fn is_invertible(&self, a: &PseudoFieldElem) -> bool {
        self.components.iter().zip(&a.coords).all(|(t, x)| !t.is_zero(x))
    }

    /// Zero divisor iff some coordinate is zero and some is not.
    pub fn is_zero_divisor(&self, a: &PseudoFieldElem) -> bool {
        let zeros = self.components.iter().zip(&a.coords).filter(|(t, x)| t.is_zero(x)).count();
        zeros > 0 && zeros < self.period()
    }

    pub fn inv(&self, a: &PseudoFieldElem) -> Result<PseudoFieldElem, PseudoError> {
        let mut coords = Vec::with_capacity(self.period());
        for (t, x) in self.components.iter().zip(&a.coords) {
            coords.push(t.inv(x)?);
        }
        Ok(PseudoFieldElem { coords })
    }

    /// The sigma action: coordinate `i` of the result is
    /// `sigma_map_{i-1}(coordinate i-1)`, indices mod the period.
    pub fn apply_sigma(&self, a: &PseudoFieldElem) -> Result<PseudoFieldElem, PseudoError> {
        let d = self.period();
        let mut coords = Vec::with_capacity(d);
        for i in 0..d {
            let j = (i + d - 1) % d;
            coords.push(self.sigma_maps[j].apply(&a.coords[j])?);
        }
        Ok(PseudoFieldElem { coords })
    }

    pub fn apply_sigma_power(
        &self,
        a: &PseudoFieldElem,
        k: usize,
    ) -> Result<PseudoFieldElem, PseudoError> {
        let mut cur = a.clone();
        for _ in 0..k {
            cur = self.apply_sigma(&cur)?;
        }
        Ok(cur)
    }

    pub fn render_elem(&self, a: &PseudoFieldElem) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .zip(&a.coords)
            .map(|(t, x)| t.render_elem(x))
            .collect();
        format!("({})", parts.join(", "))
    }
}

/// Outcome of the desk-scale compatibility test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompatResult {
    /// Minimal `d` such that a sigma^d-stable component of `L (x)_K L'`
    /// carries a sigma^d-prime ideal.
    MinimalPeriod(usize),
    NoneUpTo(usize),
}

/// Decomposes `L (x)_K L'` into field components, computes the permutation
/// induced by sigma, and returns the minimal orbit period.
///
/// Scope: `K`, `L`, `L'` must share the same period, with componentwise
/// extensions (each `e_i L` a finite algebraic extension of `e_i K` within
/// factorization scope).
pub fn compat_test(
    l: &PseudoField,
    lp: &PseudoField,
    over: &PseudoField,
    max_period: usize,
) -> Result<CompatResult, PseudoError> {
    let e = over.period();
    if l.period() != e {
        return Err(PseudoError::PeriodMismatch(l.period(), e));
    }
    if lp.period() != e {
        return Err(PseudoError::PeriodMismatch(lp.period(), e));
    }
    for i in 0..e {
        if !l.component(i).has_prefix(over.component(i)) {
            return Err(PseudoError::NotAnExtension(i));
        }
        if !lp.component(i).has_prefix(over.component(i)) {
            return Err(PseudoError::NotAnExtension(i));
        }
    }

    // decompose slot by slot
    let mut slot_comps = Vec::with_capacity(e);
    for i in 0..e {
        let comps = tensor_decompose(l.component(i), lp.component(i), over.component(i))?;
        slot_comps.push(comps);
    }

    // global component identifiers (slot, index); sigma sends the fiber of
    // slot i-1 into slot i, so the preimage of component (i, c) is found in
    // slot i-1 by matching the twisted pair of embeddings
    let mut ids = Vec::new();
    for (i, comps) in slot_comps.iter().enumerate() {
        for c in 0..comps.len() {
            ids.push((i, c));
        }
    }
    let index_of = |slot: usize, c: usize| -> usize {
        ids.iter().position(|&(s, cc)| s == slot && cc == c).expect("component id")
    };

    let mut perm = vec![usize::MAX; ids.len()];
    for (gidx, &(i, c)) in ids.iter().enumerate() {
        let prev = (i + e - 1) % e;
        let comp = &slot_comps[i][c];
        // twisted maps from the slot `prev` factors into this component
        let phi_tw = l.sigma_maps()[prev].then(&comp.left_embedding)?;
        let psi_tw = lp.sigma_maps()[prev].then(&comp.right_embedding)?;
        let mut found = None;
        for (j, cand) in slot_comps[prev].iter().enumerate() {
            if component_map(cand, &comp.tower, &phi_tw, &psi_tw, lp, prev)?.is_some() {
                found = Some(j);
                break;
            }
        }
        let j = found.expect("sigma preimage of a tensor component must exist");
        perm[gidx] = index_of(prev, j);
    }
    {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            assert!(!seen[p], "sigma action on components is not a permutation");
            seen[p] = true;
        }
    }

    // minimal orbit length of the permutation
    let mut best: Option<usize> = None;
    for start in 0..perm.len() {
        let mut len = 1usize;
        let mut cur = perm[start];
        while cur != start {
            cur = perm[cur];
            len += 1;
        }
        best = Some(best.map_or(len, |b: usize| b.min(len)));
    }
    match best {
        Some(d) if d <= max_period => Ok(CompatResult::MinimalPeriod(d)),
        _ => Ok(CompatResult::NoneUpTo(max_period)),
    }
}

/// Tries to build the morphism `chi: cand.tower -> target` with
/// `chi . phi_cand = phi_tw` and `chi . psi_cand = psi_tw`; `Some` means the
/// component kernels agree. The candidate is pinned on the component's
/// tower generators and then verified against the full embeddings, since
/// linear factors leave no adjoined generator to distinguish components.
fn component_map(
    cand: &crate::fieldtower::TensorComponent,
    target: &FieldTower,
    phi_tw: &FieldMorphism,
    psi_tw: &FieldMorphism,
    lp: &PseudoField,
    slot: usize,
) -> Result<Option<FieldMorphism>, PseudoError> {
    let right = lp.component(slot);
    let mut images = Vec::with_capacity(cand.tower.level());
    for k in 0..right.level() {
        images.push(psi_tw.apply(&right.generator(k))?);
    }
    for &step_idx in &cand.adjoined_left_steps {
        let src = phi_tw.source();
        images.push(phi_tw.apply(&src.generator(step_idx))?);
    }
    let chi = match FieldMorphism::make(&cand.tower, target, images) {
        Ok(m) => m,
        Err(FieldError::NotWellDefined(_)) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let left = phi_tw.source();
    for k in 0..left.level() {
        let g = left.generator(k);
        let via_cand = chi.apply(&cand.left_embedding.apply(&g)?)?;
        if via_cand != phi_tw.apply(&g)? {
            return Ok(None);
        }
    }
    for k in 0..right.level() {
        let g = right.generator(k);
        let via_cand = chi.apply(&cand.right_embedding.apply(&g)?)?;
        if via_cand != psi_tw.apply(&g)? {
            return Ok(None);
        }
    }
    Ok(Some(chi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldtower::{make_prime_field, rationals, UniPoly};

    fn q_sigma() -> PseudoField {
        let q = rationals();
        let id = FieldMorphism::identity(&q);
        PseudoField::from_sigma_field(q, id).unwrap()
    }

    #[test]
    fn idempotent_axioms() {
        let k = trivial_extension(&q_sigma(), 3);
        let es = k.idempotents();
        assert_eq!(es.len(), 3);
        // e_i e_j = 0 for i != j, e_i^2 = e_i, sum = 1
        for i in 0..3 {
            for j in 0..3 {
                let prod = k.mul(&es[i], &es[j]);
                if i == j {
                    assert_eq!(prod, es[i]);
                } else {
                    assert!(k.is_zero(&prod));
                }
            }
        }
        let sum = k.add(&k.add(&es[0], &es[1]), &es[2]);
        assert_eq!(sum, k.one());
        // sigma(e_i) = e_{i+1}, cyclically
        for i in 0..3 {
            assert_eq!(k.apply_sigma(&es[i]).unwrap(), es[(i + 1) % 3]);
        }
    }

    #[test]
    fn trivial_extension_shifts() {
        let k = trivial_extension(&q_sigma(), 2);
        let q = rationals();
        let a = PseudoFieldElem { coords: vec![q.from_i64(1), q.from_i64(2)] };
        let s = k.apply_sigma(&a).unwrap();
        assert_eq!(s.coords, vec![q.from_i64(2), q.from_i64(1)]);
        // diagonal commutes with sigma when sigma = id
        let d = k.diagonal(&q.from_i64(7));
        assert_eq!(k.apply_sigma(&d).unwrap(), d);
    }

    #[test]
    fn zero_divisors_and_invertibles() {
        let k = trivial_extension(&q_sigma(), 2);
        let q = rationals();
        let zd = PseudoFieldElem { coords: vec![q.from_i64(1), q.zero()] };
        assert!(k.is_zero_divisor(&zd));
        assert!(!k.is_invertible(&zd));
        assert!(k.inv(&zd).is_err());
        let u = PseudoFieldElem { coords: vec![q.from_i64(2), q.from_i64(-3)] };
        assert!(k.is_invertible(&u));
        assert!(!k.is_zero_divisor(&u));
        let inv = k.inv(&u).unwrap();
        assert_eq!(k.mul(&u, &inv), k.one());
    }

    #[test]
    fn mismatched_endpoints_rejected() {
        let q = rationals();
        let k2 = q.extend_algebraic("r2", &UniPoly::from_i64(&q, &[-2, 0, 1])).unwrap();
        let idq = FieldMorphism::identity(&q);
        let idk = FieldMorphism::identity(&k2);
        let res = make_pseudofield(vec![q.clone(), k2.clone()], vec![idq, idk]);
        assert!(matches!(res, Err(PseudoError::CyclicStructureBroken(_))));
    }

    #[test]
    fn period_two_from_conjugation() {
        // two copies of Q(sqrt2) linked by conjugation both ways;
        // conj . conj = id so sigma^2 fixes the diagonal
        let q = rationals();
        let k2 = q.extend_algebraic("r2", &UniPoly::from_i64(&q, &[-2, 0, 1])).unwrap();
        let r2 = k2.generator(0);
        let conj = FieldMorphism::make(&k2, &k2, vec![k2.neg(&r2)]).unwrap();
        let pf = make_pseudofield(vec![k2.clone(), k2.clone()], vec![conj.clone(), conj]).unwrap();
        assert_eq!(pf.period(), 2);
        let a = PseudoFieldElem { coords: vec![r2.clone(), k2.neg(&r2)] };
        let twice = pf.apply_sigma_power(&a, 2).unwrap();
        assert_eq!(twice, a);
    }

    #[test]
    fn compat_identity_case() {
        // L = L' = Q(sqrt2), sigma = id, over Q: minimal period 1
        let q = rationals();
        let k2 = q.extend_algebraic("r2", &UniPoly::from_i64(&q, &[-2, 0, 1])).unwrap();
        let l = PseudoField::from_sigma_field(k2.clone(), FieldMorphism::identity(&k2)).unwrap();
        let base = q_sigma();
        assert_eq!(compat_test(&l, &l, &base, 16).unwrap(), CompatResult::MinimalPeriod(1));
    }

    #[test]
    fn compat_conjugation_vs_identity() {
        // L = Q(sqrt2) with conjugation, L' with id: the two tensor factors
        // are swapped, so the minimal period is 2
        let q = rationals();
        let k2 = q.extend_algebraic("r2", &UniPoly::from_i64(&q, &[-2, 0, 1])).unwrap();
        let r2 = k2.generator(0);
        let conj = FieldMorphism::make(&k2, &k2, vec![k2.neg(&r2)]).unwrap();
        let l = PseudoField::from_sigma_field(k2.clone(), conj).unwrap();
        let lp = PseudoField::from_sigma_field(k2.clone(), FieldMorphism::identity(&k2)).unwrap();
        let base = q_sigma();
        assert_eq!(compat_test(&l, &lp, &base, 16).unwrap(), CompatResult::MinimalPeriod(2));
    }

    #[test]
    fn compat_frobenius_f8() {
        // F_8 with Frobenius against F_8 constant, over F_2: period 3
        let f2 = make_prime_field(2).unwrap();
        let f8 = f2.extend_algebraic("g", &UniPoly::from_i64(&f2, &[1, 1, 0, 1])).unwrap();
        let g = f8.generator(0);
        let frob = FieldMorphism::make(&f8, &f8, vec![f8.mul(&g, &g)]).unwrap();
        let l = PseudoField::from_sigma_field(f8.clone(), frob).unwrap();
        let lp = PseudoField::from_sigma_field(f8.clone(), FieldMorphism::identity(&f8)).unwrap();
        let base = PseudoField::from_sigma_field(f2.clone(), FieldMorphism::identity(&f2)).unwrap();
        assert_eq!(compat_test(&l, &lp, &base, 16).unwrap(), CompatResult::MinimalPeriod(3));
    }
}
