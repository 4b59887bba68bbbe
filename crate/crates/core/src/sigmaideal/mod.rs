//! Sigma-ideals in polynomial sigma-rings: Buchberger-based membership and
//! elimination, sigma-stability and reflexivity certificates, `notin_sigma`
//! scans, pseudo-prime assembly, and the Chevalley lift searches.

pub mod groebner;
mod lift;

pub use lift::{chevalley_witness, lift_search, Inclusion, LiftEntry, LiftReport, WitnessRow,
               WitnessTable};

use std::sync::OnceLock;

use thiserror::Error;

use crate::fieldtower::{FieldError, FieldMorphism, FieldTower, SigmaField, TowerElem};
use crate::multipoly::{MPoly, MonomialOrder};
use crate::pseudofield::PseudoField;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum IdealError {
    #[error("ambient coefficients are not a field (period > 1); pass a component or localize")]
    CoefficientNotField,
    #[error("sigma^{0} leaves the ambient ring: {1}")]
    AmbientNotClosed(usize, String),
    #[error("sigma preimage not computable on this presentation: {0}")]
    PreimageNotComputable(String),
    #[error("fiber is not zero-dimensional in scope: {0}")]
    FiberNotFinite(String),
    #[error("residue field outside presentation scope: {0}")]
    ResidueOutOfScope(String),
    #[error("ideal is not sigma^{0}-stable: witness {1}")]
    NotSigmaStable(usize, String),
    #[error("inclusion is not sigma-compatible at generator {0}")]
    InclusionNotCompatible(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A polynomial ring over a sigma-field, with the sigma action given per
/// variable: either a polynomial image, or `None` when sigma leaves the
/// ring (the top level of a truncation).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaPolyRing {
    coeffs: SigmaField,
    var_names: Vec<String>,
    sigma_var_images: Vec<Option<MPoly>>,
}

impl SigmaPolyRing {
    pub fn new(
        coeffs: SigmaField,
        var_names: Vec<String>,
        sigma_var_images: Vec<Option<MPoly>>,
    ) -> SigmaPolyRing {
        assert_eq!(var_names.len(), sigma_var_images.len());
        for img in sigma_var_images.iter().flatten() {
            assert_eq!(img.nvars(), var_names.len());
        }
        SigmaPolyRing { coeffs, var_names, sigma_var_images }
    }

    pub fn nvars(&self) -> usize {
        self.var_names.len()
    }

    pub fn tower(&self) -> &FieldTower {
        self.coeffs.tower()
    }

    pub fn coeffs(&self) -> &SigmaField {
        &self.coeffs
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_names.iter().position(|n| n == name)
    }

    pub fn var(&self, i: usize) -> MPoly {
        MPoly::var(self.tower(), self.nvars(), i)
    }

    pub fn sigma_var_images(&self) -> &[Option<MPoly>] {
        &self.sigma_var_images
    }

    pub fn render(&self, p: &MPoly) -> String {
        p.render(self.tower(), &self.var_names)
    }

    /// Applies sigma once: coefficients through the field endomorphism,
    /// variables through their declared images.
    pub fn apply_sigma(&self, p: &MPoly) -> Result<MPoly, IdealError> {
        let t = self.tower();
        let mapped = p.map_coeffs(self.coeffs.sigma())?;
        let mut images = Vec::with_capacity(self.nvars());
        for (i, img) in self.sigma_var_images.iter().enumerate() {
            match img {
                Some(m) => images.push(m.clone()),
                None => {
                    if mapped.involves_var(i) {
                        return Err(IdealError::AmbientNotClosed(
                            1,
                            format!("variable {} has no sigma image", self.var_names[i]),
                        ));
                    }
                    images.push(MPoly::zero(self.nvars()));
                }
            }
        }
        Ok(mapped.substitute(t, &images))
    }

    pub fn apply_sigma_power(&self, p: &MPoly, d: usize) -> Result<MPoly, IdealError> {
        let mut cur = p.clone();
        for k in 0..d {
            cur = self.apply_sigma(&cur).map_err(|e| match e {
                IdealError::AmbientNotClosed(_, msg) => IdealError::AmbientNotClosed(k + 1, msg),
                other => other,
            })?;
        }
        Ok(cur)
    }

    /// Builds the inverse ring map when sigma is invertible on this
    /// presentation: the coefficient endomorphism has finite order and
    /// every variable image is a nonzero scalar times a single variable,
    /// with the variable assignment a permutation.
    pub fn inverse_sigma(&self) -> Result<RingMap, IdealError> {
        let t = self.tower();
        let coeff_inv = self
            .coeffs
            .sigma()
            .inverse_by_order(64)
            .ok_or_else(|| {
                IdealError::PreimageNotComputable(
                    "coefficient endomorphism has no inverse of order <= 64".to_string(),
                )
            })?;
        let n = self.nvars();
        let mut images: Vec<Option<MPoly>> = vec![None; n];
        for (i, img) in self.sigma_var_images.iter().enumerate() {
            let Some(img) = img else {
                return Err(IdealError::PreimageNotComputable(format!(
                    "variable {} has no sigma image",
                    self.var_names[i]
                )));
            };
            let Some((var, coef)) = single_variable_term(t, img) else {
                return Err(IdealError::PreimageNotComputable(format!(
                    "sigma image of {} is not a scalar multiple of a variable",
                    self.var_names[i]
                )));
            };
            if images[var].is_some() {
                return Err(IdealError::PreimageNotComputable(
                    "sigma variable assignment is not a permutation".to_string(),
                ));
            }
            // sigma(v_i) = c * v_j, so the inverse sends v_j to
            // sigma^{-1}(c)^{-1} * v_i
            let c_pre = coeff_inv.apply(&coef)?;
            let c_inv = t.inv(&c_pre)?;
            images[var] = Some(self.var(i).scale(t, &c_inv));
        }
        let images: Option<Vec<MPoly>> = images.into_iter().collect();
        let images = images.ok_or_else(|| {
            IdealError::PreimageNotComputable(
                "sigma variable assignment is not a permutation".to_string(),
            )
        })?;
        Ok(RingMap { coeff: coeff_inv, var_images: images })
    }
}

/// `sigma(v) = c * v_j` detection for invertibility checks.
fn single_variable_term(t: &FieldTower, p: &MPoly) -> Option<(usize, TowerElem)> {
    if p.num_terms() != 1 {
        return None;
    }
    let (e, c) = p.terms().next()?;
    let mut var = None;
    for (i, &exp) in e.iter().enumerate() {
        match exp {
            0 => {}
            1 if var.is_none() => var = Some(i),
            _ => return None,
        }
    }
    let v = var?;
    if t.is_zero(c) {
        None
    } else {
        Some((v, c.clone()))
    }
}

/// A total ring endomorphism of a polynomial sigma-ring (used for inverse
/// sigma maps).
#[derive(Debug, Clone)]
pub struct RingMap {
    coeff: FieldMorphism,
    var_images: Vec<MPoly>,
}

impl RingMap {
    pub fn apply(&self, t: &FieldTower, p: &MPoly) -> Result<MPoly, IdealError> {
        let mapped = p.map_coeffs(&self.coeff)?;
        Ok(mapped.substitute(t, &self.var_images))
    }
}

/// A finitely generated ideal in a polynomial sigma-ring, with optional
/// stability flags and cached Groebner bases.
#[derive(Debug, Clone)]
pub struct SigmaIdeal {
    ring: SigmaPolyRing,
    generators: Vec<MPoly>,
    /// Claimed sigma^d-stability degree, when certified.
    pub stability_degree: Option<usize>,
    /// True when full reflexivity (not just forward stability) is certified.
    pub reflexive: Option<bool>,
    gb_lex: OnceLock<Vec<MPoly>>,
    gb_drl: OnceLock<Vec<MPoly>>,
}

impl PartialEq for SigmaIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.generators == other.generators
    }
}

impl SigmaIdeal {
    pub fn new(ring: SigmaPolyRing, generators: Vec<MPoly>) -> SigmaIdeal {
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        SigmaIdeal {
            ring,
            generators,
            stability_degree: None,
            reflexive: None,
            gb_lex: OnceLock::new(),
            gb_drl: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &SigmaPolyRing {
        &self.ring
    }

    pub fn generators(&self) -> &[MPoly] {
        &self.generators
    }

    /// Reduced Groebner basis under the given order (cached).
    pub fn groebner(&self, ord: MonomialOrder) -> &[MPoly] {
        let cell = match ord {
            MonomialOrder::Lex => &self.gb_lex,
            MonomialOrder::DegRevLex => &self.gb_drl,
        };
        cell.get_or_init(|| groebner::buchberger(self.ring.tower(), &self.generators, ord))
    }

    pub fn contains(&self, p: &MPoly) -> bool {
        let ord = MonomialOrder::DegRevLex;
        groebner::membership(self.ring.tower(), p, self.groebner(ord), ord)
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.groebner(MonomialOrder::DegRevLex).iter().any(|p| p.is_constant() && !p.is_zero())
    }

    pub fn same_ideal(&self, other: &SigmaIdeal) -> bool {
        let ord = MonomialOrder::DegRevLex;
        groebner::ideal_eq(self.ring.tower(), self.groebner(ord), other.groebner(ord), ord)
    }

    pub fn rendered_generators(&self) -> Vec<String> {
        self.groebner(MonomialOrder::Lex).iter().map(|g| self.ring.render(g)).collect()
    }
}

/// Outcome of a sigma-stability check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stability {
    /// `sigma^d(I) <= I`; `reflexive` records whether `sigma^{-d}(I) = I`
    /// was additionally certified (possible when sigma is invertible on
    /// the ambient presentation).
    Stable { reflexive: bool },
    NotStable { witness: String },
}

/// Checks `sigma^d(g) = 0 mod I` for every generator; when sigma is
/// invertible on the ambient, additionally certifies reflexivity by
/// checking the inverse images, and otherwise falls back to computing the
/// full preimage `sigma^{-d}(I)` by elimination when `sigma^d` is total.
pub fn sigma_stability(ideal: &SigmaIdeal, d: usize) -> Result<Stability, IdealError> {
    assert!(d >= 1);
    let ring = ideal.ring();
    let t = ring.tower();
    let ord = MonomialOrder::DegRevLex;
    let gb = ideal.groebner(ord);
    for g in ideal.generators() {
        let shifted = ring.apply_sigma_power(g, d)?;
        if !groebner::membership(t, &shifted, gb, ord) {
            return Ok(Stability::NotStable { witness: ring.render(g) });
        }
    }
    if let Ok(inv) = ring.inverse_sigma() {
        for g in ideal.generators() {
            let mut cur = g.clone();
            for _ in 0..d {
                cur = inv.apply(t, &cur)?;
            }
            if !groebner::membership(t, &cur, gb, ord) {
                // forward stable but not reflexive
                return Ok(Stability::Stable { reflexive: false });
            }
        }
        return Ok(Stability::Stable { reflexive: true });
    }
    // sigma not invertible: compute sigma^{-d}(I) as the contraction of I
    // along the (total) substitution endomorphism, and compare; a
    // nontrivial coefficient endomorphism must be undone on the result
    let n = ring.nvars();
    let mut images = Vec::with_capacity(n);
    for i in 0..n {
        match ring.apply_sigma_power(&ring.var(i), d) {
            Ok(img) => images.push(img),
            Err(_) => return Ok(Stability::Stable { reflexive: false }),
        }
    }
    let contracted = groebner::contract_through(t, gb, &images, n);
    let preimage = if ring.coeffs().sigma().is_identity() {
        contracted
    } else {
        match ring.coeffs().sigma().power(d).ok().and_then(|m| m.inverse_by_order(64)) {
            Some(inv_d) => {
                let mut out = Vec::with_capacity(contracted.len());
                for g in &contracted {
                    match g.map_coeffs(&inv_d) {
                        Ok(m) => out.push(m),
                        Err(_) => return Ok(Stability::Stable { reflexive: false }),
                    }
                }
                out
            }
            None => return Ok(Stability::Stable { reflexive: false }),
        }
    };
    let pre_ideal = SigmaIdeal::new(ring.clone(), preimage);
    Ok(Stability::Stable { reflexive: pre_ideal.same_ideal(ideal) })
}

/// The least `e >= 1` with `e` dividing `d` such that the ideal is
/// sigma^e-stable; `None` if not even sigma^d-stable.
pub fn minimal_period(ideal: &SigmaIdeal, d: usize) -> Result<Option<usize>, IdealError> {
    for e in 1..=d {
        if d % e != 0 {
            continue;
        }
        match sigma_stability(ideal, e)? {
            Stability::Stable { .. } => return Ok(Some(e)),
            Stability::NotStable { .. } => {}
        }
    }
    Ok(None)
}

/// Result of a `notin_sigma` scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotinSigma {
    /// `sigma^i(r)` lies in the ideal, for the least such `i <= bound`.
    In(usize),
    NotInUpTo(usize),
}

/// Scans `sigma^i(r)` for membership, `i = 0..=bound`. For an ideal with a
/// certified reflexive period `d` the scan is cut to `i < d`. A shift that
/// leaves the ambient truncation cannot lie in the ideal and is skipped.
pub fn notin_sigma(r: &MPoly, ideal: &SigmaIdeal, bound: usize) -> NotinSigma {
    let ring = ideal.ring();
    let effective = match (ideal.stability_degree, ideal.reflexive) {
        (Some(d), Some(true)) if d >= 1 => bound.min(d - 1),
        _ => bound,
    };
    let mut cur = r.clone();
    for i in 0..=effective {
        if ideal.contains(&cur) {
            return NotinSigma::In(i);
        }
        if i < effective {
            match ring.apply_sigma(&cur) {
                Ok(next) => cur = next,
                Err(_) => return NotinSigma::NotInUpTo(bound),
            }
        }
    }
    NotinSigma::NotInUpTo(bound)
}

/// Assembles the sigma-pseudo prime `p = q /\ sigma^{-1}(q) /\ ... /\
/// sigma^{-(d-1)}(q)` from a sigma^d-prime `q`, by iterated intersection;
/// requires sigma invertible on the ambient presentation.
pub fn pseudo_prime_assemble(q: &SigmaIdeal, d: usize) -> Result<SigmaIdeal, IdealError> {
    assert!(d >= 1);
    let ring = q.ring();
    let t = ring.tower();
    match sigma_stability(q, d)? {
        Stability::Stable { .. } => {}
        Stability::NotStable { witness } => {
            return Err(IdealError::NotSigmaStable(d, witness));
        }
    }
    if d == 1 {
        return Ok(q.clone());
    }
    let inv = ring.inverse_sigma()?;
    let mut acc: Vec<MPoly> = q.generators().to_vec();
    let mut shifted: Vec<MPoly> = q.generators().to_vec();
    for _ in 1..d {
        shifted = shifted
            .iter()
            .map(|g| inv.apply(t, g))
            .collect::<Result<Vec<_>, _>>()?;
        acc = groebner::intersect(t, &acc, &shifted, ring.nvars());
    }
    let result = SigmaIdeal::new(ring.clone(), acc);
    // sigma(p) <= p must hold for the assembled pseudo prime
    let ord = MonomialOrder::DegRevLex;
    let gb = result.groebner(ord);
    for g in result.generators() {
        let s = ring.apply_sigma(g)?;
        debug_assert!(groebner::membership(t, &s, gb, ord), "assembled ideal not sigma-stable");
        let _ = s;
    }
    Ok(result)
}

/// A polynomial ring over a pseudo field of period `d`: the direct sum of
/// the component rings, with sigma mapping slot `i` into slot `i+1`.
#[derive(Debug, Clone)]
pub struct PseudoPolyRing {
    pseudo: PseudoField,
    var_names: Vec<String>,
    /// Common sigma images of the variables (exponents only; coefficients
    /// move through the pseudo field's connecting maps).
    sigma_var_images: Vec<MPoly>,
}

/// An ideal in a pseudo-coefficient polynomial ring, stored slotwise.
#[derive(Debug, Clone)]
pub struct TupleIdeal {
    pub slots: Vec<Vec<MPoly>>,
}

impl PseudoPolyRing {
    pub fn new(
        pseudo: PseudoField,
        var_names: Vec<String>,
        sigma_var_images: Vec<MPoly>,
    ) -> PseudoPolyRing {
        assert_eq!(var_names.len(), sigma_var_images.len());
        PseudoPolyRing { pseudo, var_names, sigma_var_images }
    }

    pub fn pseudo(&self) -> &PseudoField {
        &self.pseudo
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    /// Groebner bases need field coefficients; callers must pass a single
    /// component instead.
    pub fn groebner(&self, _ideal: &TupleIdeal) -> Result<Vec<Vec<MPoly>>, IdealError> {
        if self.pseudo.period() > 1 {
            return Err(IdealError::CoefficientNotField);
        }
        let t = self.pseudo.component(0);
        Ok(vec![groebner::buchberger(
            t,
            &_ideal.slots[0],
            MonomialOrder::DegRevLex,
        )])
    }

    /// Moves a slot-`i` polynomial to slot `i+1` along sigma.
    pub fn apply_sigma_slot(&self, slot: usize, p: &MPoly) -> Result<MPoly, IdealError> {
        let d = self.pseudo.period();
        let m = &self.pseudo.sigma_maps()[slot];
        let mapped = p.map_coeffs(m)?;
        let target = self.pseudo.component((slot + 1) % d);
        Ok(mapped.substitute(target, &self.sigma_var_images))
    }

    /// Assembles the pseudo-prime ideal from a sigma^d-prime concentrated
    /// in one slot (prime generators in `q_slot`, the other slots full).
    /// The intersection is the tuple whose slot `i` carries the
    /// sigma-transported copy of the prime.
    pub fn pseudo_prime_assemble_slot(
        &self,
        q_slot: usize,
        q_gens: &[MPoly],
    ) -> Result<TupleIdeal, IdealError> {
        let d = self.pseudo.period();
        let mut slots: Vec<Vec<MPoly>> = vec![Vec::new(); d];
        slots[q_slot] = q_gens.to_vec();
        let mut cur = q_gens.to_vec();
        let mut slot = q_slot;
        for _ in 1..d {
            let mut next = Vec::with_capacity(cur.len());
            for g in &cur {
                next.push(self.apply_sigma_slot(slot, g)?);
            }
            slot = (slot + 1) % d;
            slots[slot] = next.clone();
            cur = next;
        }
        Ok(TupleIdeal { slots })
    }

    /// Checks that sigma maps each slot of the tuple ideal into the next.
    pub fn tuple_sigma_stable(&self, ideal: &TupleIdeal) -> Result<bool, IdealError> {
        let d = self.pseudo.period();
        for i in 0..d {
            let target = self.pseudo.component((i + 1) % d);
            let gb = groebner::buchberger(
                target,
                &ideal.slots[(i + 1) % d],
                MonomialOrder::DegRevLex,
            );
            for g in &ideal.slots[i] {
                let s = self.apply_sigma_slot(i, g)?;
                if !groebner::membership(target, &s, &gb, MonomialOrder::DegRevLex) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldtower::{rationals, UniPoly};
    use crate::pseudofield::trivial_extension;

    fn q_sqrt2() -> FieldTower {
        let q = rationals();
        q.extend_algebraic("r2", &UniPoly::from_i64(&q, &[-2, 0, 1])).unwrap()
    }

    /// The introductory setting: K(sqrt2)[x] with sigma(x) = -x.
    fn intro_ring() -> SigmaPolyRing {
        let k = q_sqrt2();
        let sf = SigmaField::constant(k.clone());
        let x_img = MPoly::var(&k, 1, 0).neg(&k);
        SigmaPolyRing::new(sf, vec!["x".into()], vec![Some(x_img)])
    }

    #[test]
    fn intro_stability() {
        let ring = intro_ring();
        let k = ring.tower().clone();
        let x = ring.var(0);
        let r2 = MPoly::constant(&k, 1, k.generator(0));
        // I = (x - sqrt2): sigma(x - sqrt2) = -x - sqrt2 reduces to -2 sqrt2
        let ideal = SigmaIdeal::new(ring.clone(), vec![x.sub(&k, &r2)]);
        match sigma_stability(&ideal, 1).unwrap() {
            Stability::NotStable { .. } => {}
            s => panic!("expected NotStable, got {s:?}"),
        }
        match sigma_stability(&ideal, 2).unwrap() {
            Stability::Stable { reflexive } => assert!(reflexive),
            s => panic!("expected Stable, got {s:?}"),
        }
        assert_eq!(minimal_period(&ideal, 2).unwrap(), Some(2));
        // I = (x^2 - 2) is sigma-stable
        let x2 = ring.var(0).pow(&k, 2).sub(&k, &MPoly::constant(&k, 1, k.from_i64(2)));
        let ideal2 = SigmaIdeal::new(ring.clone(), vec![x2]);
        assert!(matches!(sigma_stability(&ideal2, 1).unwrap(), Stability::Stable { reflexive: true }));
    }

    #[test]
    fn notin_sigma_scan() {
        // r = x, I = (sigma(x)) in the cutoff-1 truncation: In(1)
        let q = rationals();
        let sf = SigmaField::constant(q.clone());
        let x1 = MPoly::var(&q, 2, 1);
        let ring = SigmaPolyRing::new(
            sf,
            vec!["x".into(), "s1(x)".into()],
            vec![Some(x1.clone()), None],
        );
        let ideal = SigmaIdeal::new(ring.clone(), vec![x1]);
        let x = ring.var(0);
        assert_eq!(notin_sigma(&x, &ideal, 8), NotinSigma::In(1));
        // r = x^2 - 2 not in (x - 1) under sigma = id
        let ring2 = SigmaPolyRing::new(
            SigmaField::constant(q.clone()),
            vec!["x".into()],
            vec![Some(MPoly::var(&q, 1, 0))],
        );
        let x = ring2.var(0);
        let i2 = SigmaIdeal::new(ring2.clone(), vec![x.sub(&q, &MPoly::one(&q, 1))]);
        let r = x.pow(&q, 2).sub(&q, &MPoly::constant(&q, 1, q.from_i64(2)));
        assert_eq!(notin_sigma(&r, &i2, 12), NotinSigma::NotInUpTo(12));
    }

    #[test]
    fn assemble_intro_example() {
        // q = (x - sqrt2), d = 2: p = (x - sqrt2) /\ (x + sqrt2) = (x^2 - 2)
        let ring = intro_ring();
        let k = ring.tower().clone();
        let x = ring.var(0);
        let r2 = MPoly::constant(&k, 1, k.generator(0));
        let q_ideal = SigmaIdeal::new(ring.clone(), vec![x.sub(&k, &r2)]);
        let p = pseudo_prime_assemble(&q_ideal, 2).unwrap();
        let expect = SigmaIdeal::new(
            ring.clone(),
            vec![ring.var(0).pow(&k, 2).sub(&k, &MPoly::constant(&k, 1, k.from_i64(2)))],
        );
        assert!(p.same_ideal(&expect));
        // d = 1 returns the ideal unchanged
        let p1 = pseudo_prime_assemble(&expect, 1).unwrap();
        assert!(p1.same_ideal(&expect));
    }

    #[test]
    fn assemble_trivial_extension_ambient() {
        // over trivial(Q, 3): the slot-0 prime (x - 1) assembles to the
        // tuple of coordinate-permuted copies; groebner refuses period > 1
        let q = rationals();
        let qs = crate::pseudofield::PseudoField::from_sigma_field(
            q.clone(),
            FieldMorphism::identity(&q),
        )
        .unwrap();
        let k3 = trivial_extension(&qs, 3);
        let ring = PseudoPolyRing::new(
            k3,
            vec!["x".into()],
            vec![MPoly::var(&q, 1, 0)],
        );
        let x = MPoly::var(&q, 1, 0);
        let gen = x.sub(&q, &MPoly::one(&q, 1));
        let tuple = ring.pseudo_prime_assemble_slot(0, &[gen.clone()]).unwrap();
        assert_eq!(tuple.slots.len(), 3);
        for slot in &tuple.slots {
            assert_eq!(slot, &vec![gen.clone()]);
        }
        assert!(ring.tuple_sigma_stable(&tuple).unwrap());
        assert_eq!(ring.groebner(&tuple), Err(IdealError::CoefficientNotField));
    }

    #[test]
    fn statement_a_stability() {
        // R = Q[t, td] with sigma(t) = t, sigma(td) = -td (d = 1 data):
        // (t - td^2) is sigma-stable
        let q = rationals();
        let sf = SigmaField::constant(q.clone());
        let t_img = MPoly::var(&q, 2, 0);
        let td_img = MPoly::var(&q, 2, 1).neg(&q);
        let ring = SigmaPolyRing::new(sf, vec!["t".into(), "t1".into()], vec![Some(t_img), Some(td_img)]);
        let t = ring.var(0);
        let td = ring.var(1);
        let gen = t.sub(&q, &td.pow(&q, 2));
        let ideal = SigmaIdeal::new(ring, vec![gen]);
        assert!(matches!(
            sigma_stability(&ideal, 1).unwrap(),
            Stability::Stable { reflexive: true }
        ));
        // t is never sigma^i-reduced into the ideal
        let r = ideal.ring().var(0);
        assert_eq!(notin_sigma(&r, &ideal, 6), NotinSigma::NotInUpTo(6));
    }
}
