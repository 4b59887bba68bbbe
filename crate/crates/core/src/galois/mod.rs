//! Delta-sigma rings and the rank-one Picard-Vessiot application with a
//! difference parameter: commuting derivation/endomorphism pairs, PV ring
//! construction, D-matrices, bounded delta-constant extraction, the
//! minimal sigma-power isomorphism search, and constrained-extension
//! probes.

mod constrained;
mod pv;

pub use constrained::{
    constraint_search, pseudo_simple_probe, AlgebraPresentation, ConstraintVerdict,
    ConstraintWitness, ProbeResult, TuplePresentation,
};
pub use pv::{
    delta_constants, dmatrix, pv_construct, sigma_l_isomorphism_search, ConstantsReport,
    DMatrixReport, PVKind, PVRing, SigmaChoice, SigmaLResult,
};

use thiserror::Error;

use crate::fieldtower::{FieldError, FieldMorphism, FieldTower, SigmaField, Step, TowerElem};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GaloisError {
    #[error("delta and sigma do not commute at generator `{0}`")]
    CommutationFails(String),
    #[error("delta images do not define a derivation at generator `{0}`")]
    DerivationNotWellDefined(String),
    #[error("no consistent sigma structure: {0}")]
    NoSigmaStructure(String),
    #[error("outside the rank-one scope: {0}")]
    OutOfScope(String),
    #[error("base delta-sigma fields differ")]
    BaseMismatch,
    #[error("sample is linearly dependent over the constants")]
    SampleDependent,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A field tower with a commuting derivation/endomorphism pair, the
/// derivation given by one image per generator (zero on the prime field).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaSigmaField {
    field: SigmaField,
    delta_images: Vec<TowerElem>,
}

/// Validates a delta-sigma field: each algebraic generator's delta value
/// is forced by the minimal polynomial, and delta must commute with sigma
/// on every generator (hence everywhere).
pub fn make_deltasigma_field(
    tower: FieldTower,
    delta_images: Vec<TowerElem>,
    sigma: FieldMorphism,
) -> Result<DeltaSigmaField, GaloisError> {
    if tower.characteristic() != 0 {
        return Err(GaloisError::OutOfScope("characteristic zero only".to_string()));
    }
    assert_eq!(delta_images.len(), tower.level(), "one delta image per generator");
    let field = SigmaField::new(tower.clone(), sigma).map_err(GaloisError::Field)?;
    let k = DeltaSigmaField { field, delta_images };
    // algebraic steps force delta(g) = -m^delta(g) / m'(g)
    for (i, step) in tower.steps().iter().enumerate() {
        if let Step::Algebraic { name, minpoly, .. } = step {
            let g = tower.generator(i);
            let mut m_delta = tower.zero(); // sum delta(c_j) g^j
            let mut m_prime = tower.zero(); // sum j c_j g^{j-1}
            for (j, c) in minpoly.iter().enumerate() {
                let c_top = tower.lift_from(i, c.clone());
                let dc = k.delta_at(i, c)?;
                m_delta = tower.add(&m_delta, &tower.mul(&dc, &tower.pow(&g, j as u64)));
                if j >= 1 {
                    let jj = tower.from_i64(j as i64);
                    let gj = tower.pow(&g, (j - 1) as u64);
                    m_prime = tower.add(&m_prime, &tower.mul(&jj, &tower.mul(&c_top, &gj)));
                }
            }
            let forced = tower
                .div(&tower.neg(&m_delta), &m_prime)
                .map_err(|_| GaloisError::DerivationNotWellDefined(name.clone()))?;
            if forced != k.delta_images[i] {
                return Err(GaloisError::DerivationNotWellDefined(name.clone()));
            }
        }
    }
    // commutation on generators
    for (i, step) in tower.steps().iter().enumerate() {
        let g = tower.generator(i);
        let ds = k.delta(&k.field.apply_sigma(&g)?)?;
        let sd = k.field.apply_sigma(&k.delta(&g)?)?;
        if ds != sd {
            return Err(GaloisError::CommutationFails(step.name().to_string()));
        }
    }
    Ok(k)
}

impl DeltaSigmaField {
    pub fn tower(&self) -> &FieldTower {
        self.field.tower()
    }

    pub fn sigma_field(&self) -> &SigmaField {
        &self.field
    }

    pub fn sigma(&self, e: &TowerElem) -> Result<TowerElem, GaloisError> {
        Ok(self.field.apply_sigma(e)?)
    }

    pub fn delta_images(&self) -> &[TowerElem] {
        &self.delta_images
    }

    /// Applies the derivation (Leibniz through the tower structure).
    pub fn delta(&self, e: &TowerElem) -> Result<TowerElem, GaloisError> {
        self.delta_at(self.tower().level(), e)
    }

    /// Delta of an element represented at `lvl`, as a top-level element.
    fn delta_at(&self, lvl: usize, e: &TowerElem) -> Result<TowerElem, GaloisError> {
        let t = self.tower();
        match e {
            TowerElem::Rat(_) | TowerElem::Fp(_) => Ok(t.zero()),
            TowerElem::Alg(coords) => self.delta_poly_part(lvl, coords),
            TowerElem::Frac(num, den) => {
                // (N/D)' = (N' D - N D') / D^2
                let n = self.lift_poly(lvl, num);
                let d = self.lift_poly(lvl, den);
                let dn = self.delta_poly_part(lvl, num)?;
                let dd = self.delta_poly_part(lvl, den)?;
                let top = t.sub(&t.mul(&dn, &d), &t.mul(&n, &dd));
                Ok(t.div(&top, &t.mul(&d, &d)).expect("nonzero denominator"))
            }
        }
    }

    /// Delta of `sum coords[j] * g^j` where `g` is the level generator.
    fn delta_poly_part(
        &self,
        lvl: usize,
        coords: &[TowerElem],
    ) -> Result<TowerElem, GaloisError> {
        let t = self.tower();
        let g = t.generator(lvl - 1);
        // delta images are stored as top-level elements
        let dg = self.delta_images[lvl - 1].clone();
        let mut acc = t.zero();
        for (j, c) in coords.iter().enumerate() {
            let c_top = t.lift_from(lvl - 1, c.clone());
            let dc = self.delta_at(lvl - 1, c)?;
            let gj = t.pow(&g, j as u64);
            acc = t.add(&acc, &t.mul(&dc, &gj));
            if j >= 1 {
                let jj = t.from_i64(j as i64);
                let gj1 = t.pow(&g, (j - 1) as u64);
                let term = t.mul(&jj, &t.mul(&c_top, &t.mul(&gj1, &dg)));
                acc = t.add(&acc, &term);
            }
        }
        Ok(acc)
    }

    fn lift_poly(&self, lvl: usize, coords: &[TowerElem]) -> TowerElem {
        let t = self.tower();
        let g = t.generator(lvl - 1);
        let mut acc = t.zero();
        for (j, c) in coords.iter().enumerate() {
            let c_top = t.lift_from(lvl - 1, c.clone());
            acc = t.add(&acc, &t.mul(&c_top, &t.pow(&g, j as u64)));
        }
        acc
    }

    pub fn is_delta_constant(&self, e: &TowerElem) -> Result<bool, GaloisError> {
        Ok(self.tower().is_zero(&self.delta(e)?))
    }
}

/// Outcome of the sigma-separability check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparabilityResult {
    Pass,
    /// The image of the sample became dependent; carries a description of
    /// a vanishing combination witness (the rank drop).
    Fail(String),
}

/// Checks that sigma preserves linear independence over the constants for
/// a finite sample: exact rank computation before and after applying
/// sigma. The sample must be independent to begin with.
pub fn sigma_separability_witness(
    k: &SigmaField,
    constants_prefix: usize,
    sample: &[TowerElem],
) -> Result<SeparabilityResult, GaloisError> {
    let rows = coordinate_rows(k.tower(), constants_prefix, sample)?;
    let c = k.tower().prefix(constants_prefix);
    let r0 = rank_over(&c, rows);
    if r0 < sample.len() {
        return Err(GaloisError::SampleDependent);
    }
    let mut image = Vec::with_capacity(sample.len());
    for e in sample {
        image.push(k.apply_sigma(e)?);
    }
    let rows = coordinate_rows(k.tower(), constants_prefix, &image)?;
    let r1 = rank_over(&c, rows);
    if r1 == sample.len() {
        Ok(SeparabilityResult::Pass)
    } else {
        Ok(SeparabilityResult::Fail(format!(
            "sigma image has rank {r1} < {}",
            sample.len()
        )))
    }
}

/// Writes each sample element as a coordinate row over the constants
/// prefix, after clearing the common denominator at each transcendental
/// level (multiplying the whole sample by a common nonzero element
/// preserves independence).
fn coordinate_rows(
    tower: &FieldTower,
    prefix: usize,
    sample: &[TowerElem],
) -> Result<Vec<std::collections::BTreeMap<Vec<u32>, TowerElem>>, GaloisError> {
    // clear the common denominator at the top level; nested denominators
    // are out of scope and will be reported by `flatten`
    let mut cleared: Vec<TowerElem> = sample.to_vec();
    let mut common: Option<TowerElem> = None;
    for e in &cleared {
        if let TowerElem::Frac(_, den) = e {
            if den.len() > 1 {
                let below_one = tower.prefix(tower.level() - 1).one();
                let d = TowerElem::Frac(den.clone(), vec![below_one]);
                common = Some(match common {
                    None => d,
                    Some(c) => tower.mul(&c, &d),
                });
            }
        }
    }
    if let Some(c) = common {
        cleared = cleared.iter().map(|e| tower.mul(e, &c)).collect();
    }
    let mut rows = Vec::with_capacity(cleared.len());
    for e in &cleared {
        let mut row = std::collections::BTreeMap::new();
        flatten(tower, prefix, tower.level(), e, &mut Vec::new(), &mut row)?;
        rows.push(row);
    }
    Ok(rows)
}

fn flatten(
    tower: &FieldTower,
    prefix: usize,
    lvl: usize,
    e: &TowerElem,
    key: &mut Vec<u32>,
    row: &mut std::collections::BTreeMap<Vec<u32>, TowerElem>,
) -> Result<(), GaloisError> {
    if lvl == prefix {
        let c = tower.prefix(prefix);
        let mut full_key = key.clone();
        full_key.reverse();
        if !c.is_zero(e) {
            row.insert(full_key, e.clone());
        }
        return Ok(());
    }
    match e {
        TowerElem::Frac(num, den) => {
            let below = tower.prefix(lvl - 1);
            if !(den.len() == 1 && below.is_one(&den[0])) {
                return Err(GaloisError::OutOfScope(
                    "sample has a nested denominator after clearing".to_string(),
                ));
            }
            for (i, c) in num.iter().enumerate() {
                key.push(i as u32);
                flatten(tower, prefix, lvl - 1, c, key, row)?;
                key.pop();
            }
            Ok(())
        }
        TowerElem::Alg(coords) => {
            for (i, c) in coords.iter().enumerate() {
                key.push(i as u32);
                flatten(tower, prefix, lvl - 1, c, key, row)?;
                key.pop();
            }
            Ok(())
        }
        _ => unreachable!("canonical elements above level 0 are Frac or Alg"),
    }
}

/// Rank of a set of sparse rows over an exact field.
pub(crate) fn rank_over(
    c: &FieldTower,
    rows: Vec<std::collections::BTreeMap<Vec<u32>, TowerElem>>,
) -> usize {
    // collect the column set
    let mut cols: Vec<Vec<u32>> = rows.iter().flat_map(|r| r.keys().cloned()).collect();
    cols.sort();
    cols.dedup();
    let mut mat: Vec<Vec<TowerElem>> = rows
        .iter()
        .map(|r| cols.iter().map(|k| r.get(k).cloned().unwrap_or_else(|| c.zero())).collect())
        .collect();
    let mut rank = 0usize;
    let ncols = cols.len();
    for col in 0..ncols {
        let pivot = (rank..mat.len()).find(|&r| !c.is_zero(&mat[r][col]));
        let Some(p) = pivot else { continue };
        mat.swap(rank, p);
        let inv = c.inv(&mat[rank][col]).expect("pivot nonzero");
        for cc in col..ncols {
            mat[rank][cc] = c.mul(&mat[rank][cc], &inv);
        }
        for r in 0..mat.len() {
            if r != rank && !c.is_zero(&mat[r][col]) {
                let f = mat[r][col].clone();
                for cc in col..ncols {
                    let sub = c.mul(&f, &mat[rank][cc]);
                    mat[r][cc] = c.sub(&mat[r][cc], &sub);
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldtower::{rationals, UniPoly};

    /// k = Q(sqrt2)(x) with delta = x d/dx and sigma(x) = 2x.
    pub(crate) fn pv_base() -> DeltaSigmaField {
        let q = rationals();
        let k2 = q.extend_algebraic("r2", &UniPoly::from_i64(&q, &[-2, 0, 1])).unwrap();
        let k = k2.extend_transcendental("x").unwrap();
        let x = k.generator(1);
        let r2 = k.generator(0);
        let sigma =
            FieldMorphism::make(&k, &k, vec![r2.clone(), k.mul(&k.from_i64(2), &x)]).unwrap();
        make_deltasigma_field(k.clone(), vec![k.zero(), x], sigma).unwrap()
    }

    #[test]
    fn commuting_pair_accepted() {
        let k = pv_base();
        let t = k.tower().clone();
        let x = t.generator(1);
        // delta(x^2) = 2 x^2
        let d = k.delta(&t.mul(&x, &x)).unwrap();
        assert_eq!(d, t.mul(&t.from_i64(2), &t.mul(&x, &x)));
        // delta(1/x) = -1/x
        let invx = t.inv(&x).unwrap();
        assert_eq!(k.delta(&invx).unwrap(), t.neg(&invx));
        // delta sigma (x) = sigma delta (x) = 2x
        let ds = k.delta(&k.sigma(&x).unwrap()).unwrap();
        let sd = k.sigma(&k.delta(&x).unwrap()).unwrap();
        assert_eq!(ds, sd);
    }

    #[test]
    fn shift_does_not_commute() {
        // sigma(x) = x + 1 with delta = x d/dx fails commutation
        let q = rationals();
        let k = q.extend_transcendental("x").unwrap();
        let x = k.generator(0);
        let sigma = FieldMorphism::make(&k, &k, vec![k.add(&x, &k.one())]).unwrap();
        let res = make_deltasigma_field(k.clone(), vec![x.clone()], sigma);
        assert_eq!(res, Err(GaloisError::CommutationFails("x".into())));
    }

    #[test]
    fn zero_derivation_always_valid() {
        let q = rationals();
        let k = q.extend_transcendental("x").unwrap();
        let x = k.generator(0);
        let sigma = FieldMorphism::make(&k, &k, vec![k.mul(&k.from_i64(3), &x)]).unwrap();
        let ds = make_deltasigma_field(k.clone(), vec![k.zero()], sigma).unwrap();
        assert!(ds.is_delta_constant(&x).unwrap());
    }

    #[test]
    fn algebraic_delta_forced() {
        // on Q(sqrt2), delta(sqrt2) is forced to 0; a nonzero image is
        // rejected
        let q = rationals();
        let k2 = q.extend_algebraic("r2", &UniPoly::from_i64(&q, &[-2, 0, 1])).unwrap();
        let sigma = FieldMorphism::identity(&k2);
        assert!(make_deltasigma_field(k2.clone(), vec![k2.zero()], sigma.clone()).is_ok());
        let bad = make_deltasigma_field(k2.clone(), vec![k2.one()], sigma);
        assert_eq!(bad, Err(GaloisError::DerivationNotWellDefined("r2".into())));
    }

    #[test]
    fn separability_witness() {
        let k = pv_base();
        let t = k.tower().clone();
        let x = t.generator(1);
        let sample = vec![t.one(), x.clone(), t.mul(&x, &x)];
        let res =
            sigma_separability_witness(k.sigma_field(), 1, &sample).unwrap();
        assert_eq!(res, SeparabilityResult::Pass);
        // degenerate sigma(x) = 0 collapses {1, x}
        let q = rationals();
        let kx = q.extend_transcendental("x").unwrap();
        let zero_sigma = FieldMorphism::make(&kx, &kx, vec![kx.zero()]).unwrap();
        let sf = SigmaField::new(kx.clone(), zero_sigma).unwrap();
        let x = kx.generator(0);
        let res = sigma_separability_witness(&sf, 0, &[kx.one(), x.clone()]).unwrap();
        assert!(matches!(res, SeparabilityResult::Fail(_)));
        // dependent sample rejected
        let id = SigmaField::constant(kx.clone());
        let two_x = kx.mul(&kx.from_i64(2), &x);
        assert_eq!(
            sigma_separability_witness(&id, 0, &[x, two_x]),
            Err(GaloisError::SampleDependent)
        );
    }
}
