//! Verified field morphisms between towers, and fields carrying a
//! distinguished endomorphism.

use super::elem::TowerElem;
use super::{FieldError, FieldTower, Step};

/// A morphism between field towers, given by one target element per source
/// generator. Construction verifies that every algebraic generator's
/// minimal polynomial vanishes at its image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMorphism {
    source: FieldTower,
    target: FieldTower,
    images: Vec<TowerElem>,
}

impl FieldMorphism {
    /// Builds and verifies a morphism.
    pub fn make(
        source: &FieldTower,
        target: &FieldTower,
        images: Vec<TowerElem>,
    ) -> Result<FieldMorphism, FieldError> {
        if source.characteristic() != target.characteristic() {
            return Err(FieldError::IncompatibleTowers(
                "characteristics differ".to_string(),
            ));
        }
        if images.len() != source.level() {
            return Err(FieldError::IncompatibleTowers(format!(
                "expected {} generator images, got {}",
                source.level(),
                images.len()
            )));
        }
        let m = FieldMorphism { source: source.clone(), target: target.clone(), images };
        for (i, step) in source.steps().iter().enumerate() {
            if let Step::Algebraic { name, minpoly } = step {
                // map the minimal polynomial's coefficients (they live at
                // level i, already verified) and evaluate at the image
                let mut value = m.target.zero();
                for c in minpoly.iter().rev() {
                    let mc = m
                        .apply_at(i, c)
                        .map_err(|_| FieldError::NotWellDefined(name.clone()))?;
                    value = m.target.add(&m.target.mul(&value, &m.images[i]), &mc);
                }
                if !m.target.is_zero(&value) {
                    return Err(FieldError::NotWellDefined(name.clone()));
                }
            }
        }
        Ok(m)
    }

    /// Builds a morphism without running the minimal-polynomial checks.
    /// For internal use where the images are verified by construction.
    pub(crate) fn new_unchecked(
        source: FieldTower,
        target: FieldTower,
        images: Vec<TowerElem>,
    ) -> FieldMorphism {
        FieldMorphism { source, target, images }
    }

    pub fn identity(t: &FieldTower) -> FieldMorphism {
        let images = (0..t.level()).map(|i| t.generator(i)).collect();
        FieldMorphism { source: t.clone(), target: t.clone(), images }
    }

    /// The inclusion of a prefix subtower into a larger tower.
    pub fn inclusion(sub: &FieldTower, sup: &FieldTower) -> Result<FieldMorphism, FieldError> {
        if !sup.has_prefix(sub) {
            return Err(FieldError::IncompatibleTowers(
                "inclusion source is not a prefix of the target".to_string(),
            ));
        }
        let images = (0..sub.level()).map(|i| sup.generator(i)).collect();
        Ok(FieldMorphism { source: sub.clone(), target: sup.clone(), images })
    }

    pub fn source(&self) -> &FieldTower {
        &self.source
    }

    pub fn target(&self) -> &FieldTower {
        &self.target
    }

    pub fn images(&self) -> &[TowerElem] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self.images.iter().enumerate().all(|(i, e)| *e == self.source.generator(i))
    }

    /// Applies the morphism to a source element.
    pub fn apply(&self, e: &TowerElem) -> Result<TowerElem, FieldError> {
        self.apply_at(self.source.level(), e)
    }

    fn apply_at(&self, lvl: usize, e: &TowerElem) -> Result<TowerElem, FieldError> {
        match e {
            TowerElem::Rat(r) => Ok(self.target.from_rat(r.clone())),
            TowerElem::Fp(v) => Ok(self.target.from_i64(*v as i64)),
            TowerElem::Alg(coords) => {
                let img = &self.images[lvl - 1];
                let mut acc = self.target.zero();
                for c in coords.iter().rev() {
                    let mc = self.apply_at(lvl - 1, c)?;
                    acc = self.target.add(&self.target.mul(&acc, img), &mc);
                }
                Ok(acc)
            }
            TowerElem::Frac(num, den) => {
                let img = &self.images[lvl - 1];
                let horner = |coeffs: &[TowerElem]| -> Result<TowerElem, FieldError> {
                    let mut acc = self.target.zero();
                    for c in coeffs.iter().rev() {
                        let mc = self.apply_at(lvl - 1, c)?;
                        acc = self.target.add(&self.target.mul(&acc, img), &mc);
                    }
                    Ok(acc)
                };
                let n = horner(num)?;
                let d = horner(den)?;
                self.target.div(&n, &d).map_err(|_| FieldError::UndefinedAt)
            }
        }
    }

    /// Composition `g . self` (apply `self` first, then `g`).
    pub fn then(&self, g: &FieldMorphism) -> Result<FieldMorphism, FieldError> {
        if self.target != g.source {
            return Err(FieldError::IncompatibleTowers(
                "composition endpoint mismatch".to_string(),
            ));
        }
        let mut images = Vec::with_capacity(self.images.len());
        for img in &self.images {
            images.push(g.apply(img)?);
        }
        Ok(FieldMorphism { source: self.source.clone(), target: g.target.clone(), images })
    }

    /// For an endomorphism of finite order, finds the inverse by scanning
    /// powers until the identity appears.
    pub fn inverse_by_order(&self, max_order: usize) -> Option<FieldMorphism> {
        if self.source != self.target {
            return None;
        }
        if self.is_identity() {
            return Some(self.clone());
        }
        let mut prev = self.clone();
        for _ in 1..max_order {
            let next = prev.then(self).ok()?;
            if next.is_identity() {
                return Some(prev);
            }
            prev = next;
        }
        None
    }

    /// `self` composed with itself `k` times (`k = 0` gives the identity).
    pub fn power(&self, k: usize) -> Result<FieldMorphism, FieldError> {
        assert_eq!(self.source, self.target, "power of a non-endomorphism");
        let mut acc = FieldMorphism::identity(&self.source);
        for _ in 0..k {
            acc = acc.then(self)?;
        }
        Ok(acc)
    }
}

/// A field tower together with a distinguished endomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaField {
    tower: FieldTower,
    sigma: FieldMorphism,
}

impl SigmaField {
    pub fn new(tower: FieldTower, sigma: FieldMorphism) -> Result<SigmaField, FieldError> {
        if sigma.source() != &tower || sigma.target() != &tower {
            return Err(FieldError::IncompatibleTowers(
                "sigma must be an endomorphism of the tower".to_string(),
            ));
        }
        Ok(SigmaField { tower, sigma })
    }

    /// The constant sigma-field: sigma is the identity.
    pub fn constant(tower: FieldTower) -> SigmaField {
        let sigma = FieldMorphism::identity(&tower);
        SigmaField { tower, sigma }
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn sigma(&self) -> &FieldMorphism {
        &self.sigma
    }

    pub fn apply_sigma(&self, e: &TowerElem) -> Result<TowerElem, FieldError> {
        self.sigma.apply(e)
    }

    pub fn apply_sigma_power(&self, e: &TowerElem, k: usize) -> Result<TowerElem, FieldError> {
        let mut cur = e.clone();
        for _ in 0..k {
            cur = self.sigma.apply(&cur)?;
        }
        Ok(cur)
    }
}

/// Verified morphism construction; the spec-level entry point.
pub fn make_morphism(
    source: &FieldTower,
    target: &FieldTower,
    images: Vec<TowerElem>,
) -> Result<FieldMorphism, FieldError> {
    FieldMorphism::make(source, target, images)
}

/// A generator name not yet used in the tower, derived from `base`.
pub(crate) fn fresh_name(t: &FieldTower, base: &str) -> String {
    if !t.generator_names().contains(&base) {
        return base.to_string();
    }
    let mut k = 1usize;
    loop {
        let cand = format!("{base}_{k}");
        if !t.generator_names().iter().any(|n| *n == cand) {
            return cand;
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::super::{make_prime_field, rationals, UniPoly};
    use super::*;

    fn q_sqrt2() -> FieldTower {
        let q = rationals();
        q.extend_algebraic("r2", &UniPoly::from_i64(&q, &[-2, 0, 1])).unwrap()
    }

    #[test]
    fn conjugation_is_a_morphism() {
        let k = q_sqrt2();
        let r2 = k.generator(0);
        let conj = FieldMorphism::make(&k, &k, vec![k.neg(&r2)]).unwrap();
        // conj(conj(x)) = x
        let twice = conj.then(&conj).unwrap();
        assert!(twice.is_identity());
        // conj(1 + r2) = 1 - r2
        let v = k.add(&k.one(), &r2);
        assert_eq!(conj.apply(&v).unwrap(), k.sub(&k.one(), &r2));
        assert_eq!(conj.inverse_by_order(8).unwrap(), conj);
    }

    #[test]
    fn bad_image_rejected() {
        let k = q_sqrt2();
        // r2 -> 1 does not satisfy y^2 - 2
        assert_eq!(
            FieldMorphism::make(&k, &k, vec![k.one()]),
            Err(FieldError::NotWellDefined("r2".into()))
        );
    }

    #[test]
    fn frobenius_on_f4() {
        let f2 = make_prime_field(2).unwrap();
        let f4 = f2.extend_algebraic("g", &UniPoly::from_i64(&f2, &[1, 1, 1])).unwrap();
        let g = f4.generator(0);
        let frob = FieldMorphism::make(&f4, &f4, vec![f4.mul(&g, &g)]).unwrap();
        assert!(!frob.is_identity());
        assert!(frob.then(&frob).unwrap().is_identity());
        // g -> 1 is not a morphism
        assert!(FieldMorphism::make(&f4, &f4, vec![f4.one()]).is_err());
    }

    #[test]
    fn transcendental_images() {
        let q = rationals();
        let qx = q.extend_transcendental("x").unwrap();
        let x = qx.generator(0);
        let double = FieldMorphism::make(&qx, &qx, vec![qx.mul(&qx.from_i64(2), &x)]).unwrap();
        // (x+1)/(x-1) maps to (2x+1)/(2x-1)
        let v = qx
            .div(&qx.add(&x, &qx.one()), &qx.sub(&x, &qx.one()))
            .unwrap();
        let img = double.apply(&v).unwrap();
        let expect = qx
            .div(
                &qx.add(&qx.mul(&qx.from_i64(2), &x), &qx.one()),
                &qx.sub(&qx.mul(&qx.from_i64(2), &x), &qx.one()),
            )
            .unwrap();
        assert_eq!(img, expect);
        // sigma(x) = 1 is undefined at 1/(x-1)
        let bad = FieldMorphism::make(&qx, &qx, vec![qx.one()]).unwrap();
        let w = qx.inv(&qx.sub(&x, &qx.one())).unwrap();
        assert_eq!(bad.apply(&w), Err(FieldError::UndefinedAt));
    }
}
