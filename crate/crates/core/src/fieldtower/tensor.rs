//! Decomposition of `left (x)_base right` into field components.
//!
//! `left` must be a finite algebraic extension of the common base; the
//! components correspond to the irreducible factors of the minimal
//! polynomials of `left`'s generators over (extensions of) `right`,
//! processed step by step. Each component comes with embeddings of both
//! sides that agree on the base.

use super::morphism::fresh_name;
use super::upoly::UniPoly;
use super::{FieldError, FieldMorphism, FieldTower, Step, TowerElem};

/// One field component of a tensor product of field extensions.
#[derive(Debug, Clone)]
pub struct TensorComponent {
    pub tower: FieldTower,
    pub left_embedding: FieldMorphism,
    pub right_embedding: FieldMorphism,
    /// For each tower step adjoined on top of `right`, the index of the
    /// left generator whose minimal-polynomial factor created it.
    pub adjoined_left_steps: Vec<usize>,
}

/// Splits `left (x)_base right` into its field components.
pub fn tensor_decompose(
    left: &FieldTower,
    right: &FieldTower,
    base: &FieldTower,
) -> Result<Vec<TensorComponent>, FieldError> {
    if !left.has_prefix(base) || !right.has_prefix(base) {
        return Err(FieldError::IncompatibleTowers(
            "base must be a common prefix of both factors".to_string(),
        ));
    }
    for step in &left.steps()[base.level()..] {
        if let Step::Transcendental { name } = step {
            return Err(FieldError::NotFinite(format!(
                "left factor has a transcendental step `{name}` over the base"
            )));
        }
    }

    // state per partial component: tower, images (in it) of the processed
    // left generators, and the embedding of `right`
    struct Partial {
        tower: FieldTower,
        left_images: Vec<TowerElem>,
        adjoined: Vec<usize>,
    }
    let mut parts = vec![Partial {
        tower: right.clone(),
        left_images: (0..base.level()).map(|i| right.generator(i)).collect(),
        adjoined: Vec::new(),
    }];

    for (j, step) in left.steps().iter().enumerate().skip(base.level()) {
        let Step::Algebraic { name, minpoly } = step else { unreachable!() };
        let mut next = Vec::new();
        for part in parts {
            // map the minimal polynomial's coefficients into the component
            let prefix = left.prefix(j);
            let partial_m = FieldMorphism::new_unchecked(
                prefix.clone(),
                part.tower.clone(),
                part.left_images.clone(),
            );
            let mapped = UniPoly::new(&prefix, minpoly.clone()).map_coeffs(&partial_m)?;
            let fac = super::factor::factor_univariate(&part.tower, &mapped)?;
            for (h, mult) in &fac.factors {
                debug_assert_eq!(*mult, 1, "minimal polynomial must be separable");
                if h.degree() == Some(1) {
                    let root = part.tower.neg(&h.coeff(&part.tower, 0));
                    let mut imgs = part.left_images.clone();
                    imgs.push(root);
                    next.push(Partial {
                        tower: part.tower.clone(),
                        left_images: imgs,
                        adjoined: part.adjoined.clone(),
                    });
                } else {
                    let gname = fresh_name(&part.tower, name);
                    let ext = part.tower.extend_algebraic_unchecked(&gname, h);
                    let lift = FieldMorphism::inclusion(&part.tower, &ext)?;
                    let mut imgs = Vec::with_capacity(part.left_images.len() + 1);
                    for e in &part.left_images {
                        imgs.push(lift.apply(e)?);
                    }
                    imgs.push(ext.generator(ext.level() - 1));
                    let mut adjoined = part.adjoined.clone();
                    adjoined.push(j);
                    next.push(Partial { tower: ext, left_images: imgs, adjoined });
                }
            }
        }
        parts = next;
    }

    let mut out = Vec::with_capacity(parts.len());
    for part in parts {
        let left_embedding = FieldMorphism::make(left, &part.tower, part.left_images)?;
        let right_embedding = FieldMorphism::inclusion(right, &part.tower)?;
        out.push(TensorComponent {
            tower: part.tower,
            left_embedding,
            right_embedding,
            adjoined_left_steps: part.adjoined,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::{make_prime_field, rationals};
    use super::*;

    fn q_sqrt(n: i64, name: &str) -> FieldTower {
        let q = rationals();
        q.extend_algebraic(name, &UniPoly::from_i64(&q, &[-n, 0, 1])).unwrap()
    }

    #[test]
    fn sqrt2_tensor_sqrt2_splits() {
        let q = rationals();
        let k = q_sqrt(2, "r2");
        let comps = tensor_decompose(&k, &k, &q).unwrap();
        assert_eq!(comps.len(), 2);
        for c in &comps {
            // both components are Q(sqrt2) itself
            assert_eq!(c.tower, k);
            // embeddings commute with the base inclusion trivially and the
            // left embedding sends r2 to a square root of 2
            let img = c.left_embedding.apply(&k.generator(0)).unwrap();
            assert_eq!(c.tower.mul(&img, &img), c.tower.from_i64(2));
        }
        // degree bookkeeping: sum of [C : right] = [left : base]
        let total: usize =
            comps.iter().map(|c| c.tower.degree_over_prefix(k.level()).unwrap()).sum();
        assert_eq!(total, 2);
    }

    #[test]
    fn sqrt2_tensor_sqrt3_is_a_field() {
        let q = rationals();
        let k2 = q_sqrt(2, "r2");
        let k3 = q_sqrt(3, "r3");
        let comps = tensor_decompose(&k2, &k3, &q).unwrap();
        assert_eq!(comps.len(), 1);
        let c = &comps[0];
        assert_eq!(c.tower.absolute_degree(), Some(4));
        let img = c.left_embedding.apply(&k2.generator(0)).unwrap();
        assert_eq!(c.tower.mul(&img, &img), c.tower.from_i64(2));
    }

    #[test]
    fn f4_tensor_f4_two_components() {
        let f2 = make_prime_field(2).unwrap();
        let f4 = f2.extend_algebraic("g", &UniPoly::from_i64(&f2, &[1, 1, 1])).unwrap();
        let comps = tensor_decompose(&f4, &f4, &f2).unwrap();
        assert_eq!(comps.len(), 2);
        for c in &comps {
            assert_eq!(c.tower, f4);
        }
    }
}
