//! Exact arithmetic in computable fields presented as towers of simple
//! extensions over `Q` or `F_p`, plus verified morphisms between them.
//!
//! A [`FieldTower`] is a list of extension steps over a prime field. Each
//! step adjoins either an algebraic generator (with a monic minimal
//! polynomial over the tower below, checked irreducible within the declared
//! factorization scope) or a transcendental generator (rational functions).
//! Elements carry canonical coordinates, so equality is syntactic.

mod elem;
mod factor;
mod morphism;
mod sqrt;
mod tensor;
mod upoly;

pub use elem::TowerElem;
pub use factor::{factor_univariate, to_rational, Factorization};
pub use morphism::{make_morphism, FieldMorphism, SigmaField};
pub use sqrt::sqrt_in_tower;
pub use tensor::{tensor_decompose, TensorComponent};
pub use upoly::UniPoly;

use num_rational::BigRational;
use thiserror::Error;

/// Errors produced by field-tower construction and arithmetic.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is neither 0 nor prime")]
    NonPrimeCharacteristic(u64),
    #[error("polynomial is reducible: {0}")]
    ReduciblePolynomial(String),
    #[error("factorization outside supported scope: {0}")]
    UnsupportedFactorization(String),
    #[error("generator name `{0}` already used in tower")]
    DuplicateGenerator(String),
    #[error("morphism not well defined at generator `{0}`")]
    NotWellDefined(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("minimal polynomial must be monic of degree >= 2")]
    BadMinimalPolynomial,
    #[error("left factor is not a finite algebraic extension of the base: {0}")]
    NotFinite(String),
    #[error("incompatible towers: {0}")]
    IncompatibleTowers(String),
    #[error("morphism undefined at element (denominator maps to zero)")]
    UndefinedAt,
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
}

/// One extension step of a tower.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    /// Algebraic generator with a monic minimal polynomial over the tower
    /// below it. Coefficients live at the level below; the vector has
    /// length `deg + 1` with leading coefficient one.
    Algebraic { name: String, minpoly: Vec<TowerElem> },
    /// Transcendental generator; elements above it are reduced fractions
    /// with monic denominators.
    Transcendental { name: String },
}

impl Step {
    pub fn name(&self) -> &str {
        match self {
            Step::Algebraic { name, .. } => name,
            Step::Transcendental { name } => name,
        }
    }

    /// Degree of the step: `deg` of the minimal polynomial, or `None` for a
    /// transcendental step.
    pub fn degree(&self) -> Option<usize> {
        match self {
            Step::Algebraic { minpoly, .. } => Some(minpoly.len() - 1),
            Step::Transcendental { .. } => None,
        }
    }
}

/// An exact computable field: a tower of simple extensions over `Q` or `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldTower {
    characteristic: u64,
    steps: Vec<Step>,
}

/// Creates the prime field `Q` (characteristic 0) or `F_p`.
pub fn make_prime_field(characteristic: u64) -> Result<FieldTower, FieldError> {
    if characteristic != 0 && !is_prime_u64(characteristic) {
        return Err(FieldError::NonPrimeCharacteristic(characteristic));
    }
    Ok(FieldTower { characteristic, steps: Vec::new() })
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldTower {
    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Number of extension steps; elements of this tower live at this level.
    pub fn level(&self) -> usize {
        self.steps.len()
    }

    pub fn generator_names(&self) -> Vec<&str> {
        self.steps.iter().map(|s| s.name()).collect()
    }

    fn name_used(&self, name: &str) -> bool {
        self.steps.iter().any(|s| s.name() == name)
    }

    /// The subtower consisting of the first `n` steps.
    pub fn prefix(&self, n: usize) -> FieldTower {
        FieldTower { characteristic: self.characteristic, steps: self.steps[..n].to_vec() }
    }

    /// True when `other` is an initial segment of this tower.
    pub fn has_prefix(&self, other: &FieldTower) -> bool {
        self.characteristic == other.characteristic
            && self.steps.len() >= other.steps.len()
            && self.steps[..other.steps.len()] == other.steps[..]
    }

    /// Absolute degree over the prime field, or `None` when a
    /// transcendental step makes the tower infinite-dimensional.
    pub fn absolute_degree(&self) -> Option<usize> {
        let mut d = 1usize;
        for s in &self.steps {
            d *= s.degree()?;
        }
        Some(d)
    }

    /// Degree over the prefix of length `n`.
    pub fn degree_over_prefix(&self, n: usize) -> Option<usize> {
        let mut d = 1usize;
        for s in &self.steps[n..] {
            d *= s.degree()?;
        }
        Some(d)
    }

    pub fn is_finite_field(&self) -> bool {
        self.characteristic != 0 && self.steps.iter().all(|s| s.degree().is_some())
    }

    /// Adjoins an algebraic generator with the given monic minimal
    /// polynomial (coefficients are elements of this tower). Irreducibility
    /// is verified within factorization scope.
    pub fn extend_algebraic(
        &self,
        name: &str,
        minpoly: &UniPoly,
    ) -> Result<FieldTower, FieldError> {
        if self.name_used(name) {
            return Err(FieldError::DuplicateGenerator(name.to_string()));
        }
        let deg = match minpoly.degree() {
            Some(d) if d >= 2 => d,
            _ => return Err(FieldError::BadMinimalPolynomial),
        };
        if !self.is_one(minpoly.leading_coefficient().unwrap()) {
            return Err(FieldError::BadMinimalPolynomial);
        }
        let fac = factor_univariate(self, minpoly)?;
        if fac.factors.len() != 1 || fac.factors[0].1 != 1 {
            return Err(FieldError::ReduciblePolynomial(self.render_poly(minpoly, "y")));
        }
        let mut steps = self.steps.clone();
        steps.push(Step::Algebraic { name: name.to_string(), minpoly: minpoly.coeffs().to_vec() });
        let _ = deg;
        Ok(FieldTower { characteristic: self.characteristic, steps })
    }

    /// Adjoins an algebraic generator without checking irreducibility.
    /// Callers must have certified it by other means (e.g. a factor taken
    /// from `factor_univariate` output).
    pub fn extend_algebraic_unchecked(&self, name: &str, minpoly: &UniPoly) -> FieldTower {
        let mut steps = self.steps.clone();
        steps.push(Step::Algebraic { name: name.to_string(), minpoly: minpoly.coeffs().to_vec() });
        FieldTower { characteristic: self.characteristic, steps }
    }

    /// Adjoins a transcendental generator; the new tower is the field of
    /// rational functions in it.
    pub fn extend_transcendental(&self, name: &str) -> Result<FieldTower, FieldError> {
        if self.name_used(name) {
            return Err(FieldError::DuplicateGenerator(name.to_string()));
        }
        let mut steps = self.steps.clone();
        steps.push(Step::Transcendental { name: name.to_string() });
        Ok(FieldTower { characteristic: self.characteristic, steps })
    }
}

/// Convenience: the rationals.
pub fn rationals() -> FieldTower {
    make_prime_field(0).expect("0 is a valid characteristic")
}

/// Convenience: an exact rational from a pair of integers.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_construction() {
        assert!(make_prime_field(0).is_ok());
        assert!(make_prime_field(5).is_ok());
        assert_eq!(make_prime_field(4), Err(FieldError::NonPrimeCharacteristic(4)));
        assert_eq!(make_prime_field(1), Err(FieldError::NonPrimeCharacteristic(1)));
    }

    #[test]
    fn duplicate_generator_rejected() {
        let q = rationals();
        let qx = q.extend_transcendental("x").unwrap();
        assert_eq!(
            qx.extend_transcendental("x"),
            Err(FieldError::DuplicateGenerator("x".into()))
        );
    }
}
