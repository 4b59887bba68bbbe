//! Rank-one Picard-Vessiot rings with a sigma-parameter: construction for
//! `delta(y) = a*y`, D-matrices with the symbolic `delta(D) = 0`
//! certificate, bounded delta-constant extraction, and the minimal
//! sigma-power isomorphism search.

use crate::fieldtower::{to_rational, FieldMorphism, FieldTower, TowerElem};

use super::{make_deltasigma_field, DeltaSigmaField, GaloisError};

/// Shape of the rank-one solution generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PVKind {
    /// The solution already lies in the base field.
    InBase,
    /// `y^2 = w` for a non-square `w` in the base.
    AlgebraicSqrt,
    /// `y` transcendental over the base.
    Transcendental,
}

/// Choice of the sigma-structure on the solution generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SigmaChoice {
    Plus,
    Minus,
    Explicit(TowerElem),
}

/// A rank-one Picard-Vessiot ring for `delta(y) = a*y`, presented as a
/// field extension of the base with a verified delta-sigma structure.
#[derive(Debug, Clone)]
pub struct PVRing {
    base: DeltaSigmaField,
    a: TowerElem,
    kind: PVKind,
    ring: DeltaSigmaField,
    /// The solution generator inside the presentation.
    y: TowerElem,
    /// `sigma(y) = c * y`; `c` lives in the base field.
    sigma_factor: TowerElem,
    /// `y^2 = w` in the algebraic case (`w` in the base field).
    w: Option<TowerElem>,
}

impl PVRing {
    pub fn base(&self) -> &DeltaSigmaField {
        &self.base
    }

    pub fn rate(&self) -> &TowerElem {
        &self.a
    }

    pub fn kind(&self) -> PVKind {
        self.kind
    }

    pub fn ring(&self) -> &DeltaSigmaField {
        &self.ring
    }

    pub fn y(&self) -> &TowerElem {
        &self.y
    }

    /// The base-field element `c` with `sigma(y) = c*y`.
    pub fn sigma_factor(&self) -> &TowerElem {
        &self.sigma_factor
    }

    pub fn w(&self) -> Option<&TowerElem> {
        self.w.as_ref()
    }
}

/// The distinguished solution generator: the unique tower generator with
/// `delta(x) = x`.
fn solution_generator(k: &DeltaSigmaField) -> Result<usize, GaloisError> {
    let t = k.tower();
    let mut found = None;
    for i in 0..t.level() {
        if k.delta_images()[i] == t.generator(i) {
            if found.is_some() {
                return Err(GaloisError::OutOfScope(
                    "several generators satisfy delta(x) = x".to_string(),
                ));
            }
            found = Some(i);
        }
    }
    found.ok_or_else(|| {
        GaloisError::OutOfScope("no generator with delta(x) = x in the base".to_string())
    })
}

/// Constructs the rank-one PV ring for `delta(y) = a*y` with the chosen
/// sigma-structure. Scope: `a` a delta-constant; solutions algebraic of
/// degree <= 2 (when `2a` is an integer) or transcendental (when `a` is
/// irrational); delta-simplicity certified structurally (the presentation
/// is a field) or by excluding monomial solutions of `delta(e) = m*a*e`.
pub fn pv_construct(
    k: &DeltaSigmaField,
    a: &TowerElem,
    choice: SigmaChoice,
) -> Result<PVRing, GaloisError> {
    let t = k.tower().clone();
    if !k.is_delta_constant(a)? {
        return Err(GaloisError::OutOfScope("rate must be a delta-constant".to_string()));
    }
    if t.is_zero(a) {
        let c = t.one();
        validate_forced_choice(&t, &choice, &c)?;
        return Ok(PVRing {
            base: k.clone(),
            a: a.clone(),
            kind: PVKind::InBase,
            ring: k.clone(),
            y: t.one(),
            sigma_factor: c,
            w: None,
        });
    }
    let a_rat = to_rational(&t, a);
    match a_rat {
        Some(r) => {
            let two_a = &r * num_rational::BigRational::from_integer(2.into());
            if !two_a.is_integer() {
                return Err(GaloisError::OutOfScope(
                    "rational rate with 2a not an integer needs a solution of degree > 2"
                        .to_string(),
                ));
            }
            let n: i64 = {
                use num_traits::ToPrimitive;
                two_a.to_integer().to_i64().ok_or_else(|| {
                    GaloisError::OutOfScope("rate too large".to_string())
                })?
            };
            let x_idx = solution_generator(k)?;
            let x = t.generator(x_idx);
            if n % 2 == 0 {
                // y = x^(n/2) already in the base
                let y = t.pow_i64(&x, n / 2).map_err(GaloisError::Field)?;
                let c = t.div(&k.sigma(&y)?, &y).map_err(GaloisError::Field)?;
                validate_forced_choice(&t, &choice, &c)?;
                Ok(PVRing {
                    base: k.clone(),
                    a: a.clone(),
                    kind: PVKind::InBase,
                    ring: k.clone(),
                    y,
                    sigma_factor: c,
                    w: None,
                })
            } else {
                // y^2 = x^n, irreducible since n is odd
                let w = t.pow_i64(&x, n).map_err(GaloisError::Field)?;
                let minpoly = crate::fieldtower::UniPoly::new(
                    &t,
                    vec![t.neg(&w), t.zero(), t.one()],
                );
                let ring_tower =
                    t.extend_algebraic("y", &minpoly).map_err(GaloisError::Field)?;
                // c^2 = sigma(w)/w, solved in the base field
                let c2 = t.div(&k.sigma(&w)?, &w).map_err(GaloisError::Field)?;
                let c0 = crate::fieldtower::sqrt_in_tower(&t, &c2)
                    .map_err(GaloisError::Field)?
                    .ok_or_else(|| {
                        GaloisError::NoSigmaStructure(format!(
                            "sigma(w)/w = {} has no square root in the base",
                            t.render_elem(&c2)
                        ))
                    })?;
                let c = resolve_choice(&t, choice, &c0, &c2, k)?;
                finish_extension(k, a, PVKind::AlgebraicSqrt, ring_tower, c, Some(w))
            }
        }
        None => {
            // irrational delta-constant rate: transcendental solution;
            // delta-simplicity holds because delta(e) = m*a*e has no
            // monomial solution for integer m != 0
            if k.sigma(a)? != *a {
                return Err(GaloisError::OutOfScope(
                    "transcendental scope needs sigma-fixed rate".to_string(),
                ));
            }
            let ring_tower = t.extend_transcendental("y").map_err(GaloisError::Field)?;
            let one = t.one();
            let c = resolve_choice(&t, choice, &one, &one, k)?;
            finish_extension(k, a, PVKind::Transcendental, ring_tower, c, None)
        }
    }
}

fn validate_forced_choice(
    t: &FieldTower,
    choice: &SigmaChoice,
    forced: &TowerElem,
) -> Result<(), GaloisError> {
    match choice {
        SigmaChoice::Plus => Ok(()),
        SigmaChoice::Minus => Err(GaloisError::NoSigmaStructure(
            "sigma(y) is determined when y lies in the base".to_string(),
        )),
        SigmaChoice::Explicit(c) => {
            if c == forced {
                Ok(())
            } else {
                Err(GaloisError::NoSigmaStructure(format!(
                    "sigma(y)/y is forced to {}",
                    t.render_elem(forced)
                )))
            }
        }
    }
}

fn resolve_choice(
    t: &FieldTower,
    choice: SigmaChoice,
    c0: &TowerElem,
    c_squared: &TowerElem,
    k: &DeltaSigmaField,
) -> Result<TowerElem, GaloisError> {
    let c = match choice {
        SigmaChoice::Plus => c0.clone(),
        SigmaChoice::Minus => t.neg(c0),
        SigmaChoice::Explicit(c) => {
            if t.mul(&c, &c) != *c_squared {
                return Err(GaloisError::NoSigmaStructure(
                    "explicit factor does not satisfy the consistency equation".to_string(),
                ));
            }
            c
        }
    };
    if !k.is_delta_constant(&c)? {
        return Err(GaloisError::NoSigmaStructure(
            "sigma factor must be a delta-constant".to_string(),
        ));
    }
    Ok(c)
}

/// Assembles the extended delta-sigma structure and re-verifies it.
fn finish_extension(
    k: &DeltaSigmaField,
    a: &TowerElem,
    kind: PVKind,
    ring_tower: FieldTower,
    c: TowerElem,
    w: Option<TowerElem>,
) -> Result<PVRing, GaloisError> {
    let t = k.tower();
    let y = ring_tower.generator(ring_tower.level() - 1);
    let lift = FieldMorphism::inclusion(t, &ring_tower).map_err(GaloisError::Field)?;
    let mut sigma_images = Vec::with_capacity(ring_tower.level());
    for i in 0..t.level() {
        sigma_images.push(lift.apply(&k.sigma(&t.generator(i))?).map_err(GaloisError::Field)?);
    }
    let c_up = lift.apply(&c).map_err(GaloisError::Field)?;
    sigma_images.push(ring_tower.mul(&c_up, &y));
    let sigma = FieldMorphism::make(&ring_tower, &ring_tower, sigma_images)
        .map_err(|e| GaloisError::NoSigmaStructure(e.to_string()))?;
    let mut delta_images = Vec::with_capacity(ring_tower.level());
    for img in k.delta_images() {
        delta_images.push(lift.apply(img).map_err(GaloisError::Field)?);
    }
    let a_up = lift.apply(a).map_err(GaloisError::Field)?;
    delta_images.push(ring_tower.mul(&a_up, &y));
    let ring = make_deltasigma_field(ring_tower, delta_images, sigma)?;
    Ok(PVRing { base: k.clone(), a: a.clone(), kind, ring, y, sigma_factor: c, w })
}

/// The D-matrix report: `D = (y1 (x) 1)^{-1} (1 (x) y2)` in `R1 (x)_k R2`,
/// with its symbolically expanded `delta(D)` and the constant `rho` with
/// `sigma(D) = rho * D`.
#[derive(Debug, Clone)]
pub struct DMatrixReport {
    pub d_description: String,
    pub delta_d_rendered: String,
    pub delta_d_is_zero: bool,
    /// `sigma(D)/D`, an element of the base field.
    pub sigma_ratio: TowerElem,
    pub sigma_ratio_rendered: String,
}

/// Computes the D-matrix of two rank-one PV rings for the same equation
/// and certifies `delta(D) = 0` by symbolic expansion.
pub fn dmatrix(r1: &PVRing, r2: &PVRing) -> Result<DMatrixReport, GaloisError> {
    if r1.base != r2.base || r1.a != r2.a {
        return Err(GaloisError::BaseMismatch);
    }
    let t1 = r1.ring.tower().clone();
    let base_t = r1.base.tower().clone();
    match (r1.kind, r2.kind) {
        (PVKind::InBase, PVKind::InBase) => {
            // D = y2 / y1 inside the base field
            let d = base_t.div(&r2.y, &r1.y).map_err(GaloisError::Field)?;
            let dd = r1.base.delta(&d)?;
            let ratio = base_t
                .div(&r1.base.sigma(&d)?, &d)
                .map_err(GaloisError::Field)?;
            Ok(DMatrixReport {
                d_description: format!("D = {}", base_t.render_elem(&d)),
                delta_d_rendered: base_t.render_elem(&dd),
                delta_d_is_zero: base_t.is_zero(&dd),
                sigma_ratio_rendered: base_t.render_elem(&ratio),
                sigma_ratio: ratio,
            })
        }
        (PVKind::AlgebraicSqrt, PVKind::AlgebraicSqrt)
        | (PVKind::Transcendental, PVKind::Transcendental) => {
            // tensor element D = (0, 1/y1): coefficient of y2^1 over R1
            let inv_y1 = t1.inv(&r1.y).map_err(GaloisError::Field)?;
            // delta(D) coefficient: delta_1(1/y1) + a * (1/y1)
            let a_up = lift_to(&base_t, &t1, &r1.a)?;
            let d_coeff = t1.add(&r1.ring.delta(&inv_y1)?, &t1.mul(&a_up, &inv_y1));
            // sigma(D) coefficient: sigma_1(1/y1) * c2
            let c2_up = lift_to(&base_t, &t1, &r2.sigma_factor)?;
            let s_coeff = t1.mul(&r1.ring.sigma(&inv_y1)?, &c2_up);
            let ratio_in_ring = t1.div(&s_coeff, &inv_y1).map_err(GaloisError::Field)?;
            // the ratio lands in the base: c2/c1
            let ratio = base_t
                .div(&r2.sigma_factor, &r1.sigma_factor)
                .map_err(GaloisError::Field)?;
            debug_assert_eq!(lift_to(&base_t, &t1, &ratio)?, ratio_in_ring);
            Ok(DMatrixReport {
                d_description: "D = (y1 (x) 1)^-1 (1 (x) y2)".to_string(),
                delta_d_rendered: format!("({}) (x) y2", t1.render_elem(&d_coeff)),
                delta_d_is_zero: t1.is_zero(&d_coeff),
                sigma_ratio_rendered: base_t.render_elem(&ratio),
                sigma_ratio: ratio,
            })
        }
        _ => Err(GaloisError::BaseMismatch),
    }
}

fn lift_to(
    base: &FieldTower,
    ring: &FieldTower,
    e: &TowerElem,
) -> Result<TowerElem, GaloisError> {
    let incl = FieldMorphism::inclusion(base, ring).map_err(GaloisError::Field)?;
    incl.apply(e).map_err(GaloisError::Field)
}

/// Bound-relative description of the delta-constants of a presented
/// delta-sigma field whose generators are delta-eigenvectors.
#[derive(Debug, Clone)]
pub struct ConstantsReport {
    /// Human description of the searched coefficient space.
    pub space: String,
    /// Generators of the delta-constant prefix subfield.
    pub prefix_names: Vec<String>,
    /// Monomials spanning the constants found (over the constant prefix).
    pub basis: Vec<String>,
    /// True when only the trivial monomial survives, i.e. the constants
    /// found equal the constants of the prefix.
    pub equals_prefix_constants: bool,
}

/// Solves `delta = 0` on the space of Laurent monomials in the
/// delta-eigenvector generators, up to the degree bound. The generators
/// above the constant prefix must satisfy `delta(g) = lambda_g * g` with
/// `lambda_g` a delta-constant (that is the declared scope).
pub fn delta_constants(
    field: &DeltaSigmaField,
    degree_bound: i64,
) -> Result<ConstantsReport, GaloisError> {
    let t = field.tower().clone();
    // split generators into the delta-constant prefix and eigenvector part
    let mut prefix = 0usize;
    while prefix < t.level() && t.is_zero(&field.delta_images()[prefix]) {
        prefix += 1;
    }
    let mut lambdas = Vec::new();
    let mut names = Vec::new();
    let mut ranges: Vec<Vec<i64>> = Vec::new();
    for i in prefix..t.level() {
        let g = t.generator(i);
        let dg = &field.delta_images()[i];
        let lambda = t.div(dg, &g).map_err(|_| {
            GaloisError::OutOfScope("generator above the prefix has delta(g) = 0".to_string())
        })?;
        if !field.is_delta_constant(&lambda)? {
            return Err(GaloisError::OutOfScope(format!(
                "delta({0})/{0} is not a delta-constant",
                t.steps()[i].name()
            )));
        }
        lambdas.push(lambda);
        names.push(t.steps()[i].name().to_string());
        match t.steps()[i].degree() {
            // algebraic generator: exponents below the step degree
            Some(d) => ranges.push((0..d as i64).collect()),
            // transcendental generator: Laurent exponents up to the bound
            None => ranges.push((-degree_bound..=degree_bound).collect()),
        }
    }
    // enumerate exponent tuples; a monomial is constant iff its eigenvalue
    // sum is exactly zero
    let mut basis = Vec::new();
    let mut idx = vec![0usize; ranges.len()];
    loop {
        let exps: Vec<i64> = idx.iter().zip(&ranges).map(|(&i, r)| r[i]).collect();
        let mut eig = t.zero();
        for (e, l) in exps.iter().zip(&lambdas) {
            let e_el = t.from_i64(*e);
            eig = t.add(&eig, &t.mul(&e_el, l));
        }
        if t.is_zero(&eig) {
            basis.push(render_monomial(&names, &exps));
        }
        // advance
        let mut carry = 0;
        loop {
            if carry == idx.len() {
                let equals = basis == vec!["1".to_string()];
                let space = format!(
                    "Laurent monomials in [{}] with exponents bounded by {}",
                    names.join(", "),
                    degree_bound
                );
                basis.sort();
                let prefix_names =
                    (0..prefix).map(|i| t.steps()[i].name().to_string()).collect();
                return Ok(ConstantsReport {
                    space,
                    prefix_names,
                    basis,
                    equals_prefix_constants: equals,
                });
            }
            idx[carry] += 1;
            if idx[carry] == ranges[carry].len() {
                idx[carry] = 0;
                carry += 1;
            } else {
                break;
            }
        }
    }
}

fn render_monomial(names: &[String], exps: &[i64]) -> String {
    let mut parts = Vec::new();
    for (n, e) in names.iter().zip(exps) {
        match e {
            0 => {}
            1 => parts.push(n.clone()),
            _ => parts.push(format!("{n}^{e}")),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Result of the minimal sigma-power isomorphism search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SigmaLResult {
    MinimalL { l: usize, map: String },
    NoneUpTo(usize),
}

/// Enumerates the candidate base-algebra maps `y1 -> c*y2` (with `c^2 = 1`
/// forced by the relation presentation), filters by delta-equivariance,
/// and returns the least `l` with a sigma^l-equivariant survivor.
pub fn sigma_l_isomorphism_search(
    r1: &PVRing,
    r2: &PVRing,
    l_max: usize,
) -> Result<SigmaLResult, GaloisError> {
    if r1.base != r2.base || r1.a != r2.a || r1.kind != r2.kind {
        return Err(GaloisError::BaseMismatch);
    }
    let t = r1.base.tower().clone();
    let candidates: Vec<TowerElem> = match r1.kind {
        PVKind::InBase => vec![t.div(&r1.y, &r2.y).map_err(GaloisError::Field)?],
        // y1^2 = w = y2^2 forces c^2 = 1; delta(c) = 0 holds for both
        PVKind::AlgebraicSqrt | PVKind::Transcendental => vec![t.one(), t.from_i64(-1)],
    };
    for l in 1..=l_max {
        for c in &candidates {
            // sigma^l-equivariance: prod_{k<l} sigma^k(c1) * c
            //                     = sigma^l(c) * prod_{k<l} sigma^k(c2)
            let c1l = sigma_cocycle(&r1.base, &r1.sigma_factor, l)?;
            let c2l = sigma_cocycle(&r2.base, &r2.sigma_factor, l)?;
            let mut cl = c.clone();
            for _ in 0..l {
                cl = r1.base.sigma(&cl)?;
            }
            if t.mul(&c1l, c) == t.mul(&cl, &c2l) {
                let map = if t.is_one(c) {
                    "y1 -> y2".to_string()
                } else {
                    format!("y1 -> ({})*y2", t.render_elem(c))
                };
                return Ok(SigmaLResult::MinimalL { l, map });
            }
        }
    }
    Ok(SigmaLResult::NoneUpTo(l_max))
}

/// `c * sigma(c) * ... * sigma^{l-1}(c)`.
fn sigma_cocycle(
    k: &DeltaSigmaField,
    c: &TowerElem,
    l: usize,
) -> Result<TowerElem, GaloisError> {
    let t = k.tower();
    let mut acc = t.one();
    let mut cur = c.clone();
    for _ in 0..l {
        acc = t.mul(&acc, &cur);
        cur = k.sigma(&cur)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::super::tests::pv_base;
    use super::*;

    fn half(k: &DeltaSigmaField) -> TowerElem {
        let t = k.tower();
        t.div(&t.one(), &t.from_i64(2)).unwrap()
    }

    #[test]
    fn pv_sqrt_construction() {
        let k = pv_base();
        let a = half(&k);
        let plus = pv_construct(&k, &a, SigmaChoice::Plus).unwrap();
        assert_eq!(plus.kind(), PVKind::AlgebraicSqrt);
        // sigma factor is sqrt(2) (or its negative for the other choice)
        let t = k.tower();
        let r2 = t.generator(0);
        assert!(plus.sigma_factor() == &r2 || plus.sigma_factor() == &t.neg(&r2));
        let minus = pv_construct(&k, &a, SigmaChoice::Minus).unwrap();
        assert_eq!(t.neg(plus.sigma_factor()), minus.sigma_factor().clone());
        // delta(y) = y/2 and the commutation held (construction verified)
        let ring = plus.ring();
        let y = plus.y();
        let dy = ring.delta(y).unwrap();
        let rt = ring.tower();
        let a_up = lift_to(t, rt, &a).unwrap();
        assert_eq!(dy, rt.mul(&a_up, y));
    }

    #[test]
    fn pv_trivial_and_in_base() {
        let k = pv_base();
        let t = k.tower().clone();
        // a = 0: the ring is k itself with y = 1
        let r = pv_construct(&k, &t.zero(), SigmaChoice::Plus).unwrap();
        assert_eq!(r.kind(), PVKind::InBase);
        assert_eq!(r.y(), &t.one());
        // a = 1: y = x in the base, sigma factor forced to 2
        let r = pv_construct(&k, &t.one(), SigmaChoice::Plus).unwrap();
        assert_eq!(r.kind(), PVKind::InBase);
        assert_eq!(r.sigma_factor(), &t.from_i64(2));
        assert!(matches!(
            pv_construct(&k, &t.one(), SigmaChoice::Minus),
            Err(GaloisError::NoSigmaStructure(_))
        ));
        // a = 1/3 is out of the rank-one scope
        let third = t.div(&t.one(), &t.from_i64(3)).unwrap();
        assert!(matches!(
            pv_construct(&k, &third, SigmaChoice::Plus),
            Err(GaloisError::OutOfScope(_))
        ));
    }

    #[test]
    fn dmatrix_certificates() {
        let k = pv_base();
        let a = half(&k);
        let plus = pv_construct(&k, &a, SigmaChoice::Plus).unwrap();
        let minus = pv_construct(&k, &a, SigmaChoice::Minus).unwrap();
        let t = k.tower().clone();
        // same choice: delta(D) = 0 and sigma(D) = D
        let rep = dmatrix(&plus, &plus).unwrap();
        assert!(rep.delta_d_is_zero);
        assert!(t.is_one(&rep.sigma_ratio));
        // opposite choices: delta(D) = 0 and sigma(D) = -D
        let rep = dmatrix(&plus, &minus).unwrap();
        assert!(rep.delta_d_is_zero);
        assert_eq!(rep.sigma_ratio, t.from_i64(-1));
        // a = 0 gives D = 1
        let z1 = pv_construct(&k, &t.zero(), SigmaChoice::Plus).unwrap();
        let rep = dmatrix(&z1, &z1).unwrap();
        assert!(rep.delta_d_is_zero);
        assert!(t.is_one(&rep.sigma_ratio));
    }

    #[test]
    fn minimal_l_search() {
        let k = pv_base();
        let a = half(&k);
        let plus = pv_construct(&k, &a, SigmaChoice::Plus).unwrap();
        let minus = pv_construct(&k, &a, SigmaChoice::Minus).unwrap();
        // opposite signs need l = 2, with the identity map on y
        assert_eq!(
            sigma_l_isomorphism_search(&plus, &minus, 8).unwrap(),
            SigmaLResult::MinimalL { l: 2, map: "y1 -> y2".to_string() }
        );
        // identical choices are sigma-isomorphic at l = 1
        assert_eq!(
            sigma_l_isomorphism_search(&plus, &plus, 8).unwrap(),
            SigmaLResult::MinimalL { l: 1, map: "y1 -> y2".to_string() }
        );
        // monotonicity: a sigma^l-equivariant map is sigma^{2l}-equivariant
        let t = k.tower().clone();
        let c = t.one();
        for l in [2usize, 4] {
            let c1l = sigma_cocycle(&k, plus.sigma_factor(), l).unwrap();
            let c2l = sigma_cocycle(&k, minus.sigma_factor(), l).unwrap();
            assert_eq!(t.mul(&c1l, &c), t.mul(&c, &c2l));
        }
    }

    #[test]
    fn delta_constants_reports() {
        let k = pv_base();
        let a = half(&k);
        // base field: constants are exactly the prefix (Q(sqrt2))
        let rep = delta_constants(&k, 4).unwrap();
        assert_eq!(rep.basis, vec!["1".to_string()]);
        assert!(rep.equals_prefix_constants);
        // PV ring k(sqrt x): no new constants up to degree 4
        let plus = pv_construct(&k, &a, SigmaChoice::Plus).unwrap();
        let rep = delta_constants(plus.ring(), 4).unwrap();
        assert_eq!(rep.basis, vec!["1".to_string()]);
        assert!(rep.equals_prefix_constants);
        // delta = 0 ring: everything is constant (the prefix swallows x)
        let q = crate::fieldtower::rationals();
        let kx = q.extend_transcendental("x").unwrap();
        let ds = make_deltasigma_field(
            kx.clone(),
            vec![kx.zero()],
            FieldMorphism::identity(&kx),
        )
        .unwrap();
        let rep = delta_constants(&ds, 2).unwrap();
        assert_eq!(rep.prefix_names, vec!["x".to_string()]);
        assert!(rep.equals_prefix_constants);
    }
}
