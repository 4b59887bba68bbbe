//! Difference polynomial rings over a sigma-field: the sigma action,
//! standard ranking, leaders and initials, Ritt reduction with recorded
//! certificates, reinterpretation under powers of sigma, and limit-degree
//! computation for presented algebraic extensions.

use thiserror::Error;

use crate::fieldtower::{FieldError, FieldTower, SigmaField};
use crate::multipoly::MPoly;
use crate::sigmaideal::SigmaPolyRing;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DiffError {
    #[error("polynomial involves no indeterminate")]
    ConstantPolynomial,
    #[error("relative degree sequence did not stabilize; observed {0:?}")]
    NotStabilized(Vec<usize>),
    #[error("presentation level {0} is transcendental; limit degrees need the algebraic case")]
    NotAlgebraic(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// The difference polynomial ring `K{x_1, ..., x_n}` over a sigma-field.
/// Indeterminates are `s^j(x_i)` for `j >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffPolyRing {
    coeffs: SigmaField,
    base_names: Vec<String>,
}

/// An indeterminate `s^shift(x_var)` under the standard ranking
/// (`x_1 < ... < x_n < s(x_1) < ...`): compared by `(shift, var)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct DiffVar {
    pub shift: usize,
    pub var: usize,
}

/// A difference polynomial: a sparse polynomial in the indeterminates of
/// shift at most `order`, with tower coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffPoly {
    order: usize,
    poly: MPoly,
}

impl DiffPolyRing {
    pub fn new(coeffs: SigmaField, base_names: Vec<String>) -> DiffPolyRing {
        assert!(!base_names.is_empty());
        DiffPolyRing { coeffs, base_names }
    }

    pub fn nbase(&self) -> usize {
        self.base_names.len()
    }

    pub fn coeffs(&self) -> &SigmaField {
        &self.coeffs
    }

    pub fn tower(&self) -> &FieldTower {
        self.coeffs.tower()
    }

    pub fn base_names(&self) -> &[String] {
        &self.base_names
    }

    fn flat(&self, v: DiffVar) -> usize {
        v.shift * self.nbase() + v.var
    }

    fn unflat(&self, idx: usize) -> DiffVar {
        DiffVar { shift: idx / self.nbase(), var: idx % self.nbase() }
    }

    pub fn var_name(&self, v: DiffVar) -> String {
        if v.shift == 0 {
            self.base_names[v.var].clone()
        } else {
            format!("s{}({})", v.shift, self.base_names[v.var])
        }
    }

    pub fn zero(&self) -> DiffPoly {
        DiffPoly { order: 0, poly: MPoly::zero(self.nbase()) }
    }

    pub fn constant(&self, c: crate::fieldtower::TowerElem) -> DiffPoly {
        DiffPoly { order: 0, poly: MPoly::constant(self.tower(), self.nbase(), c) }
    }

    pub fn one(&self) -> DiffPoly {
        self.constant(self.tower().one())
    }

    pub fn var(&self, v: DiffVar) -> DiffPoly {
        let nvars = (v.shift + 1) * self.nbase();
        DiffPoly { order: v.shift, poly: MPoly::var(self.tower(), nvars, self.flat(v)) }
    }

    fn align(&self, a: &DiffPoly, b: &DiffPoly) -> (MPoly, MPoly, usize) {
        let order = a.order.max(b.order);
        (self.embed(a, order), self.embed(b, order), order)
    }

    fn embed(&self, p: &DiffPoly, order: usize) -> MPoly {
        assert!(order >= p.order);
        let nvars = (order + 1) * self.nbase();
        let map: Vec<usize> = (0..p.poly.nvars()).collect();
        p.poly.embed_vars(nvars, &map)
    }

    fn normalize(&self, poly: MPoly, order: usize) -> DiffPoly {
        // shrink the order to the highest shift actually present
        let n = self.nbase();
        let mut max_shift = 0usize;
        for (e, _) in poly.terms() {
            for (idx, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    max_shift = max_shift.max(idx / n);
                }
            }
        }
        if max_shift == order {
            return DiffPoly { order, poly };
        }
        let nvars = (max_shift + 1) * n;
        let mut shrunk = MPoly::zero(nvars);
        for (e, c) in poly.terms() {
            shrunk.add_term(self.tower(), &e[..nvars].to_vec(), c);
        }
        DiffPoly { order: max_shift, poly: shrunk }
    }

    pub fn add(&self, a: &DiffPoly, b: &DiffPoly) -> DiffPoly {
        let (x, y, order) = self.align(a, b);
        self.normalize(x.add(self.tower(), &y), order)
    }

    pub fn sub(&self, a: &DiffPoly, b: &DiffPoly) -> DiffPoly {
        let (x, y, order) = self.align(a, b);
        self.normalize(x.sub(self.tower(), &y), order)
    }

    pub fn neg(&self, a: &DiffPoly) -> DiffPoly {
        DiffPoly { order: a.order, poly: a.poly.neg(self.tower()) }
    }

    pub fn mul(&self, a: &DiffPoly, b: &DiffPoly) -> DiffPoly {
        let (x, y, order) = self.align(a, b);
        self.normalize(x.mul(self.tower(), &y), order)
    }

    pub fn scale(&self, a: &DiffPoly, c: &crate::fieldtower::TowerElem) -> DiffPoly {
        self.normalize(a.poly.scale(self.tower(), c), a.order)
    }

    pub fn is_zero(&self, a: &DiffPoly) -> bool {
        a.poly.is_zero()
    }

    /// Applies `sigma^e`: coefficients through the field endomorphism,
    /// every indeterminate shift raised by `e`.
    pub fn sigma_shift(&self, p: &DiffPoly, e: usize) -> Result<DiffPoly, DiffError> {
        if e == 0 {
            return Ok(p.clone());
        }
        let n = self.nbase();
        let order = p.order + e;
        let nvars = (order + 1) * n;
        let mut mapped = p.poly.clone();
        for _ in 0..e {
            mapped = mapped.map_coeffs(self.coeffs.sigma())?;
        }
        let map: Vec<usize> = (0..p.poly.nvars()).map(|idx| idx + e * n).collect();
        Ok(DiffPoly { order, poly: mapped.embed_vars(nvars, &map) })
    }

    /// The highest-ranked indeterminate of `p` and the leading coefficient
    /// of `p` viewed as univariate in it.
    pub fn leader_initial(&self, p: &DiffPoly) -> Result<(DiffVar, DiffPoly), DiffError> {
        let mut leader: Option<usize> = None;
        for idx in 0..p.poly.nvars() {
            if p.poly.involves_var(idx) {
                leader = Some(idx); // flat index order agrees with the ranking
            }
        }
        let Some(lead_idx) = leader else {
            return Err(DiffError::ConstantPolynomial);
        };
        let deg = p.poly.degree_in(lead_idx);
        let init = p.poly.coeff_of_power(self.tower(), lead_idx, deg);
        Ok((self.unflat(lead_idx), self.normalize(init, p.order)))
    }

    pub fn degree_in(&self, p: &DiffPoly, v: DiffVar) -> u32 {
        let idx = self.flat(v);
        if idx >= p.poly.nvars() {
            0
        } else {
            p.poly.degree_in(idx)
        }
    }

    pub fn order(&self, p: &DiffPoly) -> usize {
        p.order
    }

    pub fn render(&self, p: &DiffPoly) -> String {
        // print with the highest-ranked indeterminates first
        let nvars = p.poly.nvars();
        let flip: Vec<usize> = (0..nvars).map(|i| nvars - 1 - i).collect();
        let flipped = p.poly.embed_vars(nvars, &flip);
        let names: Vec<String> =
            (0..nvars).rev().map(|idx| self.var_name(self.unflat(idx))).collect();
        flipped.render(self.tower(), &names)
    }

    /// The truncation `K[x, s(x), ..., s^t(x)]` as a polynomial sigma-ring
    /// (sigma shifts indices; the top level has no image).
    pub fn truncation(&self, cutoff: usize) -> Truncation {
        Truncation { ring: self.clone(), cutoff }
    }
}

/// A cutoff of a difference polynomial ring: the ordinary polynomial ring
/// in the indeterminates of shift at most `cutoff`.
#[derive(Debug, Clone)]
pub struct Truncation {
    pub ring: DiffPolyRing,
    pub cutoff: usize,
}

impl Truncation {
    pub fn nvars(&self) -> usize {
        (self.cutoff + 1) * self.ring.nbase()
    }

    /// The truncation as an ambient for the sigma-ideal machinery.
    pub fn sigma_poly_ring(&self) -> SigmaPolyRing {
        let n = self.ring.nbase();
        let nvars = self.nvars();
        let t = self.ring.tower();
        let mut names = Vec::with_capacity(nvars);
        let mut images: Vec<Option<MPoly>> = Vec::with_capacity(nvars);
        for idx in 0..nvars {
            let v = self.ring.unflat(idx);
            names.push(self.ring.var_name(v));
            if v.shift < self.cutoff {
                images.push(Some(MPoly::var(t, nvars, idx + n)));
            } else {
                images.push(None);
            }
        }
        SigmaPolyRing::new(self.ring.coeffs().clone(), names, images)
    }

    /// Embeds a difference polynomial of order at most `cutoff`.
    pub fn include(&self, p: &DiffPoly) -> Option<MPoly> {
        if p.order > self.cutoff {
            return None;
        }
        Some(self.ring.embed(p, self.cutoff))
    }

    pub fn to_diffpoly(&self, m: &MPoly) -> DiffPoly {
        assert_eq!(m.nvars(), self.nvars());
        self.ring.normalize(m.clone(), self.cutoff)
    }
}

/// Result of a Ritt reduction: `certificate * p = sum_k multiplier_k *
/// sigma^(shift_k)(basis[idx_k]) + remainder`, with the certificate a
/// product of sigma-shifted initials.
#[derive(Debug, Clone)]
pub struct RittReduction {
    pub remainder: DiffPoly,
    pub certificate: DiffPoly,
    /// `(multiplier, shift, basis index)` for each consumed reduction step.
    pub steps: Vec<(DiffPoly, usize, usize)>,
}

impl RittReduction {
    /// Re-expands the recorded steps; the identity must hold exactly.
    pub fn verify(&self, ring: &DiffPolyRing, p: &DiffPoly, basis: &[DiffPoly]) -> bool {
        let mut rhs = self.remainder.clone();
        for (mult, shift, idx) in &self.steps {
            let shifted = match ring.sigma_shift(&basis[*idx], *shift) {
                Ok(s) => s,
                Err(_) => return false,
            };
            rhs = ring.add(&rhs, &ring.mul(mult, &shifted));
        }
        ring.mul(&self.certificate, p) == rhs
    }
}

/// Ritt sigma-reduction of `p` against `basis`: the remainder has, in each
/// sigma-shifted leader of each basis element, degree below that shift's
/// leader degree. Pseudo-division multiplies through by initials; every
/// multiplier is recorded.
pub fn ritt_reduce(
    ring: &DiffPolyRing,
    p: &DiffPoly,
    basis: &[DiffPoly],
) -> Result<RittReduction, DiffError> {
    let t = ring.tower();
    for b in basis {
        if ring.leader_initial(b).is_err() {
            return Err(DiffError::ConstantPolynomial);
        }
    }
    let leaders: Vec<(DiffVar, u32)> = basis
        .iter()
        .map(|b| {
            let (v, _) = ring.leader_initial(b).expect("checked non-constant");
            (v, ring.degree_in(b, v))
        })
        .collect();

    let mut cur = p.clone();
    let mut certificate = ring.one();
    let mut steps: Vec<(DiffPoly, usize, usize)> = Vec::new();

    loop {
        // find the highest-ranked reducible position
        let mut best: Option<(DiffVar, usize, usize)> = None; // (shifted leader, shift, basis idx)
        for (bi, &(lv, ldeg)) in leaders.iter().enumerate() {
            let max_shift = cur.order.saturating_sub(lv.shift);
            for e in 0..=max_shift {
                let sv = DiffVar { shift: lv.shift + e, var: lv.var };
                if ring.degree_in(&cur, sv) >= ldeg {
                    if best.map_or(true, |(bv, _, _)| sv > bv) {
                        best = Some((sv, e, bi));
                    }
                }
            }
        }
        let Some((sv, e, bi)) = best else { break };
        let shifted = ring.sigma_shift(&basis[bi], e)?;
        let db = ring.degree_in(&shifted, sv);
        let init = {
            let idx = (sv.shift) * ring.nbase() + sv.var;
            ring.normalize(shifted.poly.coeff_of_power(t, idx, db), shifted.order)
        };
        // one pseudo-division pass in the variable sv
        while ring.degree_in(&cur, sv) >= db && !ring.is_zero(&cur) {
            let dp = ring.degree_in(&cur, sv);
            let idx_cur = (sv.shift) * ring.nbase() + sv.var;
            let lead_coeff =
                ring.normalize(cur.poly.coeff_of_power(t, idx_cur, dp), cur.order);
            // cur := init * cur - lead_coeff * sv^(dp - db) * shifted
            let power = ring.var(sv);
            let mut mult = lead_coeff.clone();
            for _ in 0..(dp - db) {
                mult = ring.mul(&mult, &power);
            }
            cur = ring.sub(&ring.mul(&init, &cur), &ring.mul(&mult, &shifted));
            certificate = ring.mul(&certificate, &init);
            for (m, _, _) in steps.iter_mut() {
                *m = ring.mul(m, &init);
            }
            steps.push((mult, e, bi));
        }
    }
    Ok(RittReduction { remainder: cur, certificate, steps })
}

/// A ring reinterpreted through `sigma^d`: `K{x}_sigma` viewed as the
/// `sigma^d`-polynomial ring in the `n*d` variables `x, s(x), ...,
/// s^{d-1}(x)`; `translate` and `translate_back` convert terms.
#[derive(Debug, Clone)]
pub struct Reinterpretation {
    pub original: DiffPolyRing,
    pub ring: DiffPolyRing,
    pub power: usize,
}

/// Builds the reinterpretation of `r` under `sigma^d`.
pub fn reinterpret_power(r: &DiffPolyRing, d: usize) -> Result<Reinterpretation, DiffError> {
    assert!(d >= 1);
    let tower = r.tower().clone();
    let sigma_d = r.coeffs().sigma().power(d)?;
    let coeffs = SigmaField::new(tower, sigma_d)?;
    let mut names = Vec::with_capacity(r.nbase() * d);
    for rshift in 0..d {
        for name in r.base_names() {
            if rshift == 0 {
                names.push(name.clone());
            } else {
                names.push(format!("s{rshift}({name})"));
            }
        }
    }
    Ok(Reinterpretation { original: r.clone(), ring: DiffPolyRing::new(coeffs, names), power: d })
}

impl Reinterpretation {
    /// Old indeterminate `s^j(x_i)` becomes `s_new^(j div d)` applied to
    /// the new base variable indexed by `(j mod d, i)`.
    pub fn translate(&self, p: &DiffPoly) -> DiffPoly {
        let n = self.original.nbase();
        let d = self.power;
        let t = self.original.tower();
        let new_order = p.order / d;
        let new_nvars = (new_order + 1) * n * d;
        let map: Vec<usize> = (0..p.poly.nvars())
            .map(|idx| {
                let v = self.original.unflat(idx);
                let new_base = (v.shift % d) * n + v.var;
                (v.shift / d) * (n * d) + new_base
            })
            .collect();
        let _ = t;
        self.ring.normalize(p.poly.embed_vars(new_nvars, &map), new_order)
    }

    pub fn translate_back(&self, p: &DiffPoly) -> DiffPoly {
        let n = self.original.nbase();
        let d = self.power;
        let nd = n * d;
        let max_old_shift = (p.order + 1) * d;
        let new_nvars = (max_old_shift + 1) * n;
        let map: Vec<usize> = (0..p.poly.nvars())
            .map(|idx| {
                let new_shift = idx / nd;
                let base = idx % nd;
                let (rshift, var) = (base / n, base % n);
                (new_shift * d + rshift) * n + var
            })
            .collect();
        self.original.normalize(p.poly.embed_vars(new_nvars, &map), max_old_shift)
    }
}

/// Stabilized relative degree of the `sigma^d`-generated tower presented
/// by the steps of `tower` above `base_level`: the value
/// `[K(b, ..., s^(md)(b)) : K(b, ..., s^((m-1)d)(b))]` once two
/// consecutive relative degrees agree.
pub fn limit_degree(tower: &FieldTower, base_level: usize, d: usize) -> Result<usize, DiffError> {
    assert!(d >= 1);
    let steps = &tower.steps()[base_level..];
    let mut degs = Vec::with_capacity(steps.len());
    for (j, s) in steps.iter().enumerate() {
        match s.degree() {
            Some(deg) => degs.push(deg),
            None => return Err(DiffError::NotAlgebraic(j)),
        }
    }
    let mut observed = Vec::new();
    let mut m = 1usize;
    loop {
        let hi = (m + 1) * d;
        if hi > degs.len() {
            return Err(DiffError::NotStabilized(observed));
        }
        let r: usize = degs[m * d..hi].iter().product();
        observed.push(r);
        if observed.len() >= 2 && observed[observed.len() - 1] == observed[observed.len() - 2] {
            return Ok(r);
        }
        m += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldtower::{rationals, FieldMorphism, UniPoly};

    fn constant_ring() -> DiffPolyRing {
        let q = rationals();
        DiffPolyRing::new(SigmaField::constant(q), vec!["x".into()])
    }

    /// Coefficient field Q(u) with sigma(u) = u.
    fn qu_ring() -> DiffPolyRing {
        let q = rationals();
        let qu = q.extend_transcendental("u").unwrap();
        DiffPolyRing::new(SigmaField::constant(qu), vec!["x".into()])
    }

    #[test]
    fn sigma_shift_moves_indices_and_coefficients() {
        let ring = qu_ring();
        let t = ring.tower().clone();
        let u = t.generator(0);
        let x = ring.var(DiffVar { shift: 0, var: 0 });
        let p = ring.scale(&x, &u); // u*x
        let shifted = ring.sigma_shift(&p, 1).unwrap();
        assert_eq!(ring.render(&shifted), "u*s1(x)");
        // sigma^2(x1*x2) = s2(x1)*s2(x2) over constants
        let q = rationals();
        let ring2 =
            DiffPolyRing::new(SigmaField::constant(q), vec!["x1".into(), "x2".into()]);
        let prod = ring2.mul(
            &ring2.var(DiffVar { shift: 0, var: 0 }),
            &ring2.var(DiffVar { shift: 0, var: 1 }),
        );
        let s2 = ring2.sigma_shift(&prod, 2).unwrap();
        assert_eq!(ring2.render(&s2), "s2(x2)*s2(x1)");
        // and the shift respects a nontrivial coefficient endomorphism
        let q2 = rationals();
        let k = q2.extend_algebraic("r2", &UniPoly::from_i64(&q2, &[-2, 0, 1])).unwrap();
        let conj = FieldMorphism::make(&k, &k, vec![k.neg(&k.generator(0))]).unwrap();
        let ring3 = DiffPolyRing::new(SigmaField::new(k.clone(), conj).unwrap(), vec!["x".into()]);
        let p3 = ring3.scale(&ring3.var(DiffVar { shift: 0, var: 0 }), &k.generator(0));
        let s3 = ring3.sigma_shift(&p3, 1).unwrap();
        assert_eq!(ring3.render(&s3), "-r2*s1(x)");
    }

    #[test]
    fn leader_and_initial() {
        let ring = qu_ring();
        let t = ring.tower().clone();
        let u = t.generator(0);
        let x = ring.var(DiffVar { shift: 0, var: 0 });
        let sx = ring.var(DiffVar { shift: 1, var: 0 });
        // p = s(x)^2 - x: leader s(x), initial 1
        let p = ring.sub(&ring.mul(&sx, &sx), &x);
        let (v, init) = ring.leader_initial(&p).unwrap();
        assert_eq!(v, DiffVar { shift: 1, var: 0 });
        assert_eq!(init, ring.one());
        // p = u*s(x)^3 + x*s(x): leader s(x), initial u
        let p2 = ring.add(
            &ring.scale(&ring.mul(&ring.mul(&sx, &sx), &sx), &u),
            &ring.mul(&x, &sx),
        );
        let (v2, init2) = ring.leader_initial(&p2).unwrap();
        assert_eq!(v2, DiffVar { shift: 1, var: 0 });
        assert_eq!(init2, ring.constant(u));
        // constants have no leader
        assert_eq!(ring.leader_initial(&ring.constant(t.from_i64(5))), Err(DiffError::ConstantPolynomial));
    }

    #[test]
    fn ritt_reduce_shift_membership() {
        // p = s(x)^2 - 2 reduces to 0 against [x^2 - 2] over sigma = id
        let ring = constant_ring();
        let t = ring.tower().clone();
        let x = ring.var(DiffVar { shift: 0, var: 0 });
        let sx = ring.var(DiffVar { shift: 1, var: 0 });
        let two = ring.constant(t.from_i64(2));
        let basis = vec![ring.sub(&ring.mul(&x, &x), &two)];
        let p = ring.sub(&ring.mul(&sx, &sx), &two);
        let red = ritt_reduce(&ring, &p, &basis).unwrap();
        assert!(ring.is_zero(&red.remainder));
        assert_eq!(red.certificate, ring.one());
        assert!(red.verify(&ring, &p, &basis));
    }

    #[test]
    fn ritt_reduce_no_downward_shift() {
        // p = x against [s(x)]: no shift of s(x) has leader x
        let ring = constant_ring();
        let x = ring.var(DiffVar { shift: 0, var: 0 });
        let sx = ring.var(DiffVar { shift: 1, var: 0 });
        let red = ritt_reduce(&ring, &x, &[sx]).unwrap();
        assert_eq!(red.remainder, x);
        assert_eq!(red.certificate, ring.one());
        assert!(red.steps.is_empty());
    }

    #[test]
    fn ritt_reduce_with_initials() {
        // f = x * s(x)^2 - 1 has initial x; reducing s(f) against [f]
        // requires multiplying by shifted initials but still lands in the
        // sigma-ideal (remainder 0)
        let ring = constant_ring();
        let t = ring.tower().clone();
        let x = ring.var(DiffVar { shift: 0, var: 0 });
        let sx = ring.var(DiffVar { shift: 1, var: 0 });
        let f = ring.sub(&ring.mul(&x, &ring.mul(&sx, &sx)), &ring.one());
        let sf = ring.sigma_shift(&f, 1).unwrap();
        let red = ritt_reduce(&ring, &sf, &[f.clone()]).unwrap();
        assert!(ring.is_zero(&red.remainder));
        assert!(red.verify(&ring, &sf, &[f.clone()]));
        let _ = t;
        // a polynomial already reduced comes back unchanged
        let g = ring.add(&x, &ring.one());
        let red2 = ritt_reduce(&ring, &g, &[f]).unwrap();
        assert_eq!(red2.remainder, g);
        assert_eq!(red2.certificate, ring.one());
    }

    #[test]
    fn reinterpret_round_trip() {
        let ring = constant_ring();
        let re = reinterpret_power(&ring, 2).unwrap();
        assert_eq!(re.ring.nbase(), 2);
        // s^3(x) translates to s_new^1 of the variable named s1(x)
        let s3x = ring.var(DiffVar { shift: 3, var: 0 });
        let tr = re.translate(&s3x);
        assert_eq!(re.ring.render(&tr), "s1(s1(x))");
        assert_eq!(re.translate_back(&tr), s3x);
        // d = 1 is the identity reinterpretation
        let re1 = reinterpret_power(&ring, 1).unwrap();
        let p = ring.mul(&s3x, &ring.var(DiffVar { shift: 0, var: 0 }));
        assert_eq!(re1.translate(&p), p);
        // translating then shifting once under sigma^d equals shifting d
        // times then translating
        let shifted_then = re.translate(&ring.sigma_shift(&p, 2).unwrap());
        let then_shifted = re.ring.sigma_shift(&re.translate(&p), 1).unwrap();
        assert_eq!(shifted_then, then_shifted);
    }

    #[test]
    fn limit_degree_benign_quadratic() {
        // K = Q(u), sigma(u) = u + 1; levels s^j(a) with minimal
        // polynomial y^2 - (u + j): all degrees 2
        let q = rationals();
        let qu = q.extend_transcendental("u").unwrap();
        let mut tower = qu.clone();
        for j in 0..10 {
            let u = tower.generator(0);
            let c = tower.add(&u, &tower.from_i64(j));
            let minpoly = UniPoly::new(&tower, vec![tower.neg(&c), tower.zero(), tower.one()]);
            tower = tower.extend_algebraic(&format!("a{j}"), &minpoly).unwrap();
        }
        assert_eq!(limit_degree(&tower, 1, 1).unwrap(), 2);
        assert_eq!(limit_degree(&tower, 1, 2).unwrap(), 4);
        assert_eq!(limit_degree(&tower, 1, 3).unwrap(), 8);
        // identity: sigma^d-ld = (sigma-ld)^d
        for d in 1..=3 {
            assert_eq!(limit_degree(&tower, 1, d).unwrap(), 2usize.pow(d as u32));
        }
        // insufficient depth reports the observed sequence
        let shallow = tower.prefix(1 + 5);
        assert!(matches!(limit_degree(&shallow, 1, 3), Err(DiffError::NotStabilized(_))));
    }

    #[test]
    fn limit_degree_fixed_element() {
        // a algebraic with sigma(a) = a: degree sequence 2, 1, 1, ...
        let q = rationals();
        let mut tower = q.extend_algebraic("a", &UniPoly::from_i64(&q, &[-2, 0, 1])).unwrap();
        for j in 0..8 {
            let a = tower.generator(0);
            let minpoly = UniPoly::new(&tower, vec![tower.neg(&a), tower.one()]);
            // degree-1 steps are below extend_algebraic's scope; encode the
            // level with a linear relation via the unchecked constructor
            tower = tower.extend_algebraic_unchecked(&format!("b{j}"), &minpoly);
            let _ = j;
        }
        for d in 1..=3 {
            assert_eq!(limit_degree(&tower, 0, d).unwrap(), 1);
        }
    }

    #[test]
    fn truncation_ambient() {
        let ring = constant_ring();
        let tr = ring.truncation(1);
        let amb = tr.sigma_poly_ring();
        assert_eq!(amb.nvars(), 2);
        assert_eq!(amb.var_names(), &["x".to_string(), "s1(x)".to_string()]);
        // sigma sends x to s1(x) and is undefined on s1(x)
        let x = amb.var(0);
        let sx = amb.apply_sigma(&x).unwrap();
        assert_eq!(sx, amb.var(1));
        assert!(amb.apply_sigma(&amb.var(1)).is_err());
        // canonical rendering of a difference polynomial
        let t = ring.tower().clone();
        let p = ring.sub(
            &ring.mul(
                &ring.var(DiffVar { shift: 1, var: 0 }),
                &ring.var(DiffVar { shift: 1, var: 0 }),
            ),
            &ring.constant(t.from_i64(2)),
        );
        assert_eq!(ring.render(&p), "s1(x)^2 - 2");
    }
}
