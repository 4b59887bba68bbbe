//! Lift searches for sigma^d-prime ideals along a presented inclusion
//! `R < S`, and the Chevalley witness tables built from them.
//!
//! Supported scope: the source prime is in substitution form (its
//! generators solve variables one at a time), and the fiber over it
//! factors through a single univariate polynomial over the residue field.
//! That is the shape of every worked example in scope; anything else is a
//! typed error.

use crate::fieldtower::{
    factor_univariate, FieldMorphism, FieldTower, TowerElem,
};
use crate::multipoly::{MPoly, MonomialOrder};

use super::groebner;
use super::{minimal_period, IdealError, SigmaIdeal, SigmaPolyRing};

/// A presented inclusion `R < S` of polynomial sigma-rings over the same
/// sigma-field: each `R`-variable is sent to a polynomial in the
/// `S`-variables, compatibly with the sigma actions.
#[derive(Debug, Clone)]
pub struct Inclusion {
    r_ring: SigmaPolyRing,
    s_ring: SigmaPolyRing,
    r_images: Vec<MPoly>,
}

impl Inclusion {
    pub fn new(
        r_ring: SigmaPolyRing,
        s_ring: SigmaPolyRing,
        r_images: Vec<MPoly>,
    ) -> Result<Inclusion, IdealError> {
        assert_eq!(r_images.len(), r_ring.nvars());
        if r_ring.coeffs() != s_ring.coeffs() {
            return Err(IdealError::InclusionNotCompatible(
                "coefficient sigma-fields differ".to_string(),
            ));
        }
        let t = s_ring.tower();
        for (i, img) in r_images.iter().enumerate() {
            // sigma_S(image(u_i)) must equal image(sigma_R(u_i))
            let lhs = s_ring.apply_sigma(img)?;
            let sigma_u = r_ring.sigma_var_images()[i].clone().ok_or_else(|| {
                IdealError::InclusionNotCompatible(format!(
                    "sigma undefined on {}",
                    r_ring.var_names()[i]
                ))
            })?;
            let rhs = sigma_u.substitute(t, &r_images);
            if lhs != rhs {
                return Err(IdealError::InclusionNotCompatible(
                    r_ring.var_names()[i].clone(),
                ));
            }
        }
        Ok(Inclusion { r_ring, s_ring, r_images })
    }

    pub fn r_ring(&self) -> &SigmaPolyRing {
        &self.r_ring
    }

    pub fn s_ring(&self) -> &SigmaPolyRing {
        &self.s_ring
    }

    pub fn r_images(&self) -> &[MPoly] {
        &self.r_images
    }

    /// Image in `S` of an `R`-polynomial.
    pub fn push(&self, p: &MPoly) -> MPoly {
        p.substitute(self.s_ring.tower(), &self.r_images)
    }
}

/// The residue field of a substitution-form prime: the coefficient tower
/// extended by one transcendental step per unsolved variable.
struct Residue {
    kq: FieldTower,
    free_vars: Vec<usize>,
    images: Vec<TowerElem>,
}

fn residue_field(ring: &SigmaPolyRing, q_gens: &[MPoly]) -> Result<Residue, IdealError> {
    let t = ring.tower();
    let n = ring.nvars();
    let mut pending: Vec<MPoly> = q_gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut solved: Vec<Option<MPoly>> = vec![None; n];
    'solve: while !pending.is_empty() {
        for (gi, g) in pending.iter().enumerate() {
            if let Some(c) = g.constant_value(t) {
                if t.is_zero(&c) {
                    pending.remove(gi);
                    continue 'solve;
                }
                return Err(IdealError::ResidueOutOfScope(
                    "generators are inconsistent (unit ideal)".to_string(),
                ));
            }
            for v in 0..n {
                if solved[v].is_some() || g.degree_in(v) != 1 {
                    continue;
                }
                let coeff = g.coeff_of_power(t, v, 1);
                let Some(c) = coeff.constant_value(t) else { continue };
                if t.is_zero(&c) {
                    continue;
                }
                let rest = g.coeff_of_power(t, v, 0);
                // v = -rest / c
                let expr = rest.scale(t, &t.neg(&t.inv(&c)?));
                let mut images: Vec<MPoly> = (0..n).map(|k| ring.var(k)).collect();
                images[v] = expr.clone();
                for s in solved.iter_mut().flatten() {
                    *s = s.substitute(t, &images);
                }
                solved[v] = Some(expr);
                pending.remove(gi);
                for p in pending.iter_mut() {
                    *p = p.substitute(t, &images);
                }
                continue 'solve;
            }
        }
        return Err(IdealError::ResidueOutOfScope(
            "no generator is linear in a variable with constant coefficient".to_string(),
        ));
    }
    let free_vars: Vec<usize> = (0..n).filter(|&v| solved[v].is_none()).collect();
    let mut kq = t.clone();
    for &v in &free_vars {
        let mut name = ring.var_names()[v].clone();
        while kq.generator_names().contains(&name.as_str()) {
            name.push('\'');
        }
        kq = kq.extend_transcendental(&name)?;
    }
    let incl = FieldMorphism::inclusion(t, &kq)?;
    let mut point: Vec<TowerElem> = vec![kq.zero(); n];
    for (rank, &v) in free_vars.iter().enumerate() {
        point[v] = kq.generator(t.level() + rank);
    }
    let mut images = Vec::with_capacity(n);
    for v in 0..n {
        match &solved[v] {
            None => images.push(point[v].clone()),
            Some(expr) => {
                for &f in (0..n).collect::<Vec<_>>().iter() {
                    debug_assert!(
                        solved[f].is_none() || !expr.involves_var(f),
                        "substitution not fully resolved"
                    );
                }
                let lifted = expr.map_coeffs(&incl)?;
                images.push(lifted.eval(&kq, &point));
            }
        }
    }
    Ok(Residue { kq, free_vars, images })
}

/// Writes a residue-field element as a fraction of polynomials in the free
/// variables with coefficients in the base tower.
fn elem_to_frac(
    kq: &FieldTower,
    base_level: usize,
    nfree: usize,
    e: &TowerElem,
    lvl: usize,
) -> (MPoly, MPoly) {
    let base = kq.prefix(base_level);
    if lvl <= base_level {
        let c = base.lift_from(lvl, e.clone());
        return (MPoly::constant(&base, nfree, c), MPoly::one(&base, nfree));
    }
    match e {
        TowerElem::Frac(num, den) => {
            let fvar = lvl - base_level - 1;
            let poly_frac = |coeffs: &[TowerElem]| -> (MPoly, MPoly) {
                let mut num_acc = MPoly::zero(nfree);
                let mut den_acc = MPoly::one(&base, nfree);
                for (i, c) in coeffs.iter().enumerate() {
                    let (cn, cd) = elem_to_frac(kq, base_level, nfree, c, lvl - 1);
                    let x_pow = MPoly::var(&base, nfree, fvar).pow(&base, i as u64);
                    // acc + (cn/cd) x^i = (num_acc cd + cn x^i den_acc) / (den_acc cd)
                    num_acc = num_acc
                        .mul(&base, &cd)
                        .add(&base, &cn.mul(&base, &x_pow).mul(&base, &den_acc));
                    den_acc = den_acc.mul(&base, &cd);
                }
                (num_acc, den_acc)
            };
            let (nn, nd) = poly_frac(num);
            let (dn, dd) = poly_frac(den);
            // (nn/nd) / (dn/dd) = nn dd / (nd dn)
            (nn.mul(&base, &dd), nd.mul(&base, &dn))
        }
        _ => panic!("residue field must be purely transcendental over the base"),
    }
}

/// One lift of the source prime.
#[derive(Debug, Clone)]
pub struct LiftEntry {
    pub generators: Vec<MPoly>,
    pub rendered: Vec<String>,
    /// Minimal `m >= 1` such that the lift is sigma^m-stable.
    pub min_power: usize,
    pub contracts_to_source: bool,
}

/// Report of a lift search: all primes of `S` above the source, with
/// their minimal stabilizing powers and the sigma permutation among them.
#[derive(Debug, Clone)]
pub struct LiftReport {
    pub source_rendered: Vec<String>,
    /// Certified exact period of the source prime.
    pub source_period: usize,
    pub requested_power: usize,
    /// Lifts are searched up to stabilizing power `l_max * requested_power`.
    pub exhausted_bound: usize,
    pub entries: Vec<LiftEntry>,
    /// `permutation[i] = j`: applying sigma^(source period) to lift `i`
    /// yields lift `j`.
    pub permutation: Vec<usize>,
    /// Irreducible fiber factors (provenance).
    pub fiber_factors: Vec<String>,
}

impl LiftReport {
    /// Number of lifts that are sigma^p-stable.
    pub fn lifts_at_power(&self, p: usize) -> usize {
        self.entries.iter().filter(|e| p % e.min_power == 0).count()
    }

    /// Least `l <= l_max` such that some lift is sigma^(l*d)-stable.
    pub fn minimal_l(&self, l_max: usize) -> Option<usize> {
        (1..=l_max).find(|l| self.lifts_at_power(l * self.requested_power) > 0)
    }
}

/// Enumerates the primes of `S` above a sigma^d-prime `q` of `R` (via the
/// fiber polynomial over the residue field), computes the sigma-induced
/// permutation among them, and verifies `q' /\ R = q` by elimination.
pub fn lift_search(
    incl: &Inclusion,
    q_gens: &[MPoly],
    d: usize,
    l_max: usize,
) -> Result<LiftReport, IdealError> {
    assert!(d >= 1 && l_max >= 1);
    let t = incl.s_ring().tower();
    let q_ideal = SigmaIdeal::new(incl.r_ring().clone(), q_gens.to_vec());
    let source_period = minimal_period(&q_ideal, d)?
        .ok_or_else(|| IdealError::NotSigmaStable(d, "source prime".to_string()))?;

    let res = residue_field(incl.r_ring(), q_gens)?;
    let base_level = incl.r_ring().tower().level();
    let nfree = res.free_vars.len();

    // fiber relations in kq[s_vars]
    let kq = &res.kq;
    let incl_kq = FieldMorphism::inclusion(incl.r_ring().tower(), kq)?;
    let m = incl.s_ring().nvars();
    let mut rels: Vec<MPoly> = Vec::new();
    for (i, img) in incl.r_images().iter().enumerate() {
        let lifted = img.map_coeffs(&incl_kq)?;
        let rel = lifted.sub(kq, &MPoly::constant(kq, m, res.images[i].clone()));
        if !rel.is_zero() {
            rels.push(rel);
        }
    }

    // solve substitution-form relations over kq
    let mut solved: Vec<Option<MPoly>> = vec![None; m];
    'solve: loop {
        for (ri, rel) in rels.iter().enumerate() {
            if let Some(c) = rel.constant_value(kq) {
                if kq.is_zero(&c) {
                    rels.remove(ri);
                    continue 'solve;
                }
                return Err(IdealError::FiberNotFinite("fiber relations inconsistent".into()));
            }
            for v in 0..m {
                if solved[v].is_some() || rel.degree_in(v) != 1 {
                    continue;
                }
                let coeff = rel.coeff_of_power(kq, v, 1);
                let Some(c) = coeff.constant_value(kq) else { continue };
                if kq.is_zero(&c) {
                    continue;
                }
                let rest = rel.coeff_of_power(kq, v, 0);
                if rest.involves_var(v) {
                    continue;
                }
                let expr = rest.scale(kq, &kq.neg(&kq.inv(&c)?));
                let mut images: Vec<MPoly> = (0..m).map(|k| MPoly::var(kq, m, k)).collect();
                images[v] = expr.clone();
                for s in solved.iter_mut().flatten() {
                    *s = s.substitute(kq, &images);
                }
                solved[v] = Some(expr);
                rels.remove(ri);
                for p in rels.iter_mut() {
                    *p = p.substitute(kq, &images);
                }
                continue 'solve;
            }
        }
        break;
    }

    let unsolved: Vec<usize> = (0..m).filter(|&v| solved[v].is_none()).collect();
    let mut fiber_factor_strings: Vec<String> = Vec::new();
    let mut entries: Vec<LiftEntry> = Vec::new();

    // pulled-back source generators, shared by every lift
    let pullback: Vec<MPoly> = q_gens.iter().map(|g| incl.push(g)).collect();

    if rels.is_empty() && unsolved.is_empty() {
        // zero-dimensional fiber that is a single rational point
        let gens = groebner::buchberger(t, &pullback, MonomialOrder::Lex);
        entries.push(LiftEntry {
            rendered: gens.iter().map(|g| incl.s_ring().render(g)).collect(),
            generators: gens,
            min_power: source_period,
            contracts_to_source: true,
        });
    } else {
        if unsolved.len() != 1 {
            return Err(IdealError::FiberNotFinite(format!(
                "{} variables remain in the fiber",
                unsolved.len()
            )));
        }
        let y = unsolved[0];
        if rels.is_empty() {
            return Err(IdealError::FiberNotFinite(format!(
                "variable {} is free in the fiber",
                incl.s_ring().var_names()[y]
            )));
        }
        // collect the univariate relations in y and take their gcd
        let mut fiber_poly: Option<crate::fieldtower::UniPoly> = None;
        for rel in &rels {
            for v in 0..m {
                if v != y && rel.involves_var(v) {
                    return Err(IdealError::FiberNotFinite(
                        "fiber relation involves several variables".into(),
                    ));
                }
            }
            let deg = rel.degree_in(y);
            let mut coeffs = Vec::with_capacity(deg as usize + 1);
            for k in 0..=deg {
                let c = rel
                    .coeff_of_power(kq, y, k)
                    .constant_value(kq)
                    .expect("univariate after substitution");
                coeffs.push(c);
            }
            let up = crate::fieldtower::UniPoly::new(kq, coeffs);
            fiber_poly = Some(match fiber_poly {
                None => up,
                Some(prev) => prev.gcd(kq, &up),
            });
        }
        let fiber_poly = fiber_poly.expect("nonempty relations");
        if fiber_poly.is_zero() {
            return Err(IdealError::FiberNotFinite("fiber relations vanish".into()));
        }
        if fiber_poly.degree() == Some(0) {
            // empty fiber: no lifts
        } else {
            let fac = factor_univariate(kq, &fiber_poly)?;
            for (h, _mult) in &fac.factors {
                fiber_factor_strings.push(kq.render_poly(h, "y"));
                let h_s = clear_and_push(incl, kq, base_level, nfree, &res.free_vars, h, y)?;
                let mut gens = pullback.clone();
                gens.push(h_s);
                let gb = groebner::buchberger(t, &gens, MonomialOrder::Lex);
                entries.push(LiftEntry {
                    rendered: gb.iter().map(|g| incl.s_ring().render(g)).collect(),
                    generators: gb,
                    min_power: 0, // filled below
                    contracts_to_source: false,
                });
            }
            entries.sort_by(|a, b| a.rendered.cmp(&b.rendered));
        }
    }

    // sigma^{source_period} permutation among the lifts
    let ord = MonomialOrder::DegRevLex;
    let gbs: Vec<Vec<MPoly>> =
        entries.iter().map(|e| groebner::buchberger(t, &e.generators, ord)).collect();
    let mut permutation = vec![0usize; entries.len()];
    for (i, e) in entries.iter().enumerate() {
        let mut matches = Vec::new();
        for (j, gb) in gbs.iter().enumerate() {
            let mut all_in = true;
            for g in &e.generators {
                let shifted = incl.s_ring().apply_sigma_power(g, source_period)?;
                if !groebner::membership(t, &shifted, gb, ord) {
                    all_in = false;
                    break;
                }
            }
            if all_in {
                matches.push(j);
            }
        }
        if matches.len() != 1 {
            return Err(IdealError::FiberNotFinite(format!(
                "sigma does not permute the lifts uniquely ({} matches)",
                matches.len()
            )));
        }
        permutation[i] = matches[0];
    }

    // minimal stabilizing power = source period * orbit length
    for i in 0..entries.len() {
        let mut len = 1usize;
        let mut cur = permutation[i];
        while cur != i {
            cur = permutation[cur];
            len += 1;
        }
        entries[i].min_power = source_period * len;
    }

    // contraction check: each lift must contract to the source prime
    let r_n = incl.r_ring().nvars();
    let _ = r_n;
    for e in entries.iter_mut() {
        let contracted =
            groebner::contract_through(t, &e.generators, incl.r_images(), m);
        let c_ideal = SigmaIdeal::new(incl.r_ring().clone(), contracted);
        e.contracts_to_source = c_ideal.same_ideal(&q_ideal);
    }

    let exhausted = l_max * d;
    entries.retain(|e| e.min_power <= exhausted);
    // recompute the permutation indices after the retain (orbits are
    // closed under sigma, so retained entries only point at each other)
    let gbs: Vec<Vec<MPoly>> =
        entries.iter().map(|e| groebner::buchberger(t, &e.generators, ord)).collect();
    let mut permutation = vec![0usize; entries.len()];
    for (i, e) in entries.iter().enumerate() {
        for (j, gb) in gbs.iter().enumerate() {
            let mut all_in = true;
            for g in &e.generators {
                let shifted = incl.s_ring().apply_sigma_power(g, source_period)?;
                if !groebner::membership(t, &shifted, gb, ord) {
                    all_in = false;
                    break;
                }
            }
            if all_in {
                permutation[i] = j;
                break;
            }
        }
    }

    Ok(LiftReport {
        source_rendered: q_ideal.rendered_generators(),
        source_period,
        requested_power: d,
        exhausted_bound: exhausted,
        entries,
        permutation,
        fiber_factors: fiber_factor_strings,
    })
}

/// Clears denominators of an irreducible fiber factor and pushes it into
/// the `S`-ring: free residue variables go to their `R`-images, the fiber
/// variable stays.
fn clear_and_push(
    incl: &Inclusion,
    kq: &FieldTower,
    base_level: usize,
    nfree: usize,
    free_vars: &[usize],
    h: &crate::fieldtower::UniPoly,
    y: usize,
) -> Result<MPoly, IdealError> {
    let base = kq.prefix(base_level);
    let fracs: Vec<(MPoly, MPoly)> = h
        .coeffs()
        .iter()
        .map(|c| elem_to_frac(kq, base_level, nfree, c, kq.level()))
        .collect();
    let mut common_den = MPoly::one(&base, nfree);
    for (_, d) in &fracs {
        common_den = common_den.mul(&base, d);
    }
    // coefficient i becomes n_i * prod_{k != i} d_k
    let t = incl.s_ring().tower();
    let m = incl.s_ring().nvars();
    let free_images: Vec<MPoly> =
        free_vars.iter().map(|&v| incl.r_images()[v].clone()).collect();
    let mut out = MPoly::zero(m);
    for (i, (n_i, _)) in fracs.iter().enumerate() {
        let mut c = n_i.clone();
        for (k, (_, d_k)) in fracs.iter().enumerate() {
            if k != i {
                c = c.mul(&base, d_k);
            }
        }
        // c is a polynomial in the free variables; push it into S
        let c_s = if nfree == 0 {
            let v = c.constant_value(&base).expect("no free variables");
            MPoly::constant(t, m, v)
        } else {
            c.substitute(t, &free_images)
        };
        let y_pow = MPoly::var(t, m, y).pow(t, i as u64);
        out = out.add(t, &c_s.mul(t, &y_pow));
    }
    Ok(out)
}

/// One row of a Chevalley witness table.
#[derive(Debug, Clone)]
pub struct WitnessRow {
    pub label: String,
    pub d: usize,
    pub source_period: usize,
    /// Least `l` with a sigma^(l*d)-prime lift, within the bound.
    pub minimal_l: Option<usize>,
    pub lifts_at_d: usize,
    pub report: LiftReport,
}

/// Aggregate over a parameterized family of source primes.
#[derive(Debug, Clone)]
pub struct WitnessTable {
    pub rows: Vec<WitnessRow>,
    /// Least uniform `l <= l_max` covering the whole family, if any.
    pub uniform_l: Option<usize>,
    /// Whether the naive statement (`l = 1`) holds for the whole family.
    pub naive_holds: bool,
}

/// Runs `lift_search` over a family of sigma^d-primes and aggregates the
/// minimal powers.
pub fn chevalley_witness(
    incl: &Inclusion,
    family: &[(String, Vec<MPoly>, usize)],
    l_max: usize,
) -> Result<WitnessTable, IdealError> {
    let mut rows = Vec::with_capacity(family.len());
    for (label, gens, d) in family {
        let report = lift_search(incl, gens, *d, l_max)?;
        rows.push(WitnessRow {
            label: label.clone(),
            d: *d,
            source_period: report.source_period,
            minimal_l: report.minimal_l(l_max),
            lifts_at_d: report.lifts_at_power(*d),
            report,
        });
    }
    let uniform_l =
        (1..=l_max).find(|l| rows.iter().all(|r| r.report.lifts_at_power(l * r.d) > 0));
    let naive_holds = rows.iter().all(|r| r.lifts_at_d > 0);
    Ok(WitnessTable { rows, uniform_l, naive_holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldtower::{rationals, SigmaField, UniPoly};

    /// Intro setting over base Q(sqrt a): S = K[x] with sigma(x) = -x,
    /// R = K[u] with u -> x^2.
    fn intro_inclusion(a: i64) -> (Inclusion, FieldTower) {
        let q = rationals();
        let k = if a == 0 {
            q
        } else {
            q.extend_algebraic("ra", &UniPoly::from_i64(&q, &[-a, 0, 1])).unwrap()
        };
        let sf = SigmaField::constant(k.clone());
        let s_ring = SigmaPolyRing::new(
            sf.clone(),
            vec!["x".into()],
            vec![Some(MPoly::var(&k, 1, 0).neg(&k))],
        );
        let r_ring = SigmaPolyRing::new(
            sf,
            vec!["u".into()],
            vec![Some(MPoly::var(&k, 1, 0))],
        );
        let images = vec![MPoly::var(&k, 1, 0).pow(&k, 2)];
        (Inclusion::new(r_ring, s_ring, images).unwrap(), k)
    }

    #[test]
    fn intro_example_lifts() {
        let (incl, k) = intro_inclusion(2);
        let u = incl.r_ring().var(0);
        let q_gens = vec![u.sub(&k, &MPoly::constant(&k, 1, k.from_i64(2)))];
        let report = lift_search(&incl, &q_gens, 1, 4).unwrap();
        assert_eq!(report.source_period, 1);
        assert_eq!(report.lifts_at_power(1), 0);
        assert_eq!(report.lifts_at_power(2), 2);
        assert_eq!(report.entries.len(), 2);
        // sigma swaps the two lifts
        assert_eq!(report.permutation, vec![1, 0]);
        for e in &report.entries {
            assert!(e.contracts_to_source);
            assert_eq!(e.min_power, 2);
        }
    }

    #[test]
    fn intro_example_origin() {
        // q = (u): single lift (x) at power 1
        let (incl, k) = intro_inclusion(0);
        let u = incl.r_ring().var(0);
        let report = lift_search(&incl, &[u.clone()], 1, 4).unwrap();
        let _ = k;
        assert_eq!(report.entries.len(), 1);
        assert_eq!(report.entries[0].min_power, 1);
        assert!(report.entries[0].contracts_to_source);
        assert_eq!(report.lifts_at_power(1), 1);
    }

    #[test]
    fn identity_inclusion_lifts_trivially() {
        let q = rationals();
        let sf = SigmaField::constant(q.clone());
        let ring = SigmaPolyRing::new(
            sf,
            vec!["x".into()],
            vec![Some(MPoly::var(&q, 1, 0))],
        );
        let incl =
            Inclusion::new(ring.clone(), ring.clone(), vec![MPoly::var(&q, 1, 0)]).unwrap();
        let x = ring.var(0);
        let gens = vec![x.sub(&q, &MPoly::one(&q, 1))];
        let report = lift_search(&incl, &gens, 1, 4).unwrap();
        assert_eq!(report.entries.len(), 1);
        assert_eq!(report.entries[0].min_power, 1);
        assert!(report.entries[0].contracts_to_source);
    }

    /// Statement A data for a given d over its base field.
    fn statement_a_inclusion(d: usize) -> (Inclusion, FieldTower) {
        let q = rationals();
        // c_d with c_d^d = -1: c = -1 for odd d, c = i over Q(i) for d = 2
        let (k, c) = if d % 2 == 1 {
            (q.clone(), q.from_i64(-1))
        } else {
            let k = q.extend_algebraic("i", &UniPoly::from_i64(&q, &[1, 0, 1])).unwrap();
            let c = k.generator(0);
            (k, c)
        };
        let sf = SigmaField::constant(k.clone());
        // S = K[td, s], sigma(td) = c*td, sigma(s) = s; R = K[t, td],
        // t -> s^2, td -> td
        let td_img_s = MPoly::var(&k, 2, 0).scale(&k, &c);
        let s_img = MPoly::var(&k, 2, 1);
        let s_ring = SigmaPolyRing::new(
            sf.clone(),
            vec!["td".into(), "s".into()],
            vec![Some(td_img_s), Some(s_img)],
        );
        let r_ring = SigmaPolyRing::new(
            sf,
            vec!["t".into(), "td".into()],
            vec![Some(MPoly::var(&k, 2, 0)), Some(MPoly::var(&k, 2, 1).scale(&k, &c))],
        );
        let images = vec![MPoly::var(&k, 2, 1).pow(&k, 2), MPoly::var(&k, 2, 0)];
        (Inclusion::new(r_ring, s_ring, images).unwrap(), k)
    }

    #[test]
    fn statement_a_counterexample() {
        for d in 1..=3usize {
            let (incl, k) = statement_a_inclusion(d);
            let t_var = incl.r_ring().var(0);
            let td = incl.r_ring().var(1);
            let gens = vec![t_var.sub(&k, &td.pow(&k, 2))];
            let report = lift_search(&incl, &gens, d, 4).unwrap();
            assert_eq!(report.lifts_at_power(d), 0, "d = {d}: no sigma^d lift");
            assert_eq!(report.lifts_at_power(2 * d), 2, "d = {d}: two sigma^(2d) lifts");
            for e in &report.entries {
                assert!(e.contracts_to_source);
            }
        }
    }

    #[test]
    fn witness_table_intro_family() {
        let mut rows = Vec::new();
        for a in [2i64, 3, 5] {
            let (incl, k) = intro_inclusion(a);
            let u = incl.r_ring().var(0);
            let gens = vec![u.sub(&k, &MPoly::constant(&k, 1, k.from_i64(a)))];
            let table = chevalley_witness(
                &incl,
                &[(format!("a={a}"), gens, 1)],
                4,
            )
            .unwrap();
            rows.push(table);
        }
        for table in rows {
            assert_eq!(table.uniform_l, Some(2));
            assert!(!table.naive_holds);
        }
    }
}
