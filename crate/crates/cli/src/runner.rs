//! Scenario execution: declaration building (with name and type checks
//! before any command runs), command dispatch into the core operations,
//! expectation checking, and report assembly.

use std::collections::BTreeMap;
use std::time::Instant;

use serde_json::json;
use thiserror::Error;

use sigchev_core::diffpoly::{limit_degree, DiffPolyRing};
use sigchev_core::fieldtower::{
    make_prime_field, FieldMorphism, FieldTower, SigmaField, TowerElem, UniPoly,
};
use sigchev_core::galois::{
    delta_constants, dmatrix, make_deltasigma_field, pseudo_simple_probe, pv_construct,
    sigma_l_isomorphism_search, AlgebraPresentation, DeltaSigmaField, ProbeResult, PVRing,
    SigmaChoice, SigmaLResult,
};
use sigchev_core::kernels::{
    make_kernel, prolong, realize, spec_transport, DiffKernel, InversiveClosure, ProlongChoice,
    TransportReport,
};
use sigchev_core::multipoly::MPoly;
use sigchev_core::pseudofield::{
    compat_test, make_pseudofield, trivial_extension, CompatResult, PseudoField,
    PseudoFieldElem,
};
use sigchev_core::sigmaideal::{
    chevalley_witness, lift_search, Inclusion, LiftReport, SigmaIdeal, SigmaPolyRing,
    WitnessTable,
};

use crate::ast::*;
use crate::lexer::SyntaxError;
use crate::parser::parse_scenario;
use crate::report::{AssertionSummary, CommandRecord, Report, SCHEMA_VERSION};

#[derive(Debug, Clone, Error)]
pub enum RunError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("operation failed while building declarations: {0}")]
    Build(String),
}

impl RunError {
    /// Exit-code class: 2 for parse/type errors, 3 for operation errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Syntax(_) | RunError::UnknownName(_) | RunError::TypeMismatch(_) => 2,
            RunError::Build(_) => 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub assert_mode: bool,
    pub seed: u64,
    pub default_max_power: usize,
    pub default_bound: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { assert_mode: false, seed: 0, default_max_power: 4, default_bound: 16 }
    }
}

/// Parses, builds, type-checks and executes a scenario.
pub fn run_text(name: &str, text: &str, opts: &RunOptions) -> Result<Report, RunError> {
    let scenario = parse_scenario(text)?;
    run_scenario(name, &scenario, opts)
}

/// Typed outcome of one command, kept for expectation checking.
enum Outcome {
    Decompose { period: usize, axioms_ok: bool, sampled: usize },
    Compat(CompatResult),
    Lift(LiftReport),
    Witness(WitnessTable),
    Prolong { choices: Vec<ProlongChoice> },
    Realize { law: bool, final_length: usize, degrees: Vec<i64> },
    LimitDeg { values: Vec<usize> },
    InvClosure { u_injective: bool, reports: Vec<TransportReport> },
    Pv(PvOutcome),
    Probe(ProbeResult),
    Failed(String),
}

struct PvOutcome {
    delta_d_zero: bool,
    sigma_ratio_same: String,
    sigma_ratio_opposite: String,
    minimal_l_same: Option<usize>,
    minimal_l_opposite: Option<usize>,
    constants_trivial: bool,
    constants_basis: Vec<String>,
}

struct Env {
    fields: BTreeMap<String, FieldTower>,
    morphisms: BTreeMap<String, FieldMorphism>,
    pseudofields: BTreeMap<String, PseudoField>,
    rings: BTreeMap<String, SigmaPolyRing>,
    inclusions: BTreeMap<String, Inclusion>,
    ideals: BTreeMap<String, (String, Vec<MPoly>)>,
    dsfields: BTreeMap<String, DeltaSigmaField>,
    presentations: BTreeMap<String, (FieldTower, usize)>,
    kernels: BTreeMap<String, DiffKernel>,
    cmd_kinds: BTreeMap<String, &'static str>,
}

impl Env {
    fn new() -> Env {
        Env {
            fields: BTreeMap::new(),
            morphisms: BTreeMap::new(),
            pseudofields: BTreeMap::new(),
            rings: BTreeMap::new(),
            inclusions: BTreeMap::new(),
            ideals: BTreeMap::new(),
            dsfields: BTreeMap::new(),
            presentations: BTreeMap::new(),
            kernels: BTreeMap::new(),
            cmd_kinds: BTreeMap::new(),
        }
    }

    fn field(&self, name: &str) -> Result<&FieldTower, RunError> {
        self.fields.get(name).ok_or_else(|| RunError::UnknownName(name.to_string()))
    }

    fn pseudofield(&self, name: &str) -> Result<&PseudoField, RunError> {
        self.pseudofields.get(name).ok_or_else(|| RunError::UnknownName(name.to_string()))
    }

    fn ring(&self, name: &str) -> Result<&SigmaPolyRing, RunError> {
        self.rings.get(name).ok_or_else(|| RunError::UnknownName(name.to_string()))
    }

    fn sigma_of(&self, tower: &FieldTower, s: &SigmaRef) -> Result<FieldMorphism, RunError> {
        match s {
            SigmaRef::Id => Ok(FieldMorphism::identity(tower)),
            SigmaRef::Named(n) => {
                let m = self
                    .morphisms
                    .get(n)
                    .ok_or_else(|| RunError::UnknownName(n.clone()))?;
                if m.source() != tower || m.target() != tower {
                    return Err(RunError::TypeMismatch(format!(
                        "morphism `{n}` is not an endomorphism of the given field"
                    )));
                }
                Ok(m.clone())
            }
        }
    }
}

// ---- expression evaluation --------------------------------------------------

fn eval_elem(tower: &FieldTower, e: &Expr) -> Result<TowerElem, RunError> {
    match e {
        Expr::Int(n) => Ok(tower.from_i64(*n)),
        Expr::Var(v) => {
            let idx = tower
                .generator_names()
                .iter()
                .position(|n| n == v)
                .ok_or_else(|| RunError::UnknownName(v.clone()))?;
            Ok(tower.generator(idx))
        }
        Expr::SVar(_, _) => Err(RunError::TypeMismatch(
            "shifted indeterminates are not field elements".to_string(),
        )),
        Expr::Neg(a) => Ok(tower.neg(&eval_elem(tower, a)?)),
        Expr::Add(a, b) => Ok(tower.add(&eval_elem(tower, a)?, &eval_elem(tower, b)?)),
        Expr::Sub(a, b) => Ok(tower.sub(&eval_elem(tower, a)?, &eval_elem(tower, b)?)),
        Expr::Mul(a, b) => Ok(tower.mul(&eval_elem(tower, a)?, &eval_elem(tower, b)?)),
        Expr::Div(a, b) => tower
            .div(&eval_elem(tower, a)?, &eval_elem(tower, b)?)
            .map_err(|e| RunError::Build(e.to_string())),
        Expr::Pow(a, n) => Ok(tower.pow(&eval_elem(tower, a)?, *n as u64)),
    }
}

fn eval_poly(ring: &SigmaPolyRing, e: &Expr) -> Result<MPoly, RunError> {
    let t = ring.tower();
    let n = ring.nvars();
    match e {
        Expr::Int(k) => Ok(MPoly::constant(t, n, t.from_i64(*k))),
        Expr::Var(v) => {
            if let Some(idx) = ring.var_index(v) {
                return Ok(ring.var(idx));
            }
            if let Some(idx) = t.generator_names().iter().position(|g| g == v) {
                return Ok(MPoly::constant(t, n, t.generator(idx)));
            }
            Err(RunError::UnknownName(v.clone()))
        }
        Expr::SVar(j, v) => {
            let name = format!("s{j}({v})");
            if let Some(idx) = ring.var_index(&name) {
                return Ok(ring.var(idx));
            }
            if *j == 0 {
                if let Some(idx) = ring.var_index(v) {
                    return Ok(ring.var(idx));
                }
            }
            if let Some(idx) = t.generator_names().iter().position(|g| g == &name) {
                return Ok(MPoly::constant(t, n, t.generator(idx)));
            }
            Err(RunError::UnknownName(name))
        }
        Expr::Neg(a) => Ok(eval_poly(ring, a)?.neg(t)),
        Expr::Add(a, b) => Ok(eval_poly(ring, a)?.add(t, &eval_poly(ring, b)?)),
        Expr::Sub(a, b) => Ok(eval_poly(ring, a)?.sub(t, &eval_poly(ring, b)?)),
        Expr::Mul(a, b) => Ok(eval_poly(ring, a)?.mul(t, &eval_poly(ring, b)?)),
        Expr::Div(a, b) => {
            let num = eval_poly(ring, a)?;
            let den = eval_poly(ring, b)?;
            let c = den.constant_value(t).ok_or_else(|| {
                RunError::TypeMismatch("division by a non-constant polynomial".to_string())
            })?;
            let inv = t.inv(&c).map_err(|e| RunError::Build(e.to_string()))?;
            Ok(num.scale(t, &inv))
        }
        Expr::Pow(a, k) => Ok(eval_poly(ring, a)?.pow(t, *k as u64)),
    }
}

/// Evaluates a univariate polynomial in `y` over a tower.
fn eval_unipoly(tower: &FieldTower, e: &Expr) -> Result<UniPoly, RunError> {
    let scratch = SigmaPolyRing::new(
        SigmaField::constant(tower.clone()),
        vec!["y".to_string()],
        vec![Some(MPoly::var(tower, 1, 0))],
    );
    let p = eval_poly(&scratch, e)?;
    let deg = p.degree_in(0);
    let mut coeffs = Vec::with_capacity(deg as usize + 1);
    for k in 0..=deg {
        let c = p.coeff_of_power(tower, 0, k).constant_value(tower).ok_or_else(|| {
            RunError::TypeMismatch("minimal polynomial must be univariate in y".to_string())
        })?;
        coeffs.push(c);
    }
    Ok(UniPoly::new(tower, coeffs))
}

/// Builds a tower level by level from `alg`/`trans` specs; used by both
/// presentations and kernel components.
fn build_levels(
    base: &FieldTower,
    levels: &[LevelExpr],
    gen_base_name: &str,
) -> Result<FieldTower, RunError> {
    let mut tower = base.clone();
    for (j, lvl) in levels.iter().enumerate() {
        let name = format!("s{j}({gen_base_name})");
        match lvl {
            LevelExpr::Trans => {
                tower = tower
                    .extend_transcendental(&name)
                    .map_err(|e| RunError::Build(e.to_string()))?;
            }
            LevelExpr::Alg(expr) => {
                let mp = eval_unipoly(&tower, expr)?;
                match mp.degree() {
                    None | Some(0) => {
                        return Err(RunError::TypeMismatch(format!(
                            "level {j} polynomial must have positive degree"
                        )))
                    }
                    _ => {
                        // certification of primality happens in make_kernel
                        // / at use sites
                        tower = tower.extend_algebraic_unchecked(&name, &mp);
                    }
                }
            }
        }
    }
    Ok(tower)
}

// ---- expectation keys --------------------------------------------------------

fn allowed_key(kind: &str, key: &str) -> bool {
    match kind {
        "decompose" => matches!(key, "period" | "axioms_ok" | "sampled"),
        "compat" => matches!(key, "minimal_period" | "resolved"),
        "lift" => {
            matches!(
                key,
                "source_period" | "count" | "sigma_swaps" | "contractions_ok" | "min_powers"
            ) || key.strip_prefix("lifts_at_").map_or(false, |s| s.parse::<usize>().is_ok())
        }
        "witness" => matches!(key, "uniform_l" | "naive_holds" | "minimal_ls"),
        "prolong" => matches!(key, "choices"),
        "realize" => matches!(key, "truncation_law" | "final_length" | "level_degrees"),
        "limitdeg" => matches!(key, "values"),
        "invclosure" => matches!(key, "u_injective" | "round_trips" | "periods"),
        "pv" => matches!(
            key,
            "delta_d_zero"
                | "sigma_ratio_same"
                | "sigma_ratio_opposite"
                | "minimal_l_same"
                | "minimal_l_opposite"
                | "constants_trivial"
        ),
        "probe" => matches!(key, "result" | "witness"),
        _ => false,
    }
}

// ---- the runner ---------------------------------------------------------------

pub fn run_scenario(
    name: &str,
    scenario: &Scenario,
    opts: &RunOptions,
) -> Result<Report, RunError> {
    let started = Instant::now();
    let mut env = Env::new();

    // build phase: declarations in order, plus command/expectation checks
    for stmt in &scenario.stmts {
        build_stmt(&mut env, stmt)?;
    }

    // execution phase
    let mut outcomes: BTreeMap<String, Outcome> = BTreeMap::new();
    let mut records: Vec<CommandRecord> = Vec::new();
    for stmt in &scenario.stmts {
        if let Stmt::Cmd { label, kind } = stmt {
            let (outcome, provenance) = execute(&env, kind, opts);
            let (ok, error, data) = describe(&outcome);
            records.push(CommandRecord {
                label: label.clone(),
                kind: kind.kind_name().to_string(),
                ok,
                error,
                data,
                provenance,
            });
            outcomes.insert(label.clone(), outcome);
        }
    }

    // expectation phase
    let mut checked = 0usize;
    let mut failures: Vec<String> = Vec::new();
    for stmt in &scenario.stmts {
        if let Stmt::Expect { label, checks } = stmt {
            let outcome = outcomes
                .get(label)
                .ok_or_else(|| RunError::UnknownName(label.clone()))?;
            for (key, val) in checks {
                checked += 1;
                match check_expectation(outcome, key, val) {
                    Ok(true) => {}
                    Ok(false) => failures.push(format!("{label}.{key}: value mismatch")),
                    Err(msg) => failures.push(format!("{label}.{key}: {msg}")),
                }
            }
        }
    }

    let any_error = records.iter().any(|r| !r.ok);
    let passed = failures.is_empty() && !any_error;
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        scenario: name.to_string(),
        seed: opts.seed,
        commands: records,
        assertions: AssertionSummary {
            checked,
            failed: failures.len(),
            failures,
        },
        passed,
        timing_ms: started.elapsed().as_millis() as u64,
    })
}

fn dup_check(taken: bool, name: &str) -> Result<(), RunError> {
    if taken {
        Err(RunError::TypeMismatch(format!("name `{name}` declared twice")))
    } else {
        Ok(())
    }
}

fn build_stmt(env: &mut Env, stmt: &Stmt) -> Result<(), RunError> {
    match stmt {
        Stmt::Field { name, expr } => {
            dup_check(env.fields.contains_key(name), name)?;
            let tower = match expr {
                FieldExpr::Rationals => {
                    make_prime_field(0).map_err(|e| RunError::Build(e.to_string()))?
                }
                FieldExpr::Galois(p) => {
                    make_prime_field(*p).map_err(|e| RunError::Build(e.to_string()))?
                }
                FieldExpr::Algebraic { base, gen, minpoly } => {
                    let b = env.field(base)?.clone();
                    let mp = eval_unipoly(&b, minpoly)?;
                    b.extend_algebraic(gen, &mp).map_err(|e| RunError::Build(e.to_string()))?
                }
                FieldExpr::Transcendental { base, gen } => {
                    let b = env.field(base)?.clone();
                    b.extend_transcendental(gen).map_err(|e| RunError::Build(e.to_string()))?
                }
            };
            env.fields.insert(name.clone(), tower);
        }
        Stmt::Morphism { name, source, target, images } => {
            dup_check(env.morphisms.contains_key(name), name)?;
            let src = env.field(source)?.clone();
            let dst = env.field(target)?.clone();
            let imgs: Result<Vec<TowerElem>, RunError> =
                images.iter().map(|e| eval_elem(&dst, e)).collect();
            let m = FieldMorphism::make(&src, &dst, imgs?)
                .map_err(|e| RunError::Build(e.to_string()))?;
            env.morphisms.insert(name.clone(), m);
        }
        Stmt::PseudoField { name, expr } => {
            dup_check(env.pseudofields.contains_key(name), name)?;
            let pf = match expr {
                PseudoExpr::Components { comps, maps } => {
                    if comps.len() != maps.len() {
                        return Err(RunError::TypeMismatch(
                            "component and map counts differ".to_string(),
                        ));
                    }
                    let towers: Result<Vec<FieldTower>, RunError> =
                        comps.iter().map(|c| env.field(c).cloned()).collect();
                    let towers = towers?;
                    let mut ms = Vec::with_capacity(maps.len());
                    for (i, m) in maps.iter().enumerate() {
                        let src = &towers[i];
                        match m {
                            SigmaRef::Id => ms.push(FieldMorphism::identity(src)),
                            SigmaRef::Named(n) => {
                                let mor = env
                                    .morphisms
                                    .get(n)
                                    .ok_or_else(|| RunError::UnknownName(n.clone()))?;
                                ms.push(mor.clone());
                            }
                        }
                    }
                    make_pseudofield(towers, ms).map_err(|e| RunError::Build(e.to_string()))?
                }
                PseudoExpr::Trivial { base, sigma, copies } => {
                    let b = env.field(base)?.clone();
                    let s = env.sigma_of(&b, sigma)?;
                    let pf = PseudoField::from_sigma_field(b, s)
                        .map_err(|e| RunError::Build(e.to_string()))?;
                    trivial_extension(&pf, *copies)
                }
            };
            env.pseudofields.insert(name.clone(), pf);
        }
        Stmt::Ring { name, field, sigma, vars, images } => {
            dup_check(env.rings.contains_key(name), name)?;
            let tower = env.field(field)?.clone();
            let sf = SigmaField::new(tower.clone(), env.sigma_of(&tower, sigma)?)
                .map_err(|e| RunError::Build(e.to_string()))?;
            if vars.len() != images.len() {
                return Err(RunError::TypeMismatch(
                    "variable and sigma-image counts differ".to_string(),
                ));
            }
            // two-phase: the images are polynomials in the declared vars
            let scratch = SigmaPolyRing::new(
                sf.clone(),
                vars.clone(),
                vars.iter().enumerate().map(|(i, _)| Some(MPoly::var(&tower, vars.len(), i))).collect(),
            );
            let mut imgs: Vec<Option<MPoly>> = Vec::with_capacity(images.len());
            for img in images {
                match img {
                    None => imgs.push(None),
                    Some(e) => imgs.push(Some(eval_poly(&scratch, e)?)),
                }
            }
            env.rings.insert(name.clone(), SigmaPolyRing::new(sf, vars.clone(), imgs));
        }
        Stmt::Truncation { name, field, sigma, vars, cutoff } => {
            dup_check(env.rings.contains_key(name), name)?;
            let tower = env.field(field)?.clone();
            let sf = SigmaField::new(tower, env.sigma_of(env.field(field)?, sigma)?)
                .map_err(|e| RunError::Build(e.to_string()))?;
            let dp = DiffPolyRing::new(sf, vars.clone());
            env.rings.insert(name.clone(), dp.truncation(*cutoff).sigma_poly_ring());
        }
        Stmt::Inclusion { name, r, s, images } => {
            dup_check(env.inclusions.contains_key(name), name)?;
            let r_ring = env.ring(r)?.clone();
            let s_ring = env.ring(s)?.clone();
            let imgs: Result<Vec<MPoly>, RunError> =
                images.iter().map(|e| eval_poly(&s_ring, e)).collect();
            let incl = Inclusion::new(r_ring, s_ring, imgs?)
                .map_err(|e| RunError::Build(e.to_string()))?;
            env.inclusions.insert(name.clone(), incl);
        }
        Stmt::Ideal { name, ring, gens } => {
            dup_check(env.ideals.contains_key(name), name)?;
            let r = env.ring(ring)?.clone();
            let gs: Result<Vec<MPoly>, RunError> =
                gens.iter().map(|e| eval_poly(&r, e)).collect();
            env.ideals.insert(name.clone(), (ring.clone(), gs?));
        }
        Stmt::DsField { name, field, deltas, sigma } => {
            dup_check(env.dsfields.contains_key(name), name)?;
            let tower = env.field(field)?.clone();
            let sm = env.sigma_of(&tower, sigma)?;
            let ds: Result<Vec<TowerElem>, RunError> =
                deltas.iter().map(|e| eval_elem(&tower, e)).collect();
            let k = make_deltasigma_field(tower, ds?, sm)
                .map_err(|e| RunError::Build(e.to_string()))?;
            env.dsfields.insert(name.clone(), k);
        }
        Stmt::Presentation { name, field, levels } => {
            dup_check(env.presentations.contains_key(name), name)?;
            let base = env.field(field)?.clone();
            let tower = build_levels(&base, levels, "a")?;
            env.presentations.insert(name.clone(), (tower, base.level()));
        }
        Stmt::Kernel { name, pseudofield, length, components } => {
            dup_check(env.kernels.contains_key(name), name)?;
            let pf = env.pseudofield(pseudofield)?.clone();
            if components.len() != pf.period() {
                return Err(RunError::TypeMismatch(format!(
                    "kernel needs {} component presentations",
                    pf.period()
                )));
            }
            let mut towers = Vec::with_capacity(components.len());
            for (i, levels) in components.iter().enumerate() {
                if levels.len() != length + 1 {
                    return Err(RunError::TypeMismatch(format!(
                        "component {i} must present levels 0..={length}"
                    )));
                }
                towers.push(build_levels(pf.component(i), levels, "a")?);
            }
            let k = make_kernel(pf, towers, *length, 1, vec!["a".to_string()])
                .map_err(|e| RunError::Build(e.to_string()))?;
            env.kernels.insert(name.clone(), k);
        }
        Stmt::Cmd { label, kind } => {
            dup_check(env.cmd_kinds.contains_key(label), label)?;
            typecheck_cmd(env, kind)?;
            env.cmd_kinds.insert(label.clone(), kind.kind_name());
        }
        Stmt::Expect { label, checks } => {
            let kind = env
                .cmd_kinds
                .get(label)
                .ok_or_else(|| RunError::UnknownName(label.clone()))?;
            for (key, _) in checks {
                if !allowed_key(kind, key) {
                    return Err(RunError::TypeMismatch(format!(
                        "expectation key `{key}` does not apply to a `{kind}` command"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Pre-execution validation of command references and parameter shapes.
fn typecheck_cmd(env: &Env, kind: &CmdKind) -> Result<(), RunError> {
    match kind {
        CmdKind::Decompose { pf, .. } => {
            env.pseudofield(pf)?;
        }
        CmdKind::Compat { l, lp, over, .. } => {
            env.pseudofield(l)?;
            env.pseudofield(lp)?;
            env.pseudofield(over)?;
        }
        CmdKind::Lift { incl, ideal, power, .. } => {
            let inc =
                env.inclusions.get(incl).ok_or_else(|| RunError::UnknownName(incl.clone()))?;
            let (ring_name, _) =
                env.ideals.get(ideal).ok_or_else(|| RunError::UnknownName(ideal.clone()))?;
            if env.ring(ring_name)? != inc.r_ring() {
                return Err(RunError::TypeMismatch(format!(
                    "ideal `{ideal}` does not live in the inclusion's source ring"
                )));
            }
            if *power == 0 {
                return Err(RunError::TypeMismatch("power must be >= 1".to_string()));
            }
        }
        CmdKind::Witness { incl, family, .. } => {
            let inc =
                env.inclusions.get(incl).ok_or_else(|| RunError::UnknownName(incl.clone()))?;
            for (ideal, d) in family {
                let (ring_name, _) = env
                    .ideals
                    .get(ideal)
                    .ok_or_else(|| RunError::UnknownName(ideal.clone()))?;
                if env.ring(ring_name)? != inc.r_ring() {
                    return Err(RunError::TypeMismatch(format!(
                        "ideal `{ideal}` does not live in the inclusion's source ring"
                    )));
                }
                if *d == 0 {
                    return Err(RunError::TypeMismatch("powers must be >= 1".to_string()));
                }
            }
        }
        CmdKind::Prolong { kernel } | CmdKind::Realize { kernel, .. } => {
            env.kernels.get(kernel).ok_or_else(|| RunError::UnknownName(kernel.clone()))?;
        }
        CmdKind::LimitDeg { pres, powers } => {
            env.presentations
                .get(pres)
                .ok_or_else(|| RunError::UnknownName(pres.clone()))?;
            if powers.iter().any(|&p| p == 0) {
                return Err(RunError::TypeMismatch("powers must be >= 1".to_string()));
            }
        }
        CmdKind::InvClosure { ring, transports, .. } => {
            let r = env.ring(ring)?;
            for (ideal, d) in transports {
                let (ring_name, _) = env
                    .ideals
                    .get(ideal)
                    .ok_or_else(|| RunError::UnknownName(ideal.clone()))?;
                if env.ring(ring_name)? != r {
                    return Err(RunError::TypeMismatch(format!(
                        "ideal `{ideal}` does not live in ring `{ring}`"
                    )));
                }
                if *d == 0 {
                    return Err(RunError::TypeMismatch("powers must be >= 1".to_string()));
                }
            }
        }
        CmdKind::Pv { ds, rate, .. } => {
            let k = env
                .dsfields
                .get(ds)
                .ok_or_else(|| RunError::UnknownName(ds.clone()))?;
            eval_elem(k.tower(), rate)?;
        }
        CmdKind::ProbeProduct { pf, .. } => {
            env.pseudofield(pf)?;
        }
        CmdKind::ProbeRing { ring, inverted, .. } => {
            let r = env.ring(ring)?;
            for e in inverted {
                eval_poly(r, e)?;
            }
        }
    }
    Ok(())
}

// ---- command execution -------------------------------------------------------

fn execute(env: &Env, kind: &CmdKind, opts: &RunOptions) -> (Outcome, Vec<String>) {
    match run_command(env, kind, opts) {
        Ok(pair) => pair,
        Err(msg) => (Outcome::Failed(msg), Vec::new()),
    }
}

fn run_command(
    env: &Env,
    kind: &CmdKind,
    opts: &RunOptions,
) -> Result<(Outcome, Vec<String>), String> {
    match kind {
        CmdKind::Decompose { pf, samples } => {
            let k = env.pseudofield(pf).expect("typechecked");
            let (axioms_ok, sampled) = decompose_checks(k, *samples, opts.seed)?;
            Ok((Outcome::Decompose { period: k.period(), axioms_ok, sampled }, Vec::new()))
        }
        CmdKind::Compat { l, lp, over, max } => {
            let lf = env.pseudofield(l).expect("typechecked");
            let lpf = env.pseudofield(lp).expect("typechecked");
            let k = env.pseudofield(over).expect("typechecked");
            let bound = max.unwrap_or(opts.default_bound);
            let res = compat_test(lf, lpf, k, bound).map_err(|e| e.to_string())?;
            Ok((Outcome::Compat(res), Vec::new()))
        }
        CmdKind::Lift { incl, ideal, power, max } => {
            let inc = env.inclusions.get(incl).expect("typechecked");
            let (_, gens) = env.ideals.get(ideal).expect("typechecked");
            let l_max = max.unwrap_or(opts.default_max_power);
            let report = lift_search(inc, gens, *power, l_max).map_err(|e| e.to_string())?;
            let provenance =
                report.fiber_factors.iter().map(|f| format!("fiber factor: {f}")).collect();
            Ok((Outcome::Lift(report), provenance))
        }
        CmdKind::Witness { incl, family, max } => {
            let inc = env.inclusions.get(incl).expect("typechecked");
            let fam: Vec<(String, Vec<MPoly>, usize)> = family
                .iter()
                .map(|(q, d)| {
                    let (_, gens) = env.ideals.get(q).expect("typechecked");
                    (q.clone(), gens.clone(), *d)
                })
                .collect();
            let l_max = max.unwrap_or(opts.default_max_power);
            let table = chevalley_witness(inc, &fam, l_max).map_err(|e| e.to_string())?;
            Ok((Outcome::Witness(table), Vec::new()))
        }
        CmdKind::Prolong { kernel } => {
            let k = env.kernels.get(kernel).expect("typechecked");
            let (_, choices) = prolong(k).map_err(|e| e.to_string())?;
            let provenance = choices
                .iter()
                .map(|c| {
                    format!(
                        "length {} component {} chose {} of [{}]",
                        c.new_length,
                        c.component,
                        c.chosen,
                        c.all_factors.join(", ")
                    )
                })
                .collect();
            Ok((Outcome::Prolong { choices }, provenance))
        }
        CmdKind::Realize { kernel, upto } => {
            let k = env.kernels.get(kernel).expect("typechecked");
            let real = realize(k, *upto).map_err(|e| e.to_string())?;
            let last = real.kernels.last().expect("nonempty");
            let degrees: Vec<i64> = last
                .level_degrees(0)
                .iter()
                .map(|d| d.map_or(-1, |v| v as i64))
                .collect();
            let provenance = real
                .provenance
                .iter()
                .map(|c| {
                    format!(
                        "length {} component {} chose {}",
                        c.new_length, c.component, c.chosen
                    )
                })
                .collect();
            Ok((
                Outcome::Realize {
                    law: real.truncation_law.iter().all(|&b| b),
                    final_length: last.length(),
                    degrees,
                },
                provenance,
            ))
        }
        CmdKind::LimitDeg { pres, powers } => {
            let (tower, base_level) = env.presentations.get(pres).expect("typechecked");
            let mut values = Vec::with_capacity(powers.len());
            for &d in powers {
                values.push(limit_degree(tower, *base_level, d).map_err(|e| e.to_string())?);
            }
            Ok((Outcome::LimitDeg { values }, Vec::new()))
        }
        CmdKind::InvClosure { ring, transports, bound } => {
            let r = env.ring(ring).expect("typechecked");
            let n_max = bound.unwrap_or(opts.default_bound);
            let closure = InversiveClosure::new(r.clone(), n_max).map_err(|e| e.to_string())?;
            let mut reports = Vec::new();
            for (ideal, d) in transports {
                let (_, gens) = env.ideals.get(ideal).expect("typechecked");
                let si = SigmaIdeal::new(r.clone(), gens.clone());
                reports.push(spec_transport(&closure, &si, *d, n_max).map_err(|e| e.to_string())?);
            }
            Ok((Outcome::InvClosure { u_injective: closure.u_injective(), reports }, Vec::new()))
        }
        CmdKind::Pv { ds, rate, lmax, bound } => {
            let k = env.dsfields.get(ds).expect("typechecked");
            let a = eval_elem(k.tower(), rate).map_err(|e| e.to_string())?;
            let l_max = lmax.unwrap_or(opts.default_max_power.max(4));
            let deg_bound = bound.unwrap_or(4);
            let plus = pv_construct(k, &a, SigmaChoice::Plus).map_err(|e| e.to_string())?;
            let minus = pv_construct(k, &a, SigmaChoice::Minus);
            let outcome = pv_outcome(k, &plus, minus.ok().as_ref(), l_max, deg_bound)?;
            Ok((Outcome::Pv(outcome), Vec::new()))
        }
        CmdKind::ProbeProduct { pf, bound } => {
            let k = env.pseudofield(pf).expect("typechecked");
            let b = bound.unwrap_or(4);
            let res = pseudo_simple_probe(&AlgebraPresentation::ProductOfFields(k.clone()), b)
                .map_err(|e| e.to_string())?;
            Ok((Outcome::Probe(res), Vec::new()))
        }
        CmdKind::ProbeRing { ring, inverted, bound } => {
            let r = env.ring(ring).expect("typechecked");
            let inv: Vec<MPoly> = inverted
                .iter()
                .map(|e| eval_poly(r, e).map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            let b = bound.unwrap_or(4);
            let res = pseudo_simple_probe(
                &AlgebraPresentation::PolynomialRing { ring: r.clone(), inverted: inv },
                b,
            )
            .map_err(|e| e.to_string())?;
            Ok((Outcome::Probe(res), Vec::new()))
        }
    }
}

/// Idempotent axioms plus seeded random ring-endomorphism samples.
fn decompose_checks(
    pf: &PseudoField,
    samples: usize,
    seed: u64,
) -> Result<(bool, usize), String> {
    let es = pf.idempotents();
    let d = pf.period();
    let mut ok = true;
    for i in 0..d {
        for j in 0..d {
            let prod = pf.mul(&es[i], &es[j]);
            if i == j {
                ok &= prod == es[i];
            } else {
                ok &= pf.is_zero(&prod);
            }
        }
        let shifted = pf.apply_sigma(&es[i]).map_err(|e| e.to_string())?;
        ok &= shifted == es[(i + 1) % d];
    }
    let mut sum = pf.zero();
    for e in &es {
        sum = pf.add(&sum, e);
    }
    ok &= sum == pf.one();
    let mut rng = Lcg::new(seed);
    let mut sampled = 0usize;
    for _ in 0..samples {
        let x = random_elem(pf, &mut rng);
        let y = random_elem(pf, &mut rng);
        let sx = pf.apply_sigma(&x).map_err(|e| e.to_string())?;
        let sy = pf.apply_sigma(&y).map_err(|e| e.to_string())?;
        let add_ok = pf.apply_sigma(&pf.add(&x, &y)).map_err(|e| e.to_string())?
            == pf.add(&sx, &sy);
        let mul_ok = pf.apply_sigma(&pf.mul(&x, &y)).map_err(|e| e.to_string())?
            == pf.mul(&sx, &sy);
        let inv_ok = pf.is_invertible(&x) == !pf.is_zero(&x) || pf.is_zero_divisor(&x);
        ok &= add_ok && mul_ok && inv_ok;
        sampled += 1;
    }
    Ok((ok, sampled))
}

/// Deterministic generator for the sampling checks (seeded by `--seed`).
struct Lcg(u64);

impl Lcg {
    fn new(seed: u64) -> Lcg {
        Lcg(seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407))
    }

    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    fn small(&mut self) -> i64 {
        (self.next() % 19) as i64 - 9
    }
}

fn random_elem(pf: &PseudoField, rng: &mut Lcg) -> PseudoFieldElem {
    let coords = pf
        .components()
        .iter()
        .map(|t| {
            let mut e = t.from_i64(rng.small());
            for g in 0..t.level() {
                let c = t.from_i64(rng.small());
                e = t.add(&e, &t.mul(&c, &t.generator(g)));
            }
            e
        })
        .collect();
    PseudoFieldElem { coords }
}

fn pv_outcome(
    k: &DeltaSigmaField,
    plus: &PVRing,
    minus: Option<&PVRing>,
    l_max: usize,
    deg_bound: i64,
) -> Result<PvOutcome, String> {
    let t = k.tower();
    let same = dmatrix(plus, plus).map_err(|e| e.to_string())?;
    let mut delta_d_zero = same.delta_d_is_zero;
    let sigma_ratio_same = same.sigma_ratio_rendered.clone();
    let l_same = match sigma_l_isomorphism_search(plus, plus, l_max).map_err(|e| e.to_string())? {
        SigmaLResult::MinimalL { l, .. } => Some(l),
        SigmaLResult::NoneUpTo(_) => None,
    };
    let (sigma_ratio_opposite, l_opposite, constants_reports) = match minus {
        Some(m) => {
            let opp = dmatrix(plus, m).map_err(|e| e.to_string())?;
            delta_d_zero &= opp.delta_d_is_zero;
            let l_opp =
                match sigma_l_isomorphism_search(plus, m, l_max).map_err(|e| e.to_string())? {
                    SigmaLResult::MinimalL { l, .. } => Some(l),
                    SigmaLResult::NoneUpTo(_) => None,
                };
            let c1 = delta_constants(plus.ring(), deg_bound).map_err(|e| e.to_string())?;
            let c2 = delta_constants(m.ring(), deg_bound).map_err(|e| e.to_string())?;
            (opp.sigma_ratio_rendered, l_opp, vec![c1, c2])
        }
        None => {
            let c1 = delta_constants(plus.ring(), deg_bound).map_err(|e| e.to_string())?;
            (String::new(), None, vec![c1])
        }
    };
    let constants_trivial = constants_reports.iter().all(|c| c.equals_prefix_constants);
    let basis = constants_reports
        .first()
        .map(|c| c.basis.clone())
        .unwrap_or_default();
    let _ = t;
    Ok(PvOutcome {
        delta_d_zero,
        sigma_ratio_same,
        sigma_ratio_opposite,
        minimal_l_same: l_same,
        minimal_l_opposite: l_opposite,
        constants_trivial,
        constants_basis: basis,
    })
}

// ---- outcome -> JSON / expectations -----------------------------------------

fn describe(outcome: &Outcome) -> (bool, Option<String>, serde_json::Value) {
    match outcome {
        Outcome::Failed(msg) => (false, Some(msg.clone()), json!(null)),
        Outcome::Decompose { period, axioms_ok, sampled } => (
            true,
            None,
            json!({"period": period, "axioms_ok": axioms_ok, "sampled": sampled}),
        ),
        Outcome::Compat(res) => match res {
            CompatResult::MinimalPeriod(d) => {
                (true, None, json!({"minimal_period": d, "resolved": true}))
            }
            CompatResult::NoneUpTo(m) => {
                (true, None, json!({"none_up_to": m, "resolved": false}))
            }
        },
        Outcome::Lift(rep) => {
            let entries: Vec<serde_json::Value> = rep
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "generators": e.rendered,
                        "min_power": e.min_power,
                        "contracts_to_source": e.contracts_to_source,
                    })
                })
                .collect();
            (
                true,
                None,
                json!({
                    "source": rep.source_rendered,
                    "source_period": rep.source_period,
                    "requested_power": rep.requested_power,
                    "exhausted_bound": rep.exhausted_bound,
                    "lifts": entries,
                    "sigma_permutation": rep.permutation,
                }),
            )
        }
        Outcome::Witness(table) => {
            let rows: Vec<serde_json::Value> = table
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "label": r.label,
                        "d": r.d,
                        "source_period": r.source_period,
                        "minimal_l": r.minimal_l,
                        "lifts_at_d": r.lifts_at_d,
                    })
                })
                .collect();
            (
                true,
                None,
                json!({
                    "rows": rows,
                    "uniform_l": table.uniform_l,
                    "naive_holds": table.naive_holds,
                }),
            )
        }
        Outcome::Prolong { choices } => {
            let cs: Vec<serde_json::Value> = choices
                .iter()
                .map(|c| {
                    json!({
                        "new_length": c.new_length,
                        "component": c.component,
                        "chosen": c.chosen,
                        "all_factors": c.all_factors,
                    })
                })
                .collect();
            (true, None, json!({"choices": cs}))
        }
        Outcome::Realize { law, final_length, degrees } => (
            true,
            None,
            json!({
                "truncation_law": law,
                "final_length": final_length,
                "level_degrees": degrees,
            }),
        ),
        Outcome::LimitDeg { values } => (true, None, json!({"values": values})),
        Outcome::InvClosure { u_injective, reports } => {
            let rs: Vec<serde_json::Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "round_trip_ok": r.round_trip_ok,
                        "source_period": r.source_period,
                        "closure_period": r.closure_period,
                        "contraction": r.contraction,
                    })
                })
                .collect();
            (true, None, json!({"u_injective": u_injective, "transports": rs}))
        }
        Outcome::Pv(p) => (
            true,
            None,
            json!({
                "delta_d_zero": p.delta_d_zero,
                "sigma_ratio_same": p.sigma_ratio_same,
                "sigma_ratio_opposite": p.sigma_ratio_opposite,
                "minimal_l_same": p.minimal_l_same,
                "minimal_l_opposite": p.minimal_l_opposite,
                "constants_trivial": p.constants_trivial,
                "constants_basis": p.constants_basis,
            }),
        ),
        Outcome::Probe(res) => match res {
            ProbeResult::Simple { reason } => {
                (true, None, json!({"result": "simple", "reason": reason}))
            }
            ProbeResult::NotSimple { witness } => {
                (true, None, json!({"result": "not_simple", "witness": witness}))
            }
            ProbeResult::Inconclusive { searched } => {
                (true, None, json!({"result": "inconclusive", "searched": searched}))
            }
        },
    }
}

fn check_expectation(outcome: &Outcome, key: &str, val: &ExpVal) -> Result<bool, String> {
    let int = |v: &ExpVal| -> Result<i64, String> {
        match v {
            ExpVal::Int(n) => Ok(*n),
            _ => Err("expected an integer".to_string()),
        }
    };
    let boolean = |v: &ExpVal| -> Result<bool, String> {
        match v {
            ExpVal::Bool(b) => Ok(*b),
            _ => Err("expected a boolean".to_string()),
        }
    };
    match outcome {
        Outcome::Failed(msg) => Err(format!("command failed: {msg}")),
        Outcome::Decompose { period, axioms_ok, sampled } => match key {
            "period" => Ok(*period as i64 == int(val)?),
            "axioms_ok" => Ok(*axioms_ok == boolean(val)?),
            "sampled" => Ok(*sampled as i64 == int(val)?),
            _ => Err("unknown key".to_string()),
        },
        Outcome::Compat(res) => match key {
            "minimal_period" => match res {
                CompatResult::MinimalPeriod(d) => Ok(*d as i64 == int(val)?),
                CompatResult::NoneUpTo(_) => Ok(false),
            },
            "resolved" => {
                Ok(matches!(res, CompatResult::MinimalPeriod(_)) == boolean(val)?)
            }
            _ => Err("unknown key".to_string()),
        },
        Outcome::Lift(rep) => {
            if let Some(suffix) = key.strip_prefix("lifts_at_") {
                let p: usize = suffix.parse().map_err(|_| "bad power suffix".to_string())?;
                return Ok(rep.lifts_at_power(p) as i64 == int(val)?);
            }
            match key {
                "source_period" => Ok(rep.source_period as i64 == int(val)?),
                "count" => Ok(rep.entries.len() as i64 == int(val)?),
                "sigma_swaps" => {
                    let swaps = rep.permutation.len() == 2
                        && rep.permutation[0] == 1
                        && rep.permutation[1] == 0;
                    Ok(swaps == boolean(val)?)
                }
                "contractions_ok" => {
                    Ok(rep.entries.iter().all(|e| e.contracts_to_source) == boolean(val)?)
                }
                "min_powers" => match val {
                    ExpVal::IntList(ns) => {
                        let mut got: Vec<i64> =
                            rep.entries.iter().map(|e| e.min_power as i64).collect();
                        got.sort();
                        let mut want = ns.clone();
                        want.sort();
                        Ok(got == want)
                    }
                    _ => Err("expected an integer list".to_string()),
                },
                _ => Err("unknown key".to_string()),
            }
        }
        Outcome::Witness(table) => match key {
            "uniform_l" => Ok(table.uniform_l.map(|l| l as i64) == Some(int(val)?)),
            "naive_holds" => Ok(table.naive_holds == boolean(val)?),
            "minimal_ls" => match val {
                ExpVal::IntList(ns) => {
                    let got: Vec<i64> = table
                        .rows
                        .iter()
                        .map(|r| r.minimal_l.map_or(-1, |l| l as i64))
                        .collect();
                    Ok(&got == ns)
                }
                _ => Err("expected an integer list".to_string()),
            },
            _ => Err("unknown key".to_string()),
        },
        Outcome::Prolong { choices } => match key {
            "choices" => Ok(choices.len() as i64 == int(val)?),
            _ => Err("unknown key".to_string()),
        },
        Outcome::Realize { law, final_length, degrees } => match key {
            "truncation_law" => Ok(*law == boolean(val)?),
            "final_length" => Ok(*final_length as i64 == int(val)?),
            "level_degrees" => match val {
                ExpVal::IntList(ns) => Ok(degrees == ns),
                _ => Err("expected an integer list".to_string()),
            },
            _ => Err("unknown key".to_string()),
        },
        Outcome::LimitDeg { values } => match key {
            "values" => match val {
                ExpVal::IntList(ns) => {
                    let got: Vec<i64> = values.iter().map(|&v| v as i64).collect();
                    Ok(&got == ns)
                }
                _ => Err("expected an integer list".to_string()),
            },
            _ => Err("unknown key".to_string()),
        },
        Outcome::InvClosure { u_injective, reports } => match key {
            "u_injective" => Ok(*u_injective == boolean(val)?),
            "round_trips" => Ok(reports.iter().all(|r| r.round_trip_ok) == boolean(val)?),
            "periods" => match val {
                ExpVal::IntList(ns) => {
                    let got: Vec<i64> =
                        reports.iter().map(|r| r.closure_period as i64).collect();
                    Ok(&got == ns)
                }
                _ => Err("expected an integer list".to_string()),
            },
            _ => Err("unknown key".to_string()),
        },
        Outcome::Pv(p) => match key {
            "delta_d_zero" => Ok(p.delta_d_zero == boolean(val)?),
            "sigma_ratio_same" => match val {
                ExpVal::Str(s) => Ok(&p.sigma_ratio_same == s),
                _ => Err("expected a string".to_string()),
            },
            "sigma_ratio_opposite" => match val {
                ExpVal::Str(s) => Ok(&p.sigma_ratio_opposite == s),
                _ => Err("expected a string".to_string()),
            },
            "minimal_l_same" => Ok(p.minimal_l_same.map(|l| l as i64) == Some(int(val)?)),
            "minimal_l_opposite" => {
                Ok(p.minimal_l_opposite.map(|l| l as i64) == Some(int(val)?))
            }
            "constants_trivial" => Ok(p.constants_trivial == boolean(val)?),
            _ => Err("unknown key".to_string()),
        },
        Outcome::Probe(res) => match key {
            "result" => match val {
                ExpVal::Str(s) => {
                    let got = match res {
                        ProbeResult::Simple { .. } => "simple",
                        ProbeResult::NotSimple { .. } => "not_simple",
                        ProbeResult::Inconclusive { .. } => "inconclusive",
                    };
                    Ok(got == s)
                }
                _ => Err("expected a string".to_string()),
            },
            "witness" => match (res, val) {
                (ProbeResult::NotSimple { witness }, ExpVal::Str(s)) => {
                    Ok(witness.iter().any(|w| w == s))
                }
                _ => Ok(false),
            },
            _ => Err("unknown key".to_string()),
        },
    }
}
