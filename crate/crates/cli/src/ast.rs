//! Abstract syntax of `.sigma` scenario files, plus the canonical
//! renderer (parse . render is the identity on canonicalized scenarios).

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub stmts: Vec<Stmt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stmt {
    Field { name: String, expr: FieldExpr },
    Morphism { name: String, source: String, target: String, images: Vec<Expr> },
    PseudoField { name: String, expr: PseudoExpr },
    Ring { name: String, field: String, sigma: SigmaRef, vars: Vec<String>, images: Vec<Option<Expr>> },
    Truncation { name: String, field: String, sigma: SigmaRef, vars: Vec<String>, cutoff: usize },
    Inclusion { name: String, r: String, s: String, images: Vec<Expr> },
    Ideal { name: String, ring: String, gens: Vec<Expr> },
    DsField { name: String, field: String, deltas: Vec<Expr>, sigma: SigmaRef },
    Presentation { name: String, field: String, levels: Vec<LevelExpr> },
    Kernel { name: String, pseudofield: String, length: usize, components: Vec<Vec<LevelExpr>> },
    Cmd { label: String, kind: CmdKind },
    Expect { label: String, checks: Vec<(String, ExpVal)> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldExpr {
    Rationals,
    Galois(u64),
    Algebraic { base: String, gen: String, minpoly: Expr },
    Transcendental { base: String, gen: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SigmaRef {
    Id,
    Named(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PseudoExpr {
    Components { comps: Vec<String>, maps: Vec<SigmaRef> },
    Trivial { base: String, sigma: SigmaRef, copies: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LevelExpr {
    Trans,
    Alg(Expr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CmdKind {
    Decompose { pf: String, samples: usize },
    Compat { l: String, lp: String, over: String, max: Option<usize> },
    Lift { incl: String, ideal: String, power: usize, max: Option<usize> },
    Witness { incl: String, family: Vec<(String, usize)>, max: Option<usize> },
    Prolong { kernel: String },
    Realize { kernel: String, upto: usize },
    LimitDeg { pres: String, powers: Vec<usize> },
    InvClosure { ring: String, transports: Vec<(String, usize)>, bound: Option<usize> },
    Pv { ds: String, rate: Expr, lmax: Option<usize>, bound: Option<i64> },
    ProbeProduct { pf: String, bound: Option<i64> },
    ProbeRing { ring: String, inverted: Vec<Expr>, bound: Option<i64> },
}

impl CmdKind {
    pub fn kind_name(&self) -> &'static str {
        match self {
            CmdKind::Decompose { .. } => "decompose",
            CmdKind::Compat { .. } => "compat",
            CmdKind::Lift { .. } => "lift",
            CmdKind::Witness { .. } => "witness",
            CmdKind::Prolong { .. } => "prolong",
            CmdKind::Realize { .. } => "realize",
            CmdKind::LimitDeg { .. } => "limitdeg",
            CmdKind::InvClosure { .. } => "invclosure",
            CmdKind::Pv { .. } => "pv",
            CmdKind::ProbeProduct { .. } | CmdKind::ProbeRing { .. } => "probe",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpVal {
    Int(i64),
    Bool(bool),
    Str(String),
    IntList(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Var(String),
    /// `s3(x)` / `s^3(x)`: the shifted indeterminate of a truncation ring.
    SVar(usize, String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

// ---- canonical rendering ----------------------------------------------------

pub fn render(s: &Scenario) -> String {
    let mut out = String::new();
    for stmt in &s.stmts {
        out.push_str(&render_stmt(stmt));
        out.push('\n');
    }
    out
}

fn render_sigma(s: &SigmaRef) -> String {
    match s {
        SigmaRef::Id => "id".to_string(),
        SigmaRef::Named(n) => n.clone(),
    }
}

fn render_levels(levels: &[LevelExpr]) -> String {
    let parts: Vec<String> = levels
        .iter()
        .map(|l| match l {
            LevelExpr::Trans => "trans".to_string(),
            LevelExpr::Alg(e) => format!("alg({})", render_expr(e)),
        })
        .collect();
    format!("[{}]", parts.join(", "))
}

fn render_exprs(es: &[Expr]) -> String {
    let parts: Vec<String> = es.iter().map(render_expr).collect();
    format!("[{}]", parts.join(", "))
}

fn render_stmt(stmt: &Stmt) -> String {
    match stmt {
        Stmt::Field { name, expr } => match expr {
            FieldExpr::Rationals => format!("field {name} = Q;"),
            FieldExpr::Galois(p) => format!("field {name} = GF({p});"),
            FieldExpr::Algebraic { base, gen, minpoly } => {
                format!("field {name} = algebraic({base}, {gen}, {});", render_expr(minpoly))
            }
            FieldExpr::Transcendental { base, gen } => {
                format!("field {name} = transcendental({base}, {gen});")
            }
        },
        Stmt::Morphism { name, source, target, images } => {
            format!("morphism {name} = morphism({source}, {target}, {});", render_exprs(images))
        }
        Stmt::PseudoField { name, expr } => match expr {
            PseudoExpr::Components { comps, maps } => {
                let ms: Vec<String> = maps.iter().map(render_sigma).collect();
                format!(
                    "pseudofield {name} = pseudofield([{}], [{}]);",
                    comps.join(", "),
                    ms.join(", ")
                )
            }
            PseudoExpr::Trivial { base, sigma, copies } => {
                format!("pseudofield {name} = trivial({base}, {}, {copies});", render_sigma(sigma))
            }
        },
        Stmt::Ring { name, field, sigma, vars, images } => {
            let imgs: Vec<String> = images
                .iter()
                .map(|i| match i {
                    None => "none".to_string(),
                    Some(e) => render_expr(e),
                })
                .collect();
            format!(
                "ring {name} = ring({field}, {}, [{}], [{}]);",
                render_sigma(sigma),
                vars.join(", "),
                imgs.join(", ")
            )
        }
        Stmt::Truncation { name, field, sigma, vars, cutoff } => {
            format!(
                "ring {name} = truncation({field}, {}, [{}], {cutoff});",
                render_sigma(sigma),
                vars.join(", ")
            )
        }
        Stmt::Inclusion { name, r, s, images } => {
            format!("inclusion {name} = inclusion({r}, {s}, {});", render_exprs(images))
        }
        Stmt::Ideal { name, ring, gens } => {
            format!("ideal {name} = ideal({ring}, {});", render_exprs(gens))
        }
        Stmt::DsField { name, field, deltas, sigma } => {
            format!(
                "dsfield {name} = dsfield({field}, {}, {});",
                render_exprs(deltas),
                render_sigma(sigma)
            )
        }
        Stmt::Presentation { name, field, levels } => {
            format!("presentation {name} = presentation({field}, {});", render_levels(levels))
        }
        Stmt::Kernel { name, pseudofield, length, components } => {
            let comps: Vec<String> = components.iter().map(|c| render_levels(c)).collect();
            format!(
                "kernel {name} = kernel({pseudofield}, {length}, {});",
                comps.join(", ")
            )
        }
        Stmt::Cmd { label, kind } => render_cmd(label, kind),
        Stmt::Expect { label, checks } => {
            let parts: Vec<String> = checks
                .iter()
                .map(|(k, v)| format!("{k} = {};", render_expval(v)))
                .collect();
            format!("expect {label} {{ {} }};", parts.join(" "))
        }
    }
}

fn render_cmd(label: &str, kind: &CmdKind) -> String {
    let body = match kind {
        CmdKind::Decompose { pf, samples } => format!("decompose {pf} samples {samples}"),
        CmdKind::Compat { l, lp, over, max } => {
            let m = max.map(|m| format!(" max {m}")).unwrap_or_default();
            format!("compat {l} {lp} over {over}{m}")
        }
        CmdKind::Lift { incl, ideal, power, max } => {
            let m = max.map(|m| format!(" max {m}")).unwrap_or_default();
            format!("lift {incl} {ideal} power {power}{m}")
        }
        CmdKind::Witness { incl, family, max } => {
            let fam: Vec<String> = family.iter().map(|(q, d)| format!("{q}@{d}")).collect();
            let m = max.map(|m| format!(" max {m}")).unwrap_or_default();
            format!("witness {incl} family [{}]{m}", fam.join(", "))
        }
        CmdKind::Prolong { kernel } => format!("prolong {kernel}"),
        CmdKind::Realize { kernel, upto } => format!("realize {kernel} upto {upto}"),
        CmdKind::LimitDeg { pres, powers } => {
            let ps: Vec<String> = powers.iter().map(|p| p.to_string()).collect();
            format!("limitdeg {pres} powers [{}]", ps.join(", "))
        }
        CmdKind::InvClosure { ring, transports, bound } => {
            let ts: Vec<String> =
                transports.iter().map(|(q, d)| format!("{q}@{d}")).collect();
            let b = bound.map(|b| format!(" bound {b}")).unwrap_or_default();
            if ts.is_empty() {
                format!("invclosure {ring}{b}")
            } else {
                format!("invclosure {ring} transport [{}]{b}", ts.join(", "))
            }
        }
        CmdKind::Pv { ds, rate, lmax, bound } => {
            let m = lmax.map(|m| format!(" max {m}")).unwrap_or_default();
            let b = bound.map(|b| format!(" bound {b}")).unwrap_or_default();
            format!("pv {ds} rate {}{m}{b}", render_expr(rate))
        }
        CmdKind::ProbeProduct { pf, bound } => {
            let b = bound.map(|b| format!(" bound {b}")).unwrap_or_default();
            format!("probe product {pf}{b}")
        }
        CmdKind::ProbeRing { ring, inverted, bound } => {
            let b = bound.map(|b| format!(" bound {b}")).unwrap_or_default();
            if inverted.is_empty() {
                format!("probe ring {ring}{b}")
            } else {
                format!("probe ring {ring} invert {}{b}", render_exprs(inverted))
            }
        }
    };
    format!("cmd {body} as {label};")
}

fn render_expval(v: &ExpVal) -> String {
    match v {
        ExpVal::Int(n) => n.to_string(),
        ExpVal::Bool(b) => b.to_string(),
        ExpVal::Str(s) => format!("\"{s}\""),
        ExpVal::IntList(ns) => {
            let parts: Vec<String> = ns.iter().map(|n| n.to_string()).collect();
            format!("[{}]", parts.join(", "))
        }
    }
}

/// Renders with the minimal parentheses the parser needs to reproduce the
/// tree.
pub fn render_expr(e: &Expr) -> String {
    render_prec(e, 0)
}

fn render_prec(e: &Expr, prec: u8) -> String {
    let (s, my_prec) = match e {
        Expr::Int(n) => (n.to_string(), 4),
        Expr::Var(v) => (v.clone(), 4),
        Expr::SVar(j, v) => (format!("s{j}({v})"), 4),
        Expr::Neg(inner) => (format!("-{}", render_prec(inner, 3)), 1),
        Expr::Add(a, b) => {
            (format!("{} + {}", render_prec(a, 1), render_prec(b, 2)), 1)
        }
        Expr::Sub(a, b) => {
            (format!("{} - {}", render_prec(a, 1), render_prec(b, 2)), 1)
        }
        Expr::Mul(a, b) => {
            (format!("{}*{}", render_prec(a, 2), render_prec(b, 3)), 2)
        }
        Expr::Div(a, b) => {
            (format!("{}/{}", render_prec(a, 2), render_prec(b, 3)), 2)
        }
        Expr::Pow(a, n) => (format!("{}^{n}", render_prec(a, 4)), 3),
    };
    if my_prec < prec {
        format!("({s})")
    } else {
        s
    }
}
