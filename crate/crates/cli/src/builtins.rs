//! Embedded scenarios reproducing the worked examples.

pub struct Builtin {
    pub name: &'static str,
    pub description: &'static str,
    pub text: &'static str,
}

pub const BUILTINS: &[Builtin] = &[
    Builtin {
        name: "intro-example",
        description: "lifts of (u - a) along K[u] -> K[x] with sigma(x) = -x: none at power 1, two at power 2",
        text: include_str!("../scenarios/intro-example.sigma"),
    },
    Builtin {
        name: "statement-a",
        description: "the uniform-power counterexample: (t - td^2) never lifts at power d but does at 2d",
        text: include_str!("../scenarios/statement-a.sigma"),
    },
    Builtin {
        name: "frobenius-compat",
        description: "compatibility periods of F_{2^n} with Frobenius against the constant structure grow with n",
        text: include_str!("../scenarios/frobenius-compat.sigma"),
    },
    Builtin {
        name: "limit-degree",
        description: "limit degrees of the benign quadratic presentation: 2, 4, 8 for powers 1, 2, 3",
        text: include_str!("../scenarios/limit-degree.sigma"),
    },
    Builtin {
        name: "kernel-tower",
        description: "kernel prolongation towers with the truncation law checked by elimination",
        text: include_str!("../scenarios/kernel-tower.sigma"),
    },
    Builtin {
        name: "inversive-bijection",
        description: "spectrum transport across inversive closures round-trips and preserves periods",
        text: include_str!("../scenarios/inversive-bijection.sigma"),
    },
    Builtin {
        name: "pv-sqrt",
        description: "the sqrt(x) Picard-Vessiot pair: delta(D) = 0, opposite choices need sigma^2",
        text: include_str!("../scenarios/pv-sqrt.sigma"),
    },
    Builtin {
        name: "trivial-ext",
        description: "trivial pseudo-field extensions: idempotent axioms and pseudo-simplicity",
        text: include_str!("../scenarios/trivial-ext.sigma"),
    },
];

pub fn find(name: &str) -> Option<&'static Builtin> {
    BUILTINS.iter().find(|b| b.name == name)
}

/// Names and one-line descriptions of the embedded scenarios.
pub fn list_builtin() -> Vec<(&'static str, &'static str)> {
    BUILTINS.iter().map(|b| (b.name, b.description)).collect()
}
