//! Names the parser knows about before any `let`.

/// `(name, min args, max args)`.
pub const FUNCTIONS: &[(&str, usize, usize)] = &[
    ("act", 2, 2),
    ("body", 1, 1),
    ("chart", 2, 2),
    ("check", 1, 1),
    ("cokernel", 1, 1),
    ("contract", 2, 2),
    ("decompose", 1, 1),
    ("descend", 3, 3),
    ("det", 1, 1),
    ("diag", 1, 1),
    ("dims", 1, 1),
    ("eval", 2, 2),
    ("even", 1, 1),
    ("forget", 1, 1),
    ("get", 2, 2),
    ("glue", 2, 2),
    ("h0", 1, 1),
    ("inv", 1, 1),
    ("inverse", 1, 1),
    ("lift", 1, 1),
    ("mul", 2, 2),
    ("multiplier", 3, 3),
    ("normalize", 1, 1),
    ("normalize3", 3, 3),
    ("odd", 1, 1),
    ("phi", 1, 1),
    ("proj", 1, 1),
    ("psi", 1, 1),
    ("pushforward", 2, 2),
    ("rank", 1, 1),
    ("recompose", 3, 3),
    ("reduce", 1, 1),
    ("same", 2, 2),
    ("same_auto", 2, 2),
    ("same_orbit", 2, 2),
    ("soul", 1, 1),
    ("sqrt", 1, 1),
    ("susy", 2, 2),
    ("susy1", 1, 1),
    ("torus", 2, 2),
    ("validate", 1, 1),
];

pub const CONSTANTS: &[&str] = &["refl", "identity", "z", "true", "false"];

/// Words that introduce a literal form or a statement.
pub const KEYWORDS: &[&str] = &[
    "let",
    "set",
    "assert_eq",
    "assert_zero",
    "assert_error",
    "sc",
    "sl2",
    "chart1",
    "chart2",
    "sec",
    "curve",
    "cfg",
    "tree",
    "target",
];

pub fn arity(name: &str) -> Option<(usize, usize)> {
    FUNCTIONS
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|&(_, lo, hi)| (lo, hi))
}

/// `g1` .. `g8`.
pub fn generator_index(name: &str) -> Option<usize> {
    let i: usize = name.strip_prefix('g')?.parse().ok()?;
    (1..=8).contains(&i).then_some(i)
}

pub fn is_constant(name: &str) -> bool {
    CONSTANTS.contains(&name) || generator_index(name).is_some()
}

pub fn is_reserved(name: &str) -> bool {
    is_constant(name) || KEYWORDS.contains(&name) || arity(name).is_some()
}
