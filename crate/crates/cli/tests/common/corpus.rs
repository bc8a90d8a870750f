//! Candidate inequalities over `X, Y, Z` with frozen verdicts.
//!
//! `assume` is what the prover sees; `q_rows` spells the same assumption as
//! plain expressions that must vanish, for the oracle. `proven` was
//! fixed by the extreme-ray oracle and is re-derived on every run.

pub const VARS: [&str; 3] = ["X", "Y", "Z"];

pub struct Case {
    pub statement: &'static str,
    pub assume: &'static [&'static str],
    pub q_rows: &'static [&'static str],
    pub proven: bool,
}

const fn free(statement: &'static str, proven: bool) -> Case {
    Case { statement, assume: &[], q_rows: &[], proven }
}

const MARKOV: &[&str] = &["markov: X -> Y -> Z"];
const MARKOV_Q: &[&str] = &["I(X;Z|Y)"];
const INDEP_XY: &[&str] = &["indep: X ; Y"];
const INDEP_XY_Q: &[&str] = &["H(X,Y) - H(X) - H(Y)"];
const INDEP_ALL: &[&str] = &["indep: X ; Y ; Z"];
const INDEP_ALL_Q: &[&str] = &["H(X,Y,Z) - H(X) - H(Y) - H(Z)"];
const PAIRWISE: &[&str] = &["pairwise: X ; Y ; Z"];
const PAIRWISE_Q: &[&str] = &["I(X;Y)", "I(X;Z)", "I(Y;Z)"];
const FUNC: &[&str] = &["func: Z = f(X,Y)"];
const FUNC_Q: &[&str] = &["H(Z|X,Y)"];
const EXPLICIT: &[&str] = &["I(X;Y) = 0"];
const EXPLICIT_Q: &[&str] = &["I(X;Y)"];
const FACTOR: &[&str] = &["factor: P(X) P(Y|X) P(Z|Y)"];

const fn with(
    statement: &'static str,
    assume: &'static [&'static str],
    q_rows: &'static [&'static str],
    proven: bool,
) -> Case {
    Case { statement, assume, q_rows, proven }
}

pub const CASES: &[Case] = &[
    // Shannon-type without assumptions.
    free("H(X) >= 0", true),
    free("H(X|Y) >= 0", true),
    free("I(X;Y) >= 0", true),
    free("I(X;Y|Z) >= 0", true),
    free("H(X|Y) <= H(X)", true),
    free("H(X|Y,Z) <= H(X|Y)", true),
    free("H(X,Y) <= H(X) + H(Y)", true),
    free("H(X,Y,Z) <= H(X) + H(Y) + H(Z)", true),
    free("H(X,Y) >= H(X)", true),
    free("H(X,Y,Z) >= H(X,Y)", true),
    free("H(X,Y,Z) = H(X) + H(Y|X) + H(Z|X,Y)", true),
    free("I(X;Y,Z) = I(X;Y) + I(X;Z|Y)", true),
    free("I(X;Y) <= H(X)", true),
    free("I(X;Y) <= H(Y)", true),
    free("I(X;Y|Z) <= H(X|Z)", true),
    free("H(X,Y) + H(Y,Z) >= H(X,Y,Z) + H(Y)", true),
    free("H(X,Y) + H(Y,Z) + H(X,Z) >= 2*H(X,Y,Z)", true),
    free("H(X,Y) + H(X,Z) + H(Y,Z) <= 2 H(X) + 2 H(Y) + 2 H(Z)", true),
    free("I(X;Y,Z) >= I(X;Y)", true),
    free("H(X|Z) <= H(X|Y) + H(Y|Z)", true),
    free("I(X;Y) + I(X;Z|Y) >= I(X;Z)", true),
    free("H(X) + H(Y) + H(Z) >= H(X,Y,Z) + I(X;Y)", true),
    free("H(X,Y|Z) <= H(X|Z) + H(Y|Z)", true),
    free("I(X;Y|Z) <= H(X,Y)", true),
    free("2 I(X;Y) <= H(X) + H(Y)", true),
    free("H(X,Y,Z) >= 1/2 H(X,Y) + 1/2 H(Y,Z)", true),
    free("H(X,Y) = H(Y,X)", true),
    // Not Shannon-type without assumptions.
    free("I(X;Y|Z) >= I(X;Y)", false),
    free("I(X;Y|Z) <= I(X;Y)", false),
    free("H(X) <= I(X;Y)", false),
    free("H(X) <= H(Y)", false),
    free("H(X,Y) <= H(X)", false),
    free("H(X|Y) >= H(X)", false),
    free("I(X;Y) >= H(X)", false),
    free("H(X,Y,Z) <= H(X,Y)", false),
    free("I(X;Z) <= I(X;Y)", false),
    free("H(X) + H(Y) <= H(X,Y)", false),
    free("I(X;Y) = 0", false),
    free("H(X,Y,Z) >= H(X) + H(Y) + H(Z)", false),
    free("H(X|Y) <= H(X|Y,Z)", false),
    free("H(Z) <= H(X) + H(Y)", false),
    free("H(X|Z) <= H(X|Y)", false),
    free("2*H(X,Y,Z) >= H(X,Y) + H(Y,Z) + H(X,Z)", false),
    free("I(X;Y,Z) <= I(X;Y)", false),
    free("H(X,Y) + H(Y,Z) <= H(X,Y,Z) + H(Y)", false),
    // Markov chain X -> Y -> Z.
    with("I(X;Z) <= I(X;Y)", MARKOV, MARKOV_Q, true),
    with("I(X;Z) <= I(Y;Z)", MARKOV, MARKOV_Q, true),
    with("I(X;Z|Y) = 0", MARKOV, MARKOV_Q, true),
    with("H(X|Y) <= H(X|Z)", MARKOV, MARKOV_Q, true),
    with("I(X;Y) <= I(X;Z)", MARKOV, MARKOV_Q, false),
    with("I(X;Y,Z) = I(X;Y)", MARKOV, MARKOV_Q, true),
    with("H(X,Y,Z) = H(X,Y) + H(Z|Y)", MARKOV, MARKOV_Q, true),
    with("I(X;Z) = 0", MARKOV, MARKOV_Q, false),
    with("H(Z) <= H(Y)", MARKOV, MARKOV_Q, false),
    // The same chain as a factorization.
    with("I(X;Z) <= I(X;Y)", FACTOR, MARKOV_Q, true),
    with("I(X;Y) <= I(X;Z)", FACTOR, MARKOV_Q, false),
    // X and Y independent.
    with("H(X,Y) = H(X) + H(Y)", INDEP_XY, INDEP_XY_Q, true),
    with("I(X;Y|Z) >= I(X;Y)", INDEP_XY, INDEP_XY_Q, true),
    with("I(X;Y|Z) <= I(X;Y)", INDEP_XY, INDEP_XY_Q, false),
    with("I(X;Z) + I(Y;Z) <= I(X,Y;Z)", INDEP_XY, INDEP_XY_Q, true),
    with("H(X|Y) = H(X)", EXPLICIT, EXPLICIT_Q, true),
    // Mutual independence.
    with("H(X,Y,Z) = H(X) + H(Y) + H(Z)", INDEP_ALL, INDEP_ALL_Q, true),
    with("I(X;Y) = 0", INDEP_ALL, INDEP_ALL_Q, true),
    with("I(X;Y|Z) = 0", INDEP_ALL, INDEP_ALL_Q, true),
    // Pairwise independence is weaker.
    with("H(X,Y,Z) = H(X) + H(Y) + H(Z)", PAIRWISE, PAIRWISE_Q, false),
    with("I(X;Y|Z) >= 0", PAIRWISE, PAIRWISE_Q, true),
    with("I(X;Y|Z) = 0", PAIRWISE, PAIRWISE_Q, false),
    // Z determined by X and Y.
    with("H(X,Y,Z) = H(X,Y)", FUNC, FUNC_Q, true),
    with("H(Z) <= H(X,Y)", FUNC, FUNC_Q, true),
    with("H(Z) <= H(X)", FUNC, FUNC_Q, false),
    with("I(X,Y;Z) = H(Z)", FUNC, FUNC_Q, true),
];
