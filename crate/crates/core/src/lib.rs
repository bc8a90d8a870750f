//! Exact-arithmetic prover for Shannon-type information inequalities.
//!
//! An information expression over `n` random variables is reduced to its
//! canonical form, a coefficient vector over the `2^n - 1` joint entropies.
//! An inequality `lhs <= rhs` is Shannon-type when `rhs - lhs` is a
//! nonnegative combination of elemental information measures plus
//! arbitrary multiples of the declared equality constraints. The [`lp`]
//! module decides this with an exact rational simplex and returns either a
//! [`lp::Certificate`] or a separating ray; [`proof`] turns a certificate
//! into a readable identity.
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! ```
//! use shannon_core::prelude::*;
//!
//! let u = parse_universe("A, B, C, D").unwrap();
//! let rel = parse_relation("I(A;D) <= I(B;C)", &u).unwrap();
//! let decl = parse_constraint("markov: A -> B -> C -> D", &u).unwrap();
//! let q = build_q(&[decl], u.len()).unwrap();
//! let problem = ConeProblem::new(rel.difference(u.len()).unwrap(), enumerate_eims(u.len()).unwrap(), q);
//! assert!(matches!(solve(&problem).unwrap(), SolveOutcome::ProvenSti(_)));
//! ```

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod canonical;
pub mod constraints;
pub mod elemental;
pub mod lp;
pub mod parser;
pub mod proof;
pub mod rational;
pub mod varset;

pub mod prelude {
    pub use crate::canonical::{canonicalize, cond_entropy, joint_entropy, mutual_info, CanonicalVector};
    pub use crate::constraints::{build_q, ConstraintRow, QMatrix};
    pub use crate::elemental::{
        bim_to_eim_decomposition, eim_count, enumerate_eims, ElementalKind, ElementalTerm, GMatrix,
    };
    pub use crate::lp::{
        extract_dual, nonneg_combination, solve, verify_certificate, verify_ray, Certificate, Combination, ConeProblem,
        SolveOutcome,
    };
    pub use crate::parser::{
        parse_constraint, parse_expr, parse_relation, parse_universe, ConstraintDecl, InfoExpr, Measure, RelOp,
        Relation,
    };
    pub use crate::proof::{build_elemental_form, render_latex, render_text, ElementalForm};
    pub use crate::rational::Rational;
    pub use crate::varset::{VarSet, VarUniverse};
}
