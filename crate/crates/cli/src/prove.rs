//! The full pipeline for one problem: parse results in, one solved cone
//! program per direction of the statement out.

use std::fmt::Write;

use shannon_core::canonical::{CanonicalError, CanonicalVector};
use shannon_core::constraints::ConstraintError;
use shannon_core::elemental::ElementalError;
use shannon_core::lp::{objective_at, LpError};
use shannon_core::prelude::*;
use shannon_core::proof::ProofError;
use shannon_core::rational::format_rational;
use thiserror::Error;

pub const PROVEN: &str = "PROVEN (Shannon-type)";
pub const NOT_PROVABLE: &str = "NOT PROVABLE as Shannon-type (may still hold)";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProveError {
    #[error(transparent)]
    Constraint(#[from] ConstraintError),
    #[error(transparent)]
    Elemental(#[from] ElementalError),
    #[error(transparent)]
    Canonical(#[from] CanonicalError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Proof(#[from] ProofError),
    #[error("expected an equality statement")]
    NotAnEquality,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub universe: VarUniverse,
    pub assumptions: Vec<ConstraintDecl>,
    pub statement: Relation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Proven { form: ElementalForm, certificate: Certificate },
    NotProvable { ray: CanonicalVector },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionResult {
    /// Always one-sided.
    pub relation: Relation,
    pub problem: ConeProblem,
    pub outcome: Outcome,
}

impl DirectionResult {
    pub fn is_proven(&self) -> bool {
        matches!(self.outcome, Outcome::Proven { .. })
    }
}

/// One entry per direction: a single one for `<=`/`>=`, `lhs <= rhs`
/// followed by `lhs >= rhs` for `=`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub problem: Problem,
    pub directions: Vec<DirectionResult>,
}

impl Report {
    pub fn is_proven(&self) -> bool {
        self.directions.iter().all(DirectionResult::is_proven)
    }

    pub fn failures(&self) -> impl Iterator<Item = &DirectionResult> {
        self.directions.iter().filter(|d| !d.is_proven())
    }

    pub fn verdict(&self) -> &'static str {
        if self.is_proven() {
            PROVEN
        } else {
            NOT_PROVABLE
        }
    }
}

pub fn prove(problem: &Problem) -> Result<Report, ProveError> {
    let n = problem.universe.len();
    let g = enumerate_eims(n)?;
    let q = build_q(&problem.assumptions, n)?;
    let directions = problem
        .statement
        .directions()
        .into_iter()
        .map(|relation| prove_direction(&problem.universe, relation, &g, &q))
        .collect::<Result<_, _>>()?;
    Ok(Report { problem: problem.clone(), directions })
}

/// [`prove`] restricted to `=` statements; proven iff both directions are.
pub fn prove_equality(problem: &Problem) -> Result<Report, ProveError> {
    if problem.statement.op != RelOp::Eq {
        return Err(ProveError::NotAnEquality);
    }
    prove(problem)
}

fn prove_direction(
    u: &VarUniverse,
    relation: Relation,
    g: &GMatrix,
    q: &QMatrix,
) -> Result<DirectionResult, ProveError> {
    let problem = ConeProblem::new(relation.difference(u.len())?, g.clone(), q.clone());
    let outcome = match solve(&problem)? {
        SolveOutcome::ProvenSti(certificate) => {
            let form = build_elemental_form(u, &relation, &problem, &certificate)?;
            Outcome::Proven { form, certificate }
        }
        SolveOutcome::NotProvable(ray) => Outcome::NotProvable { ray },
    };
    Ok(DirectionResult { relation, problem, outcome })
}

/// Human-readable account of a failed direction and its witness ray.
pub fn ray_summary(d: &DirectionResult, u: &VarUniverse) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "not provable: {}", d.relation.display(u));
    if let Outcome::NotProvable { ray } = &d.outcome {
        let coords: Vec<String> =
            ray.iter().map(|(s, v)| format!("h({}) = {}", s.display(u), format_rational(v))).collect();
        let coords = if coords.is_empty() { "0".to_string() } else { coords.join(", ") };
        let _ = writeln!(out, "  witness ray: {coords}");
        let _ = writeln!(
            out,
            "  every elemental inequality and assumption holds at h, but larger - smaller = {} there",
            format_rational(&objective_at(&d.problem, ray))
        );
    }
    out
}
