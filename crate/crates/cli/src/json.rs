//! JSON proof documents, schema version 1.
//!
//! ```text
//! { "schema_version": 1,
//!   "statement":   { "lhs": "...", "rhs": "...", "op": "<=" | ">=" },
//!   "universe":    ["A", ...],
//!   "constraints": [{ "decl": "markov: A -> B -> C", "rows": ["I(A;C|B)"] }],
//!   "certificate": { "lambda": [{ "row_label": "...", "num": "1", "den": "2" }],
//!                    "nu":     [...] },
//!   "verified": true }
//! ```
//!
//! `lambda` has one entry per elemental row and `nu` one per constraint
//! row, zeros included, in matrix order. The certificate states
//! `larger - smaller = sum lambda * row - sum nu * row` in canonical form.
//! An equality statement is emitted as an array of two documents.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use shannon_core::parser::ParseError;
use shannon_core::prelude::*;
use thiserror::Error;

use crate::prove::{prove, Outcome, Problem, ProveError, Report};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofDocument {
    pub schema_version: u32,
    pub statement: StatementDoc,
    pub universe: Vec<String>,
    pub constraints: Vec<ConstraintDoc>,
    pub certificate: CertificateDoc,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatementDoc {
    pub lhs: String,
    pub rhs: String,
    pub op: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintDoc {
    pub decl: String,
    pub rows: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub lambda: Vec<Multiplier>,
    pub nu: Vec<Multiplier>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multiplier {
    pub row_label: String,
    pub num: String,
    pub den: String,
}

impl Multiplier {
    fn new(row_label: String, v: &Rational) -> Self {
        Multiplier { row_label, num: v.numer().to_string(), den: v.denom().to_string() }
    }

    pub fn value(&self) -> Result<Rational, JsonError> {
        let bad = || JsonError::BadNumber(format!("{}/{}", self.num, self.den));
        let num: BigInt = self.num.parse().map_err(|_| bad())?;
        let den: BigInt = self.den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Rational::new(num, den))
    }
}

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("unsupported schema_version {0}")]
    Version(u32),
    #[error("cannot parse {field}: {source}")]
    Parse { field: String, source: ParseError },
    #[error("invalid rational {0}")]
    BadNumber(String),
    #[error("{which} has {found} entries, expected {expected}")]
    Length { which: &'static str, found: usize, expected: usize },
    #[error("{which}[{index}] is labelled {found:?}, expected {expected:?}")]
    Label { which: &'static str, index: usize, found: String, expected: String },
    #[error("statement op {0:?} is not <= or >=")]
    Op(String),
    #[error(transparent)]
    Prove(#[from] ProveError),
}

/// Document for one proven direction.
pub fn proof_document(u: &VarUniverse, p: &ConeProblem, c: &Certificate, statement: &Relation) -> ProofDocument {
    let constraints = p
        .q
        .decls()
        .iter()
        .map(|d| ConstraintDoc { decl: d.display(u).to_string(), rows: p.q.rows_of(d).map(|r| r.label(u)).collect() })
        .collect();
    let lambda = p.g.rows().iter().zip(&c.lambda).map(|(r, v)| Multiplier::new(r.display(u).to_string(), v)).collect();
    let nu = p.q.rows().iter().zip(&c.nu).map(|(r, v)| Multiplier::new(r.label(u), v)).collect();
    ProofDocument {
        schema_version: SCHEMA_VERSION,
        statement: StatementDoc {
            lhs: statement.lhs.display(u).to_string(),
            rhs: statement.rhs.display(u).to_string(),
            op: statement.op.as_str().to_string(),
        },
        universe: u.names().to_vec(),
        constraints,
        certificate: CertificateDoc { lambda, nu },
        verified: verify_certificate(p, c).unwrap_or(false),
    }
}

/// Pretty-printed documents for every proven direction of `report`: one
/// object for a one-sided statement, an array of two for an equality.
pub fn render_json(report: &Report) -> String {
    let u = &report.problem.universe;
    let docs: Vec<ProofDocument> = report
        .directions
        .iter()
        .filter_map(|d| match &d.outcome {
            Outcome::Proven { certificate, .. } => Some(proof_document(u, &d.problem, certificate, &d.relation)),
            Outcome::NotProvable { .. } => None,
        })
        .collect();
    let text = match (report.problem.statement.op, docs.as_slice()) {
        (RelOp::Leq | RelOp::Geq, [one]) => serde_json::to_string_pretty(one),
        _ => serde_json::to_string_pretty(&docs),
    };
    text.expect("documents serialize") + "\n"
}

/// Rebuilds the problem from the document's text fields and checks the
/// multipliers against it exactly. Labels must match the rebuilt rows.
pub fn reverify(doc: &ProofDocument) -> Result<bool, JsonError> {
    if doc.schema_version != SCHEMA_VERSION {
        return Err(JsonError::Version(doc.schema_version));
    }
    let parse_err = |field: &str| {
        let field = field.to_string();
        move |source| JsonError::Parse { field: field.clone(), source }
    };
    let universe = parse_universe(&doc.universe.join(",")).map_err(parse_err("universe"))?;
    let s = &doc.statement;
    if s.op != "<=" && s.op != ">=" {
        return Err(JsonError::Op(s.op.clone()));
    }
    let statement =
        parse_relation(&format!("{} {} {}", s.lhs, s.op, s.rhs), &universe).map_err(parse_err("statement"))?;
    let assumptions = doc
        .constraints
        .iter()
        .enumerate()
        .map(|(i, c)| parse_constraint(&c.decl, &universe).map_err(parse_err(&format!("constraints[{i}]"))))
        .collect::<Result<Vec<_>, _>>()?;
    let report = prove(&Problem { universe: universe.clone(), assumptions, statement })?;
    let p = &report.directions[0].problem;
    let g_labels: Vec<String> = p.g.rows().iter().map(|r| r.display(&universe).to_string()).collect();
    let q_labels: Vec<String> = p.q.rows().iter().map(|r| r.label(&universe)).collect();
    let lambda = values("lambda", &doc.certificate.lambda, &g_labels)?;
    let nu = values("nu", &doc.certificate.nu, &q_labels)?;
    Ok(verify_certificate(p, &Certificate { lambda, nu }).map_err(ProveError::from)?)
}

fn values(which: &'static str, entries: &[Multiplier], labels: &[String]) -> Result<Vec<Rational>, JsonError> {
    if entries.len() != labels.len() {
        return Err(JsonError::Length { which, found: entries.len(), expected: labels.len() });
    }
    entries
        .iter()
        .zip(labels)
        .enumerate()
        .map(|(index, (m, label))| {
            if &m.row_label != label {
                return Err(JsonError::Label { which, index, found: m.row_label.clone(), expected: label.clone() });
            }
            m.value()
        })
        .collect()
}

/// [`reverify`] on a single document or an array of them; true iff all
/// pass.
pub fn reverify_str(text: &str) -> Result<bool, JsonError> {
    let docs: Vec<ProofDocument> = match serde_json::from_str::<Value>(text)? {
        Value::Array(items) => items.into_iter().map(serde_json::from_value).collect::<Result<_, _>>()?,
        v => vec![serde_json::from_value(v)?],
    };
    for d in &docs {
        if !reverify(d)? {
            return Ok(false);
        }
    }
    Ok(!docs.is_empty())
}
