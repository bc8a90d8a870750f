//! Independent verifier for JSON proof documents.
//!
//! It knows the statement and the vanishing expressions of the assumptions
//! and reads nothing from a document except labels and numbers.

use num_traits::{Signed, Zero};
use serde_json::Value;

use super::expr::{elemental_rows, is_elemental, q_from_parts, split_relation, sub, Universe, Q};
use super::oracle::null_space;

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, String> {
    v.get(key).ok_or(format!("missing field {key:?}"))
}

fn string<'a>(v: &'a Value, key: &str) -> Result<&'a str, String> {
    field(v, key)?.as_str().ok_or(format!("field {key:?} is not a string"))
}

fn array<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>, String> {
    field(v, key)?.as_array().ok_or(format!("field {key:?} is not an array"))
}

/// Whether `v` lies in the span of `basis`.
fn in_span(v: &[Q], basis: &[Vec<Q>], dim: usize) -> bool {
    let mut with = basis.to_vec();
    with.push(v.to_vec());
    null_space(&with, dim).len() == null_space(basis, dim).len()
}

/// Checks one document proving one direction of `statement` (which may be
/// an equality) under assumptions whose span is given by `q_rows`.
pub fn check_document(doc: &Value, statement: &str, vars: &[&str], q_rows: &[&str]) -> Result<(), String> {
    if field(doc, "schema_version")?.as_u64() != Some(1) {
        return Err("schema_version is not 1".into());
    }
    if field(doc, "verified")?.as_bool() != Some(true) {
        return Err("document is not marked verified".into());
    }
    let names: Vec<&str> = array(doc, "universe")?.iter().filter_map(Value::as_str).collect();
    if names != vars {
        return Err(format!("universe {names:?} differs from {vars:?}"));
    }
    let u = Universe::new(vars);
    let dim = u.dim();

    let st = field(doc, "statement")?;
    let (lhs, rhs, op) = (u.vector(string(st, "lhs")?)?, u.vector(string(st, "rhs")?)?, string(st, "op")?);
    let (want_l, want_op, want_r) = split_relation(statement)?;
    if lhs != u.vector(&want_l)? || rhs != u.vector(&want_r)? {
        return Err("statement sides differ from the expected ones".into());
    }
    let target = match op {
        "<=" if want_op != ">=" => sub(&rhs, &lhs),
        ">=" if want_op != "<=" => sub(&lhs, &rhs),
        _ => return Err(format!("op {op:?} does not prove {want_op:?}")),
    };

    let assumed: Vec<Vec<Q>> = q_rows.iter().map(|e| u.vector(e)).collect::<Result<_, _>>()?;
    let mut listed = Vec::new();
    for c in array(doc, "constraints")? {
        for r in array(c, "rows")? {
            listed.push(r.as_str().ok_or("constraint row is not a string")?.to_string());
        }
    }

    let cert = field(doc, "certificate")?;
    let mut sum = vec![Q::zero(); dim];
    let lambda = array(cert, "lambda")?;
    let mut seen = Vec::new();
    for e in lambda {
        let label = string(e, "row_label")?;
        let t = u.term(label)?;
        if !is_elemental(&t, u.n()) {
            return Err(format!("{label} is not elemental"));
        }
        if seen.contains(&t) {
            return Err(format!("{label} appears twice"));
        }
        seen.push(t.clone());
        let c = q_from_parts(string(e, "num")?, string(e, "den")?)?;
        if c.is_negative() {
            return Err(format!("negative multiplier on {label}"));
        }
        for (s, x) in sum.iter_mut().zip(u.term_vector(&t)) {
            *s += c * x;
        }
    }
    if seen.len() != elemental_rows(&u).len() {
        return Err(format!("{} elemental multipliers, expected {}", seen.len(), elemental_rows(&u).len()));
    }
    for e in array(cert, "nu")? {
        let label = string(e, "row_label")?;
        if !listed.iter().any(|l| l == label) {
            return Err(format!("{label} is not among the constraint rows"));
        }
        let row = u.vector(label)?;
        if !in_span(&row, &assumed, dim) {
            return Err(format!("{label} does not follow from the assumptions"));
        }
        let c = q_from_parts(string(e, "num")?, string(e, "den")?)?;
        for (s, x) in sum.iter_mut().zip(row) {
            *s -= c * x;
        }
    }
    if sum != target {
        return Err("multipliers do not reproduce larger - smaller".into());
    }
    Ok(())
}

/// Checks every document in `text` (an object or an array) and that
/// together they cover each direction of `statement`.
pub fn check_output(text: &str, statement: &str, vars: &[&str], q_rows: &[&str]) -> Result<(), String> {
    let v: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let docs = match v {
        Value::Array(items) => items,
        other => vec![other],
    };
    let (_, op, _) = split_relation(statement)?;
    let expected = if op == "=" { 2 } else { 1 };
    if docs.len() != expected {
        return Err(format!("{} documents, expected {expected}", docs.len()));
    }
    let mut ops = Vec::new();
    for d in &docs {
        check_document(d, statement, vars, q_rows)?;
        ops.push(d["statement"]["op"].clone());
    }
    ops.dedup();
    if ops.len() != expected {
        return Err("an equality needs one document per direction".into());
    }
    Ok(())
}
