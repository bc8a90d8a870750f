//! Elemental-form proofs and their text and LaTeX renderings.
//!
//! A verified certificate rewrites `larger - smaller` as a positive
//! combination of elemental measures (each `>= 0`) plus multiples of
//! constraint expressions (each `= 0` by assumption). The rewrite is
//! re-checked from the labels alone before a form is handed out.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::canonical::CanonicalVector;
use crate::constraints::ConstraintRow;
use crate::elemental::ElementalTerm;
use crate::lp::{verify_certificate, Certificate, ConeProblem, LpError};
use crate::parser::{ConstraintDecl, InfoExpr, Measure, RelOp, Relation};
use crate::rational::{coefficient_prefix, Rational};
use crate::varset::{VarSet, VarUniverse};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("certificate does not verify against the problem")]
    UnverifiedCertificate,
    #[error("problem target is not the canonical difference of the statement")]
    TargetMismatch,
    #[error("an elemental form needs a one-sided relation (<= or >=)")]
    NotOneSided,
    #[error(transparent)]
    Lp(#[from] LpError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementalForm {
    pub universe: VarUniverse,
    /// One-sided statement being proved.
    pub statement: Relation,
    /// Assumptions and the rows each contributed, in input order.
    pub assumptions: Vec<(ConstraintDecl, Vec<ConstraintRow>)>,
    /// Strictly positive multipliers of elemental measures.
    pub eim_terms: Vec<(Rational, ElementalTerm)>,
    /// Nonzero multipliers `nu` of constraint rows; the identity subtracts
    /// them.
    pub constraint_terms: Vec<(Rational, ConstraintRow)>,
}

impl ElementalForm {
    pub fn n(&self) -> usize {
        self.universe.len()
    }

    /// `larger - smaller` as written in the statement.
    pub fn difference_expr(&self) -> InfoExpr {
        let (small, big) = self.statement.sides();
        big.minus(small)
    }

    /// Recomputes both sides of the identity from the measures alone.
    pub fn identity_holds(&self) -> bool {
        let n = self.n();
        let Ok(lhs) = self.difference_expr().canonical(n) else { return false };
        let mut rhs = CanonicalVector::zero(n);
        for (c, t) in &self.eim_terms {
            if !c.is_positive() {
                return false;
            }
            let Ok(v) = t.measure().canonical(n) else { return false };
            rhs.add_scaled(c, &v);
        }
        for (nu, r) in &self.constraint_terms {
            let Ok(v) = r.expr.canonical(n) else { return false };
            rhs.add_scaled(&-nu, &v);
        }
        lhs == rhs
    }
}

/// Attaches labels to the nonzero multipliers of a verified certificate.
pub fn build_elemental_form(
    u: &VarUniverse,
    statement: &Relation,
    p: &ConeProblem,
    c: &Certificate,
) -> Result<ElementalForm, ProofError> {
    if statement.op == RelOp::Eq {
        return Err(ProofError::NotOneSided);
    }
    let n = u.len();
    if statement.difference(n).ok().as_ref() != Some(&p.target) {
        return Err(ProofError::TargetMismatch);
    }
    if !verify_certificate(p, c)? {
        return Err(ProofError::UnverifiedCertificate);
    }
    let eim_terms =
        p.g.rows().iter().zip(&c.lambda).filter(|(_, l)| !l.is_zero()).map(|(t, l)| (l.clone(), t.clone())).collect();
    let constraint_terms =
        p.q.rows().iter().zip(&c.nu).filter(|(_, v)| !v.is_zero()).map(|(r, v)| (v.clone(), r.clone())).collect();
    let assumptions = p.q.decls().iter().map(|d| (d.clone(), p.q.rows_of(d).cloned().collect())).collect();
    let form =
        ElementalForm { universe: u.clone(), statement: statement.clone(), assumptions, eim_terms, constraint_terms };
    if !form.identity_holds() {
        return Err(ProofError::UnverifiedCertificate);
    }
    Ok(form)
}

// ---------------------------------------------------------------------------
// Plain text

fn signed_term(out: &mut String, first: bool, coeff: &Rational, body: &str, wrap: bool) {
    let neg = coeff.is_negative();
    match (first, neg) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
    let abs = coeff.abs();
    out.push_str(&coefficient_prefix(&abs));
    if wrap {
        let _ = write!(out, "({body})");
    } else {
        out.push_str(body);
    }
}

/// Whether a constraint label needs parentheses when multiplied.
fn compound(e: &InfoExpr) -> bool {
    e.len() != 1 || e.terms().any(|(c, _)| !c.is_one())
}

fn conclusion(f: &ElementalForm, tex: bool) -> String {
    let rel = match (f.statement.op, tex) {
        (RelOp::Geq, false) => "\u{2265}",
        (_, false) => "\u{2264}",
        (RelOp::Geq, true) => "$\\ge$",
        (_, true) => "$\\le$",
    };
    let why = match (f.eim_terms.is_empty(), f.constraint_terms.is_empty()) {
        (true, true) => "Both sides have the same canonical form",
        (false, true) => "Every elemental term is nonnegative",
        (true, false) => "Every constraint term vanishes",
        (false, false) => "Every elemental term is nonnegative and every constraint term vanishes",
    };
    let end = if tex { "$\\blacksquare$" } else { "\u{220e}" };
    alloc::format!("{why}, hence LHS {rel} RHS. {end}")
}

/// Deterministic multi-line proof.
pub fn render_text(f: &ElementalForm) -> String {
    let u = &f.universe;
    let mut out = String::new();
    let _ = writeln!(out, "Statement: {}", f.statement.display(u));
    if !f.assumptions.is_empty() {
        out.push_str("Assumptions:\n");
        for (d, rows) in &f.assumptions {
            let _ = writeln!(out, "  {}", d.display(u));
            for r in rows {
                let _ = writeln!(out, "    {} = 0", r.label(u));
            }
        }
    }
    out.push_str("Difference in elemental form:\n");
    let mut rhs = String::new();
    let mut first = true;
    for (c, t) in &f.eim_terms {
        signed_term(&mut rhs, first, c, &t.display(u).to_string(), false);
        first = false;
    }
    for (nu, r) in &f.constraint_terms {
        signed_term(&mut rhs, first, &-nu, &r.label(u), compound(&r.expr));
        first = false;
    }
    if first {
        rhs.push('0');
    }
    let _ = writeln!(out, "  {} = {}", f.difference_expr().display(u), rhs);
    for (_, t) in &f.eim_terms {
        let _ = writeln!(out, "    {} \u{2265} 0, elemental", t.display(u));
    }
    for (_, r) in &f.constraint_terms {
        let _ = writeln!(out, "    {} = 0, from {}", r.label(u), r.origin.describe(u));
    }
    out.push_str(&conclusion(f, false));
    out.push('\n');
    out
}

// ---------------------------------------------------------------------------
// LaTeX

/// Preamble needed to compile [`render_latex`] output.
pub const LATEX_PREAMBLE: &str = "\\documentclass{article}\n\\usepackage{amsmath,amssymb}\n";

fn tex_name(name: &str) -> String {
    name.replace('_', "\\_")
}

fn tex_set(s: VarSet, u: &VarUniverse) -> String {
    s.positions().map(|i| tex_name(u.name(i))).collect::<Vec<_>>().join(",")
}

fn tex_measure(m: &Measure, u: &VarUniverse) -> String {
    let (head, gamma) = match *m {
        Measure::Entropy { alpha, gamma } => (alloc::format!("H({}", tex_set(alpha, u)), gamma),
        Measure::MutualInfo { alpha, beta, gamma } => {
            (alloc::format!("I({};{}", tex_set(alpha, u), tex_set(beta, u)), gamma)
        }
    };
    if gamma.is_empty() {
        alloc::format!("{head})")
    } else {
        alloc::format!("{head} \\mid {})", tex_set(gamma, u))
    }
}

fn tex_coeff(abs: &Rational) -> String {
    if abs.is_one() {
        String::new()
    } else if abs.denom().is_one() {
        abs.numer().to_string()
    } else {
        alloc::format!("\\tfrac{{{}}}{{{}}}", abs.numer(), abs.denom())
    }
}

fn tex_expr(e: &InfoExpr, u: &VarUniverse) -> String {
    if e.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (c, m)) in e.terms().enumerate() {
        match (k, c.is_negative()) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let abs = c.abs();
        if abs.is_zero() {
            out.push_str("0 \\cdot ");
        } else {
            out.push_str(&tex_coeff(&abs));
        }
        out.push_str(&tex_measure(m, u));
    }
    out
}

fn tex_op(op: RelOp) -> &'static str {
    match op {
        RelOp::Leq => "\\le",
        RelOp::Geq => "\\ge",
        RelOp::Eq => "=",
    }
}

fn tex_describe(d: &ConstraintDecl, u: &VarUniverse) -> String {
    match d {
        ConstraintDecl::Explicit(e) => alloc::format!("assumption ${} = 0$", tex_expr(e, u)),
        _ => d.describe(u).replace('_', "\\_").replace(" -> ", " $\\to$ "),
    }
}

/// The proof as a LaTeX fragment built around an `align*` environment;
/// compiles with [`LATEX_PREAMBLE`].
pub fn render_latex(f: &ElementalForm) -> String {
    let u = &f.universe;
    let mut out = String::new();
    let s = &f.statement;
    let _ = writeln!(
        out,
        "\\noindent\\textbf{{Statement.}} ${} {} {}$\\\\",
        tex_expr(&s.lhs, u),
        tex_op(s.op),
        tex_expr(&s.rhs, u)
    );
    if !f.assumptions.is_empty() {
        out.push_str("\\textbf{Assumptions.}\n\\begin{itemize}\n");
        for (d, rows) in &f.assumptions {
            let eqs: Vec<String> = rows.iter().map(|r| alloc::format!("${} = 0$", tex_expr(&r.expr, u))).collect();
            if eqs.is_empty() {
                let _ = writeln!(out, "\\item {}", tex_describe(d, u));
            } else {
                let _ = writeln!(out, "\\item {}: {}", tex_describe(d, u), eqs.join(", "));
            }
        }
        out.push_str("\\end{itemize}\n");
    }
    out.push_str("\\textbf{Difference in elemental form.}\n\\begin{align*}\n");
    let mut lines: Vec<String> = Vec::new();
    for (c, t) in &f.eim_terms {
        let sign = if lines.is_empty() { "" } else { "+ " };
        lines.push(alloc::format!("{sign}{}{}", tex_coeff(c), tex_measure(&t.measure(), u)));
    }
    for (nu, r) in &f.constraint_terms {
        let coeff = -nu;
        let sign = match (lines.is_empty(), coeff.is_negative()) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => "- ",
            (false, false) => "+ ",
        };
        let body = tex_expr(&r.expr, u);
        let body = if compound(&r.expr) { alloc::format!("\\left({body}\\right)") } else { body };
        lines.push(alloc::format!("{sign}{}{body}", tex_coeff(&coeff.abs())));
    }
    if lines.is_empty() {
        lines.push("0".into());
    }
    let lhs = tex_expr(&f.difference_expr(), u);
    for (k, line) in lines.iter().enumerate() {
        let end = if k + 1 < lines.len() { " \\\\" } else { "" };
        if k == 0 {
            let _ = writeln!(out, "{lhs} &= {line}{end}");
        } else {
            let _ = writeln!(out, "&\\quad {line}{end}");
        }
    }
    out.push_str("\\end{align*}\n");
    if !(f.eim_terms.is_empty() && f.constraint_terms.is_empty()) {
        out.push_str("\\begin{itemize}\n");
        for (_, t) in &f.eim_terms {
            let _ = writeln!(out, "\\item ${} \\ge 0$, elemental", tex_measure(&t.measure(), u));
        }
        for (_, r) in &f.constraint_terms {
            let _ = writeln!(out, "\\item ${} = 0$, from {}", tex_expr(&r.expr, u), tex_describe(&r.origin, u));
        }
        out.push_str("\\end{itemize}\n");
    }
    out.push_str(&conclusion(f, true));
    out.push('\n');
    out
}
