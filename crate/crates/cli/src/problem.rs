//! Problem files.
//!
//! ```text
//! # Data processing along a chain.
//! vars: A, B, C, D
//! assume:
//!   markov: A -> B -> C -> D
//! prove: I(A;D) <= I(B;C)
//! ```
//!
//! `vars:` and `prove:` appear exactly once. Each `assume:` section holds
//! zero or more constraints, one per line, and may carry one inline.
//! Everything after `#` is a comment.

use std::fmt;

use shannon_core::parser::ParseError;
use shannon_core::prelude::*;
use thiserror::Error;

use crate::prove::Problem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemErrorKind {
    #[error("missing `vars:` line")]
    MissingVars,
    #[error("missing `prove:` line")]
    MissingProve,
    #[error("second `{0}:` line")]
    Duplicate(&'static str),
    #[error("line is outside any section; expected `vars:`, `assume:` or `prove:`")]
    UnexpectedLine,
    #[error(transparent)]
    Parse(ParseError),
}

/// Location is 1-based; `column` counts bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemError {
    pub line: usize,
    pub column: usize,
    pub kind: ProblemErrorKind,
}

impl std::error::Error for ProblemError {}

impl fmt::Display for ProblemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Parse errors carry their own offset, already folded into `column`.
        match &self.kind {
            ProblemErrorKind::Parse(e) => write!(f, "{}:{}: {}", self.line, self.column, e.kind),
            k => write!(f, "{}:{}: {k}", self.line, self.column),
        }
    }
}

/// A piece of the file together with where it starts.
#[derive(Clone, Copy)]
struct Span<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Span<'_> {
    fn error(&self, kind: ProblemErrorKind) -> ProblemError {
        ProblemError { line: self.line, column: self.column, kind }
    }

    fn parse<T>(&self, f: impl FnOnce(&str) -> Result<T, ParseError>) -> Result<T, ProblemError> {
        f(self.text).map_err(|e| ProblemError {
            line: self.line,
            column: self.column + e.offset,
            kind: ProblemErrorKind::Parse(e),
        })
    }
}

/// `s` must be a subslice of `raw`.
fn span<'a>(raw: &'a str, s: &'a str, line: usize) -> Span<'a> {
    let s = s.trim();
    let column = s.as_ptr() as usize - raw.as_ptr() as usize + 1;
    Span { text: s, line, column }
}

/// The text after `keyword:` if `line` opens that section.
fn section<'a>(line: &'a str, keyword: &str) -> Option<&'a str> {
    line.strip_prefix(keyword)?.trim_start().strip_prefix(':')
}

pub fn parse_problem(text: &str) -> Result<Problem, ProblemError> {
    let mut vars: Option<Span> = None;
    let mut prove: Option<Span> = None;
    let mut assumptions: Vec<Span> = Vec::new();
    let mut in_assume = false;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let code = raw.split('#').next().unwrap_or("");
        let content = code.trim();
        if content.is_empty() {
            continue;
        }
        let at = |s| span(raw, s, line);
        let here = at(content);
        if let Some(rest) = section(content, "vars") {
            if vars.is_some() {
                return Err(here.error(ProblemErrorKind::Duplicate("vars")));
            }
            vars = Some(at(rest));
            in_assume = false;
        } else if let Some(rest) = section(content, "prove") {
            if prove.is_some() {
                return Err(here.error(ProblemErrorKind::Duplicate("prove")));
            }
            prove = Some(at(rest));
            in_assume = false;
        } else if let Some(rest) = section(content, "assume") {
            in_assume = true;
            if !rest.trim().is_empty() {
                assumptions.push(at(rest));
            }
        } else if in_assume {
            assumptions.push(here);
        } else {
            return Err(here.error(ProblemErrorKind::UnexpectedLine));
        }
    }
    let end = ProblemError { line: last_line + 1, column: 1, kind: ProblemErrorKind::MissingVars };
    let vars = vars.ok_or(end.clone())?;
    let prove = prove.ok_or(ProblemError { kind: ProblemErrorKind::MissingProve, ..end })?;
    let universe = vars.parse(parse_universe)?;
    let assumptions =
        assumptions.iter().map(|s| s.parse(|t| parse_constraint(t, &universe))).collect::<Result<_, _>>()?;
    let statement = prove.parse(|t| parse_relation(t, &universe))?;
    Ok(Problem { universe, assumptions, statement })
}

#[cfg(test)]
mod tests {
    use super::*;
    use shannon_core::parser::ParseErrorKind;

    #[test]
    fn parses_sections_comments_and_inline_assumptions() {
        let p = parse_problem(
            "# chain\nvars: A, B, C, D   # four\n\nassume:\n  markov: A -> B -> C -> D\nprove: I(A;D) <= I(B;C)\n",
        )
        .unwrap();
        assert_eq!(p.universe.names(), ["A", "B", "C", "D"]);
        assert_eq!(p.assumptions.len(), 1);
        assert_eq!(p.statement.op, RelOp::Leq);

        let p = parse_problem("assume: indep: X ; Y\nvars: X Y\nassume:\nprove: H(X,Y) = H(X) + H(Y)").unwrap();
        assert_eq!(p.assumptions.len(), 1);
        assert_eq!(p.statement.op, RelOp::Eq);
    }

    #[test]
    fn missing_and_duplicate_sections() {
        assert_eq!(parse_problem("prove: H(X) >= 0").unwrap_err().kind, ProblemErrorKind::MissingVars);
        let e = parse_problem("vars: X\nassume:\n").unwrap_err();
        assert_eq!((e.line, e.kind), (3, ProblemErrorKind::MissingProve));
        let e = parse_problem("vars: X\nvars: Y\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 1));
        assert_eq!(e.kind, ProblemErrorKind::Duplicate("vars"));
        let e = parse_problem("vars: X\nH(X) >= 0\n").unwrap_err();
        assert_eq!(e.kind, ProblemErrorKind::UnexpectedLine);
    }

    #[test]
    fn parse_errors_point_into_the_line() {
        let e = parse_problem("vars: X, Y\nprove:  H(X) <= H(Z)\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(matches!(&e.kind, ProblemErrorKind::Parse(p) if matches!(p.kind, ParseErrorKind::UnknownVariable(_))));
        // `Z` is the 19th byte of the line.
        assert_eq!(e.column, 19);
        assert!(e.to_string().starts_with("2:19: "), "{e}");

        let e = parse_problem("vars: X, Y\nassume:\n    markov: X -> Y\nprove: H(X) >= 0").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(matches!(&e.kind, ProblemErrorKind::Parse(_)));
    }
}
