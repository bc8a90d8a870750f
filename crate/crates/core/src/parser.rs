//! Text syntax for universes, information expressions, relations and
//! constraint declarations.
//!
//! ```text
//! expr     := [sign] term (('+'|'-') term)*
//! term     := [rat '*'?] measure | '0'
//! rat      := int | int '/' int
//! measure  := 'H' '(' vlist ['|' vlist] ')' | 'I' '(' vlist ';' vlist ['|' vlist] ')'
//! vlist    := ident (',' ident)*
//! relation := expr ('<=' | '>=' | '=') expr
//! ```
//!
//! Constraint lines are one of `markov: A -> (B,C) -> D`, `indep: A ; B`,
//! `pairwise: A ; B ; C`, `func: C = f(A,B)`, `factor: P(A,B) P(C|B)` or a
//! bare relation `expr = expr`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::canonical::{canonicalize, CanonicalError, CanonicalVector};
use crate::rational::{coefficient_prefix, Rational};
use crate::varset::{VarSet, VarUniverse, MAX_VARS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("empty argument list")]
    EmptyArgumentList,
    #[error("duplicate variable name `{0}`")]
    DuplicateName(String),
    #[error("invalid identifier `{0}`")]
    InvalidIdentifier(String),
    #[error("no variables declared")]
    EmptyUniverse,
    #[error("{0} variables declared, at most {MAX_VARS} are supported")]
    TooManyVariables(usize),
    #[error("missing relational operator (expected <=, >= or =)")]
    MissingRelationalOperator,
    #[error("strict inequalities are not supported; use <= or >=")]
    StrictInequality,
    #[error("constant term `{0}` (only 0 may appear without a measure)")]
    ConstantTerm(String),
    #[error("zero denominator in coefficient")]
    ZeroDenominator,
    #[error("explicit constraints must be equalities")]
    ExplicitNotEquality,
    #[error(transparent)]
    Invalid(#[from] DeclError),
}

/// A parse failure and the byte offset in the input where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at byte {offset}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub offset: usize,
}

impl ParseError {
    fn new(kind: ParseErrorKind, offset: usize) -> Self {
        ParseError { kind, offset }
    }
}

/// Structural problems with a constraint declaration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeclError {
    #[error("a Markov chain needs at least 3 blocks, found {0}")]
    TooFewBlocks(usize),
    #[error("Markov chain blocks overlap")]
    OverlappingBlocks,
    #[error("independence needs at least 2 groups, found {0}")]
    TooFewGroups(usize),
    #[error("independence groups overlap")]
    OverlappingGroups,
    #[error("empty variable set")]
    EmptySet,
    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),
    #[error("variable set {0:?} lies outside the universe")]
    OutsideUniverse(VarSet),
}

/// Basic information measure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Measure {
    /// `H(X_alpha | X_gamma)`; `gamma` may be empty.
    Entropy { alpha: VarSet, gamma: VarSet },
    /// `I(X_alpha ; X_beta | X_gamma)`; `gamma` may be empty.
    MutualInfo { alpha: VarSet, beta: VarSet, gamma: VarSet },
}

impl Measure {
    pub fn entropy(alpha: VarSet, gamma: VarSet) -> Self {
        Measure::Entropy { alpha, gamma }
    }

    pub fn mutual_info(alpha: VarSet, beta: VarSet, gamma: VarSet) -> Self {
        Measure::MutualInfo { alpha, beta, gamma }
    }

    pub fn display<'a>(&'a self, u: &'a VarUniverse) -> impl fmt::Display + 'a {
        DisplayMeasure { m: self, u }
    }
}

struct DisplayMeasure<'a> {
    m: &'a Measure,
    u: &'a VarUniverse,
}

impl fmt::Display for DisplayMeasure<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u = self.u;
        let gamma = match *self.m {
            Measure::Entropy { alpha, gamma } => {
                write!(f, "H({}", alpha.display(u))?;
                gamma
            }
            Measure::MutualInfo { alpha, beta, gamma } => {
                write!(f, "I({};{}", alpha.display(u), beta.display(u))?;
                gamma
            }
        };
        if !gamma.is_empty() {
            write!(f, "|{}", gamma.display(u))?;
        }
        f.write_str(")")
    }
}

/// Linear combination of basic information measures with exact rational
/// coefficients. The empty list is the zero expression.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct InfoExpr {
    terms: Vec<(Rational, Measure)>,
}

impl InfoExpr {
    pub fn new() -> Self {
        InfoExpr::default()
    }

    pub fn from_terms(terms: Vec<(Rational, Measure)>) -> Self {
        InfoExpr { terms }
    }

    pub fn single(m: Measure) -> Self {
        InfoExpr { terms: alloc::vec![(Rational::one(), m)] }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Measure)> {
        self.terms.iter().map(|(c, m)| (c, m))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn push(&mut self, coeff: Rational, m: Measure) {
        self.terms.push((coeff, m));
    }

    /// `self - other`, keeping all terms of both sides.
    pub fn minus(&self, other: &InfoExpr) -> InfoExpr {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().map(|(c, m)| (-c, *m)));
        InfoExpr { terms }
    }

    pub fn canonical(&self, n: usize) -> Result<CanonicalVector, CanonicalError> {
        canonicalize(self, n)
    }

    /// Renders in the input grammar; the result reparses to an equal AST.
    pub fn display<'a>(&'a self, u: &'a VarUniverse) -> impl fmt::Display + 'a {
        DisplayExpr { e: self, u }
    }
}

struct DisplayExpr<'a> {
    e: &'a InfoExpr,
    u: &'a VarUniverse,
}

impl fmt::Display for DisplayExpr<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (c, m)) in self.e.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if abs.is_zero() {
                f.write_str("0*")?;
            } else {
                f.write_str(&coefficient_prefix(&abs))?;
            }
            write!(f, "{}", m.display(self.u))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelOp {
    Leq,
    Geq,
    Eq,
}

impl RelOp {
    pub fn as_str(self) -> &'static str {
        match self {
            RelOp::Leq => "<=",
            RelOp::Geq => ">=",
            RelOp::Eq => "=",
        }
    }
}

impl fmt::Display for RelOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub lhs: InfoExpr,
    pub rhs: InfoExpr,
    pub op: RelOp,
}

impl Relation {
    /// The side claimed to be smaller and the side claimed to be larger.
    /// For an equality this is the `lhs <= rhs` direction.
    pub fn sides(&self) -> (&InfoExpr, &InfoExpr) {
        match self.op {
            RelOp::Leq | RelOp::Eq => (&self.lhs, &self.rhs),
            RelOp::Geq => (&self.rhs, &self.lhs),
        }
    }

    /// Canonical form of larger side minus smaller side.
    pub fn difference(&self, n: usize) -> Result<CanonicalVector, CanonicalError> {
        let (small, big) = self.sides();
        big.minus(small).canonical(n)
    }

    /// The one-sided relations that together make up `self`: itself for
    /// `<=`/`>=`, and `lhs <= rhs`, `lhs >= rhs` for `=`.
    pub fn directions(&self) -> Vec<Relation> {
        match self.op {
            RelOp::Eq => {
                alloc::vec![Relation { op: RelOp::Leq, ..self.clone() }, Relation { op: RelOp::Geq, ..self.clone() },]
            }
            _ => alloc::vec![self.clone()],
        }
    }

    pub fn display<'a>(&'a self, u: &'a VarUniverse) -> impl fmt::Display + 'a {
        DisplayRelation { r: self, u }
    }
}

struct DisplayRelation<'a> {
    r: &'a Relation,
    u: &'a VarUniverse,
}

impl fmt::Display for DisplayRelation<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.r.lhs.display(self.u), self.r.op, self.r.rhs.display(self.u))
    }
}

/// Structural assumption on the joint distribution.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ConstraintDecl {
    MarkovChain(Vec<VarSet>),
    MutualIndep(Vec<VarSet>),
    PairwiseIndep(Vec<VarSet>),
    FuncDep {
        target: VarSet,
        source: VarSet,
    },
    /// Asserted equal to zero.
    Explicit(InfoExpr),
    /// Ordered `(head, given)` factors `P(head | given)`.
    Factorization(Vec<(VarSet, VarSet)>),
}

fn check_disjoint(sets: &[VarSet]) -> bool {
    let mut seen = VarSet::EMPTY;
    for s in sets {
        if !s.is_disjoint(seen) {
            return false;
        }
        seen = seen.union(*s);
    }
    true
}

impl ConstraintDecl {
    /// Checks the structural invariants against a universe of size `n`.
    pub fn validate(&self, n: usize) -> Result<(), DeclError> {
        let full = VarSet::full(n);
        let inside = |s: VarSet| if s.is_subset(full) { Ok(()) } else { Err(DeclError::OutsideUniverse(s)) };
        match self {
            ConstraintDecl::MarkovChain(blocks) => {
                if blocks.len() < 3 {
                    return Err(DeclError::TooFewBlocks(blocks.len()));
                }
                for b in blocks {
                    if b.is_empty() {
                        return Err(DeclError::EmptySet);
                    }
                    inside(*b)?;
                }
                if !check_disjoint(blocks) {
                    return Err(DeclError::OverlappingBlocks);
                }
            }
            ConstraintDecl::MutualIndep(groups) | ConstraintDecl::PairwiseIndep(groups) => {
                if groups.len() < 2 {
                    return Err(DeclError::TooFewGroups(groups.len()));
                }
                for g in groups {
                    if g.is_empty() {
                        return Err(DeclError::EmptySet);
                    }
                    inside(*g)?;
                }
                if !check_disjoint(groups) {
                    return Err(DeclError::OverlappingGroups);
                }
            }
            ConstraintDecl::FuncDep { target, source } => {
                if target.is_empty() || source.is_empty() {
                    return Err(DeclError::EmptySet);
                }
                inside(*target)?;
                inside(*source)?;
            }
            ConstraintDecl::Explicit(e) => {
                for (_, m) in e.terms() {
                    let sets = match *m {
                        Measure::Entropy { alpha, gamma } => [alpha, gamma, VarSet::EMPTY],
                        Measure::MutualInfo { alpha, beta, gamma } => [alpha, beta, gamma],
                    };
                    for s in sets {
                        inside(s)?;
                    }
                }
            }
            ConstraintDecl::Factorization(factors) => {
                let mut introduced = VarSet::EMPTY;
                for (k, (head, given)) in factors.iter().enumerate() {
                    if head.is_empty() {
                        return Err(DeclError::InvalidFactorization(alloc::format!(
                            "factor {} has an empty head",
                            k + 1
                        )));
                    }
                    inside(*head)?;
                    inside(*given)?;
                    if !head.is_disjoint(introduced) {
                        return Err(DeclError::InvalidFactorization(alloc::format!(
                            "factor {} repeats a variable that already has a defining factor",
                            k + 1
                        )));
                    }
                    if !given.is_subset(introduced) {
                        return Err(DeclError::InvalidFactorization(alloc::format!(
                            "factor {} conditions on a variable not introduced by an earlier factor",
                            k + 1
                        )));
                    }
                    introduced = introduced.union(*head);
                }
                if introduced != full {
                    return Err(DeclError::InvalidFactorization(
                        "every variable needs exactly one defining factor".to_string(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Renders in the constraint-line syntax accepted by [`parse_constraint`].
    pub fn display<'a>(&'a self, u: &'a VarUniverse) -> impl fmt::Display + 'a {
        DisplayDecl { d: self, u }
    }

    /// Short phrase naming the assumption, used to justify `= 0` terms.
    pub fn describe(&self, u: &VarUniverse) -> String {
        let list = |sets: &[VarSet], sep: &str| sets.iter().map(|s| block(*s, u)).collect::<Vec<_>>().join(sep);
        match self {
            ConstraintDecl::MarkovChain(b) => alloc::format!("Markov chain {}", list(b, " -> ")),
            ConstraintDecl::MutualIndep(g) => alloc::format!("mutual independence of {}", list(g, "; ")),
            ConstraintDecl::PairwiseIndep(g) => alloc::format!("pairwise independence of {}", list(g, "; ")),
            ConstraintDecl::FuncDep { target, source } => {
                alloc::format!("{} is a function of {}", target.display(u), source.display(u))
            }
            ConstraintDecl::Explicit(e) => alloc::format!("assumption {} = 0", e.display(u)),
            ConstraintDecl::Factorization(_) => alloc::format!("factorization {}", factor_list(self, u)),
        }
    }
}

fn block(s: VarSet, u: &VarUniverse) -> String {
    if s.len() == 1 {
        s.display(u).to_string()
    } else {
        alloc::format!("({})", s.display(u))
    }
}

fn factor_list(d: &ConstraintDecl, u: &VarUniverse) -> String {
    let ConstraintDecl::Factorization(factors) = d else { return String::new() };
    factors
        .iter()
        .map(|(h, g)| {
            if g.is_empty() {
                alloc::format!("P({})", h.display(u))
            } else {
                alloc::format!("P({}|{})", h.display(u), g.display(u))
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

struct DisplayDecl<'a> {
    d: &'a ConstraintDecl,
    u: &'a VarUniverse,
}

impl fmt::Display for DisplayDecl<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u = self.u;
        let join = |sets: &[VarSet], sep: &str| sets.iter().map(|s| block(*s, u)).collect::<Vec<_>>().join(sep);
        let plain = |sets: &[VarSet]| sets.iter().map(|s| s.display(u).to_string()).collect::<Vec<_>>().join(" ; ");
        match self.d {
            ConstraintDecl::MarkovChain(b) => write!(f, "markov: {}", join(b, " -> ")),
            ConstraintDecl::MutualIndep(g) => write!(f, "indep: {}", plain(g)),
            ConstraintDecl::PairwiseIndep(g) => write!(f, "pairwise: {}", plain(g)),
            ConstraintDecl::FuncDep { target, source } => {
                write!(f, "func: {} = f({})", target.display(u), source.display(u))
            }
            ConstraintDecl::Explicit(e) => write!(f, "{} = 0", e.display(u)),
            ConstraintDecl::Factorization(_) => write!(f, "factor: {}", factor_list(self.d, u)),
        }
    }
}

// ---------------------------------------------------------------------------
// Lexer

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    LParen,
    RParen,
    Comma,
    Semi,
    Bar,
    Plus,
    Minus,
    Star,
    Slash,
    Le,
    Ge,
    Eq,
    Lt,
    Gt,
    Arrow,
    Colon,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => alloc::format!("`{s}`"),
            Tok::Int(i) => alloc::format!("`{i}`"),
            Tok::End => "end of input".to_string(),
            other => {
                let s = match other {
                    Tok::LParen => "(",
                    Tok::RParen => ")",
                    Tok::Comma => ",",
                    Tok::Semi => ";",
                    Tok::Bar => "|",
                    Tok::Plus => "+",
                    Tok::Minus => "-",
                    Tok::Star => "*",
                    Tok::Slash => "/",
                    Tok::Le => "<=",
                    Tok::Ge => ">=",
                    Tok::Eq => "=",
                    Tok::Lt => "<",
                    Tok::Gt => ">",
                    Tok::Arrow => "->",
                    Tok::Colon => ":",
                    _ => unreachable!(),
                };
                alloc::format!("`{s}`")
            }
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(at, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut end = at;
            while let Some(&(i, d)) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    end = i + d.len_utf8();
                    chars.next();
                } else {
                    break;
                }
            }
            out.push((Tok::Ident(text[at..end].to_string()), at));
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = at;
            while let Some(&(i, d)) = chars.peek() {
                if d.is_ascii_digit() {
                    end = i + 1;
                    chars.next();
                } else {
                    break;
                }
            }
            let value: BigInt = text[at..end].parse().expect("ascii digits");
            out.push((Tok::Int(value), at));
            continue;
        }
        chars.next();
        let next_is = |chars: &mut core::iter::Peekable<core::str::CharIndices<'_>>, want: char| {
            if chars.peek().map(|&(_, d)| d) == Some(want) {
                chars.next();
                true
            } else {
                false
            }
        };
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            '|' => Tok::Bar,
            '+' => Tok::Plus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            ':' => Tok::Colon,
            '=' => Tok::Eq,
            '\u{2212}' => Tok::Minus,
            '\u{2264}' => Tok::Le,
            '\u{2265}' => Tok::Ge,
            '\u{2192}' | '\u{2194}' => Tok::Arrow,
            '-' => {
                if next_is(&mut chars, '>') {
                    Tok::Arrow
                } else {
                    Tok::Minus
                }
            }
            '>' => {
                if next_is(&mut chars, '=') {
                    Tok::Ge
                } else {
                    Tok::Gt
                }
            }
            '<' => {
                if next_is(&mut chars, '=') {
                    Tok::Le
                } else if chars.peek().map(|&(_, d)| d) == Some('-') && text[at + 1..].starts_with("->") {
                    chars.next();
                    chars.next();
                    Tok::Arrow
                } else {
                    Tok::Lt
                }
            }
            other => {
                return Err(ParseError::new(
                    ParseErrorKind::Syntax(alloc::format!("unexpected character `{other}`")),
                    at,
                ))
            }
        };
        out.push((tok, at));
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parser

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    u: &'a VarUniverse,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn new(text: &str, u: &'a VarUniverse) -> PResult<Self> {
        Ok(Parser { toks: lex(text)?, pos: 0, u })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn unexpected<T>(&self, expected: &str) -> PResult<T> {
        Err(ParseError::new(
            ParseErrorKind::Syntax(alloc::format!("expected {expected}, found {}", self.peek().describe())),
            self.offset(),
        ))
    }

    fn expect(&mut self, t: Tok, expected: &str) -> PResult<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            self.unexpected(expected)
        }
    }

    fn expect_end(&self) -> PResult<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.unexpected("end of input")
        }
    }

    fn variable(&mut self) -> PResult<VarSet> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                match self.u.position(&name) {
                    Some(p) => Ok(VarSet::singleton(p)),
                    None => Err(ParseError::new(ParseErrorKind::UnknownVariable(name), at)),
                }
            }
            _ => self.unexpected("variable name"),
        }
    }

    /// `ident (',' ident)*`; `empty_kind` is reported when the list is
    /// empty (next token is a closing delimiter).
    fn vlist(&mut self, empty_kind: Option<ParseErrorKind>) -> PResult<VarSet> {
        if let (Some(kind), Tok::RParen | Tok::Bar | Tok::Semi) = (empty_kind, self.peek()) {
            return Err(ParseError::new(kind, self.offset()));
        }
        let mut set = self.variable()?;
        while self.eat(&Tok::Comma) {
            set = set.union(self.variable()?);
        }
        Ok(set)
    }

    fn conditioning(&mut self) -> PResult<VarSet> {
        if self.eat(&Tok::Bar) {
            if matches!(self.peek(), Tok::RParen) {
                return self.unexpected("variable name after `|`");
            }
            self.vlist(None)
        } else {
            Ok(VarSet::EMPTY)
        }
    }

    fn at_measure(&self) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == "H" || s == "I") && *self.peek_at(1) == Tok::LParen
    }

    fn measure(&mut self) -> PResult<Measure> {
        let Tok::Ident(name) = self.peek().clone() else { return self.unexpected("`H(` or `I(`") };
        if !self.at_measure() {
            return self.unexpected("`H(` or `I(`");
        }
        self.bump();
        self.bump();
        let m = if name == "H" {
            let alpha = self.vlist(Some(ParseErrorKind::EmptyArgumentList))?;
            let gamma = self.conditioning()?;
            Measure::Entropy { alpha, gamma }
        } else {
            let alpha = self.vlist(Some(ParseErrorKind::EmptyArgumentList))?;
            self.expect(Tok::Semi, "`;`")?;
            let beta = self.vlist(Some(ParseErrorKind::EmptyArgumentList))?;
            let gamma = self.conditioning()?;
            Measure::MutualInfo { alpha, beta, gamma }
        };
        self.expect(Tok::RParen, "`)`")?;
        Ok(m)
    }

    fn rational(&mut self) -> PResult<Rational> {
        let Tok::Int(num) = self.bump() else { unreachable!("caller checked for an integer") };
        if *self.peek() == Tok::Slash {
            self.bump();
            let at = self.offset();
            let Tok::Int(den) = self.peek().clone() else { return self.unexpected("denominator") };
            self.bump();
            if den.is_zero() {
                return Err(ParseError::new(ParseErrorKind::ZeroDenominator, at));
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn term(&mut self, negate: bool, out: &mut InfoExpr) -> PResult<()> {
        let at = self.offset();
        let coeff = if matches!(self.peek(), Tok::Int(_)) {
            let c = self.rational()?;
            let starred = self.eat(&Tok::Star);
            if !starred && !self.at_measure() {
                if c.is_zero() {
                    return Ok(());
                }
                let text = crate::rational::format_rational(&c);
                return Err(ParseError::new(ParseErrorKind::ConstantTerm(text), at));
            }
            c
        } else {
            Rational::one()
        };
        let m = self.measure()?;
        out.push(if negate { -coeff } else { coeff }, m);
        Ok(())
    }

    fn expr(&mut self) -> PResult<InfoExpr> {
        let mut e = InfoExpr::new();
        let mut negate = false;
        if self.eat(&Tok::Minus) {
            negate = true;
        } else {
            self.eat(&Tok::Plus);
        }
        loop {
            self.term(negate, &mut e)?;
            match self.peek() {
                Tok::Plus => negate = false,
                Tok::Minus => negate = true,
                _ => break,
            }
            self.bump();
        }
        Ok(e)
    }

    fn relation(&mut self) -> PResult<Relation> {
        let lhs = self.expr()?;
        let at = self.offset();
        let op = match self.peek() {
            Tok::Le => RelOp::Leq,
            Tok::Ge => RelOp::Geq,
            Tok::Eq => RelOp::Eq,
            Tok::Lt | Tok::Gt => return Err(ParseError::new(ParseErrorKind::StrictInequality, at)),
            Tok::End => return Err(ParseError::new(ParseErrorKind::MissingRelationalOperator, at)),
            _ => return self.unexpected("`+`, `-`, `<=`, `>=` or `=`"),
        };
        self.bump();
        let rhs = self.expr()?;
        self.expect_end()?;
        Ok(Relation { lhs, rhs, op })
    }

    /// A Markov block: one variable or a parenthesized list.
    fn block(&mut self) -> PResult<VarSet> {
        if self.eat(&Tok::LParen) {
            let s = self.vlist(Some(ParseErrorKind::EmptyArgumentList))?;
            self.expect(Tok::RParen, "`)`")?;
            Ok(s)
        } else {
            self.variable()
        }
    }

    fn groups(&mut self) -> PResult<Vec<VarSet>> {
        let mut groups = alloc::vec![self.vlist(Some(ParseErrorKind::EmptyArgumentList))?];
        while self.eat(&Tok::Semi) {
            groups.push(self.vlist(Some(ParseErrorKind::EmptyArgumentList))?);
        }
        self.expect_end()?;
        Ok(groups)
    }

    fn constraint(&mut self) -> PResult<ConstraintDecl> {
        let keyword = match (self.peek(), self.peek_at(1)) {
            (Tok::Ident(k), Tok::Colon) => Some(k.clone()),
            _ => None,
        };
        let Some(keyword) = keyword else {
            let at = self.offset();
            let rel = self.relation()?;
            if rel.op != RelOp::Eq {
                return Err(ParseError::new(ParseErrorKind::ExplicitNotEquality, at));
            }
            return Ok(ConstraintDecl::Explicit(rel.lhs.minus(&rel.rhs)));
        };
        let kw_at = self.offset();
        self.bump();
        self.bump();
        let body_at = self.offset();
        let decl = match keyword.as_str() {
            "markov" => {
                let mut blocks = alloc::vec![self.block()?];
                while self.eat(&Tok::Arrow) {
                    blocks.push(self.block()?);
                }
                self.expect_end()?;
                ConstraintDecl::MarkovChain(blocks)
            }
            "indep" => ConstraintDecl::MutualIndep(self.groups()?),
            "pairwise" => ConstraintDecl::PairwiseIndep(self.groups()?),
            "func" => {
                let target = self.vlist(Some(ParseErrorKind::EmptyArgumentList))?;
                self.expect(Tok::Eq, "`=`")?;
                match self.bump() {
                    Tok::Ident(_) => {}
                    _ => {
                        self.pos -= 1;
                        return self.unexpected("function name");
                    }
                }
                self.expect(Tok::LParen, "`(`")?;
                let source = self.vlist(Some(ParseErrorKind::EmptyArgumentList))?;
                self.expect(Tok::RParen, "`)`")?;
                self.expect_end()?;
                ConstraintDecl::FuncDep { target, source }
            }
            "factor" => {
                let mut factors = Vec::new();
                loop {
                    match self.peek() {
                        Tok::Ident(p) if p == "P" && *self.peek_at(1) == Tok::LParen => {}
                        Tok::End if !factors.is_empty() => break,
                        _ => return self.unexpected("`P(`"),
                    }
                    self.bump();
                    self.bump();
                    let head = self.vlist(Some(ParseErrorKind::EmptyArgumentList))?;
                    let given = self.conditioning()?;
                    self.expect(Tok::RParen, "`)`")?;
                    factors.push((head, given));
                    self.eat(&Tok::Star);
                }
                ConstraintDecl::Factorization(factors)
            }
            other => {
                return Err(ParseError::new(
                    ParseErrorKind::Syntax(alloc::format!(
                        "unknown constraint kind `{other}` (expected markov, indep, pairwise, func or factor)"
                    )),
                    kw_at,
                ))
            }
        };
        decl.validate(self.u.len()).map_err(|e| ParseError::new(e.into(), body_at))?;
        Ok(decl)
    }
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses a comma- and/or whitespace-separated list of variable names.
pub fn parse_universe(text: &str) -> Result<VarUniverse, ParseError> {
    let mut names: Vec<String> = Vec::new();
    let mut start = None;
    let flush = |start: &mut Option<usize>, end: usize, names: &mut Vec<String>| -> Result<(), ParseError> {
        if let Some(s) = start.take() {
            let word = &text[s..end];
            if !valid_identifier(word) {
                return Err(ParseError::new(ParseErrorKind::InvalidIdentifier(word.to_string()), s));
            }
            if names.iter().any(|n| n == word) {
                return Err(ParseError::new(ParseErrorKind::DuplicateName(word.to_string()), s));
            }
            names.push(word.to_string());
        }
        Ok(())
    };
    for (i, c) in text.char_indices() {
        if c == ',' || c.is_whitespace() {
            flush(&mut start, i, &mut names)?;
        } else if start.is_none() {
            start = Some(i);
        }
    }
    flush(&mut start, text.len(), &mut names)?;
    if names.is_empty() {
        return Err(ParseError::new(ParseErrorKind::EmptyUniverse, 0));
    }
    if names.len() > MAX_VARS {
        return Err(ParseError::new(ParseErrorKind::TooManyVariables(names.len()), 0));
    }
    Ok(VarUniverse::from_names_unchecked(names))
}

pub fn parse_expr(text: &str, u: &VarUniverse) -> Result<InfoExpr, ParseError> {
    let mut p = Parser::new(text, u)?;
    let e = p.expr()?;
    p.expect_end()?;
    Ok(e)
}

pub fn parse_relation(text: &str, u: &VarUniverse) -> Result<Relation, ParseError> {
    Parser::new(text, u)?.relation()
}

pub fn parse_constraint(text: &str, u: &VarUniverse) -> Result<ConstraintDecl, ParseError> {
    Parser::new(text, u)?.constraint()
}
