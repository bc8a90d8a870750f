//! Compiles distribution assumptions into equality rows `Q h = 0`.
//!
//! | declaration                  | rows                                          |
//! |------------------------------|-----------------------------------------------|
//! | `markov: B1 -> ... -> Bm`    | `I(B1..Bk ; Bk+2..Bm | Bk+1) = 0`, k = 1..m-2 |
//! | `indep: G1 ; ... ; Gm`       | `H(G1..Gm) - H(G1) - ... - H(Gm) = 0`         |
//! | `pairwise: G1 ; ... ; Gm`    | `I(Ga;Gb) = 0` for every pair                 |
//! | `func: T = f(S)`             | `H(T|S) = 0`                                  |
//! | `factor: P(H1|C1) ...`       | `I(Hk ; S\Ck | Ck) = 0`, S = H1..Hk-1         |
//! | `expr = 0`                   | the expression itself                         |

use alloc::vec::Vec;

use num_traits::One;
use thiserror::Error;

use crate::canonical::{CanonicalError, CanonicalVector};
use crate::parser::{ConstraintDecl, DeclError, InfoExpr, Measure};
use crate::rational::Rational;
use crate::varset::{VarSet, VarUniverse};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstraintError {
    #[error(transparent)]
    Decl(#[from] DeclError),
    #[error(transparent)]
    Canonical(#[from] CanonicalError),
}

/// One equality `row . h = 0` and where it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintRow {
    /// The constrained expression; its canonical form is `row`.
    pub expr: InfoExpr,
    pub row: CanonicalVector,
    pub origin: ConstraintDecl,
}

impl ConstraintRow {
    fn new(expr: InfoExpr, origin: &ConstraintDecl, n: usize) -> Result<Self, ConstraintError> {
        let row = expr.canonical(n)?;
        Ok(ConstraintRow { expr, row, origin: origin.clone() })
    }

    /// Human-readable label, e.g. `I(C;A|B)`; reparses to `expr`.
    pub fn label(&self, u: &VarUniverse) -> alloc::string::String {
        alloc::format!("{}", self.expr.display(u))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DropReason {
    /// The row is identically zero, i.e. the assumption is vacuous.
    Trivial,
    /// Canonically equal to an earlier row.
    Duplicate,
}

/// Rows removed while assembling a [`QMatrix`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DroppedRow {
    pub expr: InfoExpr,
    pub origin: ConstraintDecl,
    pub reason: DropReason,
}

/// Equality constraints: no zero rows, no two rows canonically equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    n: usize,
    decls: Vec<ConstraintDecl>,
    rows: Vec<ConstraintRow>,
    dropped: Vec<DroppedRow>,
}

impl QMatrix {
    pub fn empty(n: usize) -> Self {
        QMatrix { n, decls: Vec::new(), rows: Vec::new(), dropped: Vec::new() }
    }

    /// Assembles compiled rows, dropping zero rows and canonical duplicates
    /// (first occurrence wins).
    pub fn from_rows(n: usize, rows: Vec<ConstraintRow>) -> Self {
        let mut q = QMatrix::empty(n);
        for r in rows {
            q.push(r);
        }
        q
    }

    fn push(&mut self, r: ConstraintRow) {
        debug_assert_eq!(r.row.n(), self.n);
        let reason = if r.row.is_zero() {
            Some(DropReason::Trivial)
        } else if self.rows.iter().any(|x| x.row == r.row) {
            Some(DropReason::Duplicate)
        } else {
            None
        };
        match reason {
            Some(reason) => self.dropped.push(DroppedRow { expr: r.expr, origin: r.origin, reason }),
            None => self.rows.push(r),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[ConstraintRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Declarations in input order.
    pub fn decls(&self) -> &[ConstraintDecl] {
        &self.decls
    }

    pub fn dropped(&self) -> &[DroppedRow] {
        &self.dropped
    }

    /// Rows that came from `decl`, in order.
    pub fn rows_of<'a>(&'a self, decl: &'a ConstraintDecl) -> impl Iterator<Item = &'a ConstraintRow> + 'a {
        self.rows.iter().filter(move |r| &r.origin == decl)
    }

    pub fn apply_dense(&self, h: &[Rational]) -> Vec<Rational> {
        self.rows.iter().map(|r| r.row.dot_dense(h)).collect()
    }
}

fn union_all(sets: &[VarSet]) -> VarSet {
    sets.iter().fold(VarSet::EMPTY, |a, b| a.union(*b))
}

fn one() -> Rational {
    Rational::one()
}

pub fn compile_markov(blocks: &[VarSet], n: usize) -> Result<Vec<ConstraintRow>, ConstraintError> {
    let decl = ConstraintDecl::MarkovChain(blocks.to_vec());
    decl.validate(n)?;
    let m = blocks.len();
    (1..=m - 2)
        .map(|k| {
            let past = union_all(&blocks[..k]);
            let present = blocks[k];
            let future = union_all(&blocks[k + 1..]);
            ConstraintRow::new(InfoExpr::single(Measure::mutual_info(past, future, present)), &decl, n)
        })
        .collect()
}

pub fn compile_indep(groups: &[VarSet], n: usize) -> Result<ConstraintRow, ConstraintError> {
    let decl = ConstraintDecl::MutualIndep(groups.to_vec());
    decl.validate(n)?;
    let mut e = InfoExpr::single(Measure::entropy(union_all(groups), VarSet::EMPTY));
    for g in groups {
        e.push(-one(), Measure::entropy(*g, VarSet::EMPTY));
    }
    ConstraintRow::new(e, &decl, n)
}

pub fn compile_pairwise(groups: &[VarSet], n: usize) -> Result<Vec<ConstraintRow>, ConstraintError> {
    let decl = ConstraintDecl::PairwiseIndep(groups.to_vec());
    decl.validate(n)?;
    let mut rows = Vec::new();
    for (a, ga) in groups.iter().enumerate() {
        for gb in &groups[a + 1..] {
            rows.push(ConstraintRow::new(InfoExpr::single(Measure::mutual_info(*ga, *gb, VarSet::EMPTY)), &decl, n)?);
        }
    }
    Ok(rows)
}

pub fn compile_funcdep(target: VarSet, source: VarSet, n: usize) -> Result<ConstraintRow, ConstraintError> {
    let decl = ConstraintDecl::FuncDep { target, source };
    decl.validate(n)?;
    ConstraintRow::new(InfoExpr::single(Measure::entropy(target, source)), &decl, n)
}

pub fn compile_factorization(factors: &[(VarSet, VarSet)], n: usize) -> Result<Vec<ConstraintRow>, ConstraintError> {
    let decl = ConstraintDecl::Factorization(factors.to_vec());
    decl.validate(n)?;
    let mut rows = Vec::new();
    let mut earlier = VarSet::EMPTY;
    for &(head, given) in factors {
        let dropped = earlier.difference(given);
        if !dropped.is_empty() {
            rows.push(ConstraintRow::new(InfoExpr::single(Measure::mutual_info(head, dropped, given)), &decl, n)?);
        }
        earlier = earlier.union(head);
    }
    Ok(rows)
}

pub fn compile_explicit(e: &InfoExpr, n: usize) -> Result<ConstraintRow, ConstraintError> {
    let decl = ConstraintDecl::Explicit(e.clone());
    decl.validate(n)?;
    ConstraintRow::new(e.clone(), &decl, n)
}

pub fn compile(decl: &ConstraintDecl, n: usize) -> Result<Vec<ConstraintRow>, ConstraintError> {
    match decl {
        ConstraintDecl::MarkovChain(b) => compile_markov(b, n),
        ConstraintDecl::MutualIndep(g) => Ok(alloc::vec![compile_indep(g, n)?]),
        ConstraintDecl::PairwiseIndep(g) => compile_pairwise(g, n),
        ConstraintDecl::FuncDep { target, source } => Ok(alloc::vec![compile_funcdep(*target, *source, n)?]),
        ConstraintDecl::Explicit(e) => Ok(alloc::vec![compile_explicit(e, n)?]),
        ConstraintDecl::Factorization(f) => compile_factorization(f, n),
    }
}

pub fn build_q(decls: &[ConstraintDecl], n: usize) -> Result<QMatrix, ConstraintError> {
    let mut q = QMatrix::empty(n);
    for d in decls {
        for r in compile(d, n)? {
            q.push(r);
        }
        q.decls.push(d.clone());
    }
    Ok(q)
}
