//! Elemental information measures and the matrix `G` of their canonical
//! forms. `G h >= 0` is the polyhedral outer bound on entropic vectors.

use alloc::vec::Vec;
use core::fmt;

use num_traits::Signed;
use thiserror::Error;

use crate::canonical::{cond_entropy, mutual_info, CanonicalVector};
use crate::constraints::QMatrix;
use crate::lp::{nonneg_combination, Combination, LpError};
use crate::parser::Measure;
use crate::rational::Rational;
use crate::varset::{VarSet, VarUniverse, MAX_VARS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElementalError {
    #[error("universe size {0} is outside 1..={MAX_VARS}")]
    UniverseSize(usize),
    #[error("measure is not a valid basic information measure over {0} variables")]
    InvalidMeasure(usize),
    /// A basic measure with no nonnegative elemental decomposition. This
    /// cannot happen for valid input and indicates an internal bug.
    #[error("no nonnegative elemental decomposition found")]
    InfeasibleDecomposition,
    #[error(transparent)]
    Lp(#[from] LpError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElementalKind {
    /// `H(X_i | X_rest)`.
    CondEntropy(usize),
    /// `I(X_i ; X_j | X_K)` with `i < j` and `K` disjoint from `{i, j}`.
    CondMi { i: usize, j: usize, k: VarSet },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementalTerm {
    pub kind: ElementalKind,
    pub row: CanonicalVector,
}

impl ElementalTerm {
    /// The labelled measure as a basic information measure over `n`
    /// variables.
    pub fn measure(&self) -> Measure {
        let n = self.row.n();
        match self.kind {
            ElementalKind::CondEntropy(i) => {
                let me = VarSet::singleton(i);
                Measure::entropy(me, VarSet::full(n).difference(me))
            }
            ElementalKind::CondMi { i, j, k } => Measure::mutual_info(VarSet::singleton(i), VarSet::singleton(j), k),
        }
    }

    pub fn display<'a>(&'a self, u: &'a VarUniverse) -> impl fmt::Display + 'a {
        LabelDisplay { m: self.measure(), u }
    }
}

struct LabelDisplay<'a> {
    m: Measure,
    u: &'a VarUniverse,
}

impl fmt::Display for LabelDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.m.display(self.u))
    }
}

/// Rows in a fixed order: the `n` conditional entropies by ascending `i`,
/// then the conditional mutual informations by `(i, j, mask(K))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GMatrix {
    n: usize,
    rows: Vec<ElementalTerm>,
}

impl GMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[ElementalTerm] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn position(&self, kind: ElementalKind) -> Option<usize> {
        self.rows.iter().position(|r| r.kind == kind)
    }

    /// `G h` for a dense point `h`.
    pub fn apply_dense(&self, h: &[Rational]) -> Vec<Rational> {
        self.rows.iter().map(|r| r.row.dot_dense(h)).collect()
    }
}

/// Number of elemental inequalities: `n + C(n,2) 2^(n-2)`, and 1 for `n = 1`.
pub fn eim_count(n: usize) -> u64 {
    match n {
        0 => 0,
        1 => 1,
        _ => {
            let n = n as u64;
            n + n * (n - 1) / 2 * (1u64 << (n - 2))
        }
    }
}

pub fn enumerate_eims(n: usize) -> Result<GMatrix, ElementalError> {
    if n == 0 || n > MAX_VARS {
        return Err(ElementalError::UniverseSize(n));
    }
    let full = VarSet::full(n);
    let mut rows = Vec::with_capacity(eim_count(n) as usize);
    for i in 1..=n {
        let me = VarSet::singleton(i);
        let row = cond_entropy(me, full.difference(me), n).expect("valid sets");
        rows.push(ElementalTerm { kind: ElementalKind::CondEntropy(i), row });
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let pair = VarSet::singleton(i).union(VarSet::singleton(j));
            let rest = full.difference(pair).mask();
            // Ascending submasks of `rest`.
            let mut k = 0u32;
            loop {
                let kset = VarSet::from_mask(k);
                let row = mutual_info(VarSet::singleton(i), VarSet::singleton(j), kset, n).expect("valid sets");
                rows.push(ElementalTerm { kind: ElementalKind::CondMi { i, j, k: kset }, row });
                if k == rest {
                    break;
                }
                k = ((k | !rest).wrapping_add(1)) & rest;
            }
        }
    }
    Ok(GMatrix { n, rows })
}

/// Writes a basic information measure as a nonnegative combination of
/// elemental ones. Only nonzero coefficients are returned.
pub fn bim_to_eim_decomposition(b: &Measure, g: &GMatrix) -> Result<Vec<(ElementalTerm, Rational)>, ElementalError> {
    let n = g.n();
    let target = b.canonical(n).map_err(|_| ElementalError::InvalidMeasure(n))?;
    let q = QMatrix::empty(n);
    match nonneg_combination(&target, g, &q)? {
        Combination::Found(cert) => {
            debug_assert!(cert.lambda.iter().all(|l| !l.is_negative()));
            Ok(g.rows.iter().zip(cert.lambda).filter(|(_, l)| l.is_positive()).map(|(t, l)| (t.clone(), l)).collect())
        }
        Combination::Infeasible(_) => Err(ElementalError::InfeasibleDecomposition),
    }
}
