//! Canonical form: information expressions as linear combinations of the
//! `2^n - 1` unconditional joint entropies `H(X_a)`, `a` a nonempty subset.
//!
//! Coordinate `k` (1-based) belongs to the subset whose bitmask is `k`, so
//! for two variables the order is `H(X1), H(X2), H(X1,X2)`. `H(empty)` is
//! identically zero and has no coordinate.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::parser::{InfoExpr, Measure};
use crate::rational::{format_rational, Rational};
use crate::varset::{VarSet, MAX_VARS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonicalError {
    #[error("empty variable set where a nonempty one is required")]
    EmptySet,
    #[error("variable set {0:?} is not contained in a universe of {1} variables")]
    OutsideUniverse(VarSet, usize),
    #[error("universe size {0} is outside 1..={MAX_VARS}")]
    UniverseSize(usize),
}

/// Coefficients over the nonempty subsets of an `n`-variable universe.
///
/// Stored sparsely: zero coefficients are never kept, so structural
/// equality is equality of the vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CanonicalVector {
    n: usize,
    coeffs: BTreeMap<u32, Rational>,
}

impl CanonicalVector {
    pub fn zero(n: usize) -> Self {
        CanonicalVector { n, coeffs: BTreeMap::new() }
    }

    /// Universe size.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of coordinates, `2^n - 1`.
    pub fn dim(&self) -> usize {
        (1usize << self.n) - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, set: VarSet) -> Rational {
        self.coeffs.get(&set.mask()).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `value` to the coordinate of `set`. Adding to the empty set is a
    /// no-op since `H(empty) = 0`.
    pub fn add_at(&mut self, set: VarSet, value: &Rational) {
        if set.is_empty() || value.is_zero() {
            return;
        }
        debug_assert!(set.is_subset(VarSet::full(self.n)));
        let slot = self.coeffs.entry(set.mask()).or_insert_with(Rational::zero);
        *slot += value;
        if slot.is_zero() {
            self.coeffs.remove(&set.mask());
        }
    }

    /// Nonzero coordinates in ascending mask order.
    pub fn iter(&self) -> impl Iterator<Item = (VarSet, &Rational)> {
        self.coeffs.iter().map(|(&m, r)| (VarSet::from_mask(m), r))
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    /// Dense coefficient list; entry `k - 1` holds coordinate `k`.
    pub fn to_dense(&self) -> Vec<Rational> {
        let mut out = alloc::vec![Rational::zero(); self.dim()];
        for (&m, r) in &self.coeffs {
            out[m as usize - 1] = r.clone();
        }
        out
    }

    pub fn from_dense(n: usize, dense: &[Rational]) -> Self {
        debug_assert_eq!(dense.len(), (1usize << n) - 1);
        let mut v = CanonicalVector::zero(n);
        for (k, r) in dense.iter().enumerate() {
            v.add_at(VarSet::from_mask(k as u32 + 1), r);
        }
        v
    }

    /// Inner product with a dense point `h` (entry `k - 1` is `H(X_k)`).
    pub fn dot_dense(&self, h: &[Rational]) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |acc, (&m, r)| acc + r * &h[m as usize - 1])
    }

    pub fn dot(&self, other: &CanonicalVector) -> Rational {
        self.coeffs.iter().filter_map(|(m, r)| other.coeffs.get(m).map(|s| r * s)).fold(Rational::zero(), |a, b| a + b)
    }

    pub fn scaled(&self, factor: &Rational) -> CanonicalVector {
        let mut out = CanonicalVector::zero(self.n);
        if factor.is_zero() {
            return out;
        }
        for (&m, r) in &self.coeffs {
            out.coeffs.insert(m, r * factor);
        }
        out
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, factor: &Rational, other: &CanonicalVector) {
        debug_assert_eq!(self.n, other.n);
        if factor.is_zero() {
            return;
        }
        for (&m, r) in &other.coeffs {
            self.add_at(VarSet::from_mask(m), &(r * factor));
        }
    }
}

impl fmt::Debug for CanonicalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for k in 1..=self.dim() as u32 {
            if k > 1 {
                f.write_str(", ")?;
            }
            match self.coeffs.get(&k) {
                Some(r) => f.write_str(&format_rational(r))?,
                None => f.write_str("0")?,
            }
        }
        f.write_str("]")
    }
}

impl Neg for &CanonicalVector {
    type Output = CanonicalVector;
    fn neg(self) -> CanonicalVector {
        CanonicalVector { n: self.n, coeffs: self.coeffs.iter().map(|(&m, r)| (m, -r)).collect() }
    }
}

impl AddAssign<&CanonicalVector> for CanonicalVector {
    fn add_assign(&mut self, rhs: &CanonicalVector) {
        for (&m, r) in &rhs.coeffs {
            self.add_at(VarSet::from_mask(m), r);
        }
    }
}

impl SubAssign<&CanonicalVector> for CanonicalVector {
    fn sub_assign(&mut self, rhs: &CanonicalVector) {
        for (&m, r) in &rhs.coeffs {
            self.add_at(VarSet::from_mask(m), &-r);
        }
    }
}

impl Add for &CanonicalVector {
    type Output = CanonicalVector;
    fn add(self, rhs: &CanonicalVector) -> CanonicalVector {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &CanonicalVector {
    type Output = CanonicalVector;
    fn sub(self, rhs: &CanonicalVector) -> CanonicalVector {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Rational> for &CanonicalVector {
    type Output = CanonicalVector;
    fn mul(self, rhs: &Rational) -> CanonicalVector {
        self.scaled(rhs)
    }
}

fn check_universe(n: usize) -> Result<(), CanonicalError> {
    if n == 0 || n > MAX_VARS {
        return Err(CanonicalError::UniverseSize(n));
    }
    Ok(())
}

fn check_set(set: VarSet, n: usize) -> Result<(), CanonicalError> {
    if set.is_subset(VarSet::full(n)) {
        Ok(())
    } else {
        Err(CanonicalError::OutsideUniverse(set, n))
    }
}

fn check_nonempty(set: VarSet, n: usize) -> Result<(), CanonicalError> {
    if set.is_empty() {
        return Err(CanonicalError::EmptySet);
    }
    check_set(set, n)
}

/// `H(X_a)`: a unit vector at coordinate `a`.
pub fn joint_entropy(alpha: VarSet, n: usize) -> Result<CanonicalVector, CanonicalError> {
    check_universe(n)?;
    check_nonempty(alpha, n)?;
    let mut v = CanonicalVector::zero(n);
    v.add_at(alpha, &Rational::from_integer(1.into()));
    Ok(v)
}

/// `H(X_a | X_g) = H(X_{a u g}) - H(X_g)`. Overlap between `a` and `g` is
/// absorbed by the union, so `H(X|X) = 0`.
pub fn cond_entropy(alpha: VarSet, gamma: VarSet, n: usize) -> Result<CanonicalVector, CanonicalError> {
    check_universe(n)?;
    check_nonempty(alpha, n)?;
    check_set(gamma, n)?;
    let one = Rational::from_integer(1.into());
    let mut v = CanonicalVector::zero(n);
    v.add_at(alpha.union(gamma), &one);
    v.add_at(gamma, &-one);
    Ok(v)
}

/// `I(X_a; X_b | X_g) = H(X_{a u g}) + H(X_{b u g}) - H(X_{a u b u g}) - H(X_g)`.
pub fn mutual_info(alpha: VarSet, beta: VarSet, gamma: VarSet, n: usize) -> Result<CanonicalVector, CanonicalError> {
    check_universe(n)?;
    check_nonempty(alpha, n)?;
    check_nonempty(beta, n)?;
    check_set(gamma, n)?;
    let one = Rational::from_integer(1.into());
    let minus = -one.clone();
    let mut v = CanonicalVector::zero(n);
    v.add_at(alpha.union(gamma), &one);
    v.add_at(beta.union(gamma), &one);
    v.add_at(alpha.union(beta).union(gamma), &minus);
    v.add_at(gamma, &minus);
    Ok(v)
}

impl Measure {
    pub fn canonical(&self, n: usize) -> Result<CanonicalVector, CanonicalError> {
        match *self {
            Measure::Entropy { alpha, gamma } => cond_entropy(alpha, gamma, n),
            Measure::MutualInfo { alpha, beta, gamma } => mutual_info(alpha, beta, gamma, n),
        }
    }
}

/// Linear extension of the measure-level maps.
pub fn canonicalize(e: &InfoExpr, n: usize) -> Result<CanonicalVector, CanonicalError> {
    check_universe(n)?;
    let mut out = CanonicalVector::zero(n);
    for (coeff, m) in e.terms() {
        out.add_scaled(coeff, &m.canonical(n)?);
    }
    Ok(out)
}

/// True if every coefficient is nonnegative.
pub fn is_nonnegative(v: &CanonicalVector) -> bool {
    v.iter().all(|(_, r)| !r.is_negative())
}
