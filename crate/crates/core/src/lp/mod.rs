//! The cone program behind Shannon-type inequalities.
//!
//! For a target `f` (canonical form of larger side minus smaller side) the
//! primal is
//!
//! ```text
//! minimize f . h   subject to   G h >= 0,  Q h = 0.
//! ```
//!
//! `h = 0` is feasible and the feasible set is a cone, so the optimum is
//! either exactly 0 or unbounded below. By LP duality the optimum is 0 iff
//! there are multipliers `lambda >= 0`, `nu` with `G^T lambda - Q^T nu = f`.
//! [`solve`] decides that system directly with an exact phase-one simplex;
//! when it has no solution the simplex duals give a ray `r` of the cone with
//! `f . r < 0`, i.e. a direction along which the primal is unbounded.

mod simplex;

use alloc::vec::Vec;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::canonical::CanonicalVector;
use crate::constraints::QMatrix;
use crate::elemental::GMatrix;
use crate::rational::Rational;
use crate::varset::VarSet;

use simplex::{phase_one, PhaseOne};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(&'static str),
    /// A certificate was requested for a problem that has none.
    #[error("no certificate: the inequality is not provable as Shannon-type")]
    CertificateUnavailable,
    /// The solver produced an object that fails its own exact check.
    #[error("internal solver invariant violated: {0}")]
    InvariantViolation(&'static str),
}

/// `min target . h` over `{h : G h >= 0, Q h = 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeProblem {
    pub target: CanonicalVector,
    pub g: GMatrix,
    pub q: QMatrix,
}

impl ConeProblem {
    pub fn new(target: CanonicalVector, g: GMatrix, q: QMatrix) -> Self {
        ConeProblem { target, g, q }
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    fn check_dims(&self) -> Result<(), LpError> {
        if self.target.n() != self.g.n() {
            return Err(LpError::DimensionMismatch("target and G live over different universes"));
        }
        if self.q.n() != self.g.n() {
            return Err(LpError::DimensionMismatch("Q and G live over different universes"));
        }
        Ok(())
    }
}

/// Multipliers proving `G^T lambda - Q^T nu = target` with `lambda >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Certificate {
    /// One entry per row of `G`.
    pub lambda: Vec<Rational>,
    /// One entry per row of `Q`; any sign.
    pub nu: Vec<Rational>,
}

impl Certificate {
    /// `G^T lambda - Q^T nu`.
    pub fn combination(&self, g: &GMatrix, q: &QMatrix) -> CanonicalVector {
        let mut out = CanonicalVector::zero(g.n());
        for (row, l) in g.rows().iter().zip(&self.lambda) {
            out.add_scaled(l, &row.row);
        }
        for (row, v) in q.rows().iter().zip(&self.nu) {
            out.add_scaled(&-v, &row.row);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    /// The optimum is 0; the certificate proves the inequality.
    ProvenSti(Certificate),
    /// The primal is unbounded along `ray`: `G ray >= 0`, `Q ray = 0` and
    /// `target . ray < 0`. The inequality is not provable as Shannon-type,
    /// which does not mean it is false.
    NotProvable(CanonicalVector),
}

/// Result of [`nonneg_combination`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Combination {
    Found(Certificate),
    /// A separating point `h` with `G h >= 0`, `Q h = 0`, `target . h < 0`.
    Infeasible(CanonicalVector),
}

/// Finds `lambda >= 0`, `nu` with `G^T lambda - Q^T nu = target`, or a
/// separating witness when none exists.
pub fn nonneg_combination(target: &CanonicalVector, g: &GMatrix, q: &QMatrix) -> Result<Combination, LpError> {
    let n = g.n();
    if target.n() != n || q.n() != n {
        return Err(LpError::DimensionMismatch("target, G and Q must share a universe"));
    }
    let dim = target.dim();
    let (mg, mq) = (g.len(), q.len());
    let cols = mg + 2 * mq;
    // Column layout: lambda | nu+ (coefficient -q) | nu- (coefficient +q).
    let mut a = alloc::vec![alloc::vec![Rational::zero(); cols]; dim];
    for (j, row) in g.rows().iter().enumerate() {
        for (s, v) in row.row.iter() {
            a[s.mask() as usize - 1][j] = v.clone();
        }
    }
    for (j, row) in q.rows().iter().enumerate() {
        for (s, v) in row.row.iter() {
            a[s.mask() as usize - 1][mg + j] = -v;
            a[s.mask() as usize - 1][mg + mq + j] = v.clone();
        }
    }
    let b = target.to_dense();
    Ok(match phase_one(&a, &b, cols) {
        PhaseOne::Feasible(x) => {
            let lambda = x[..mg].to_vec();
            let nu = (0..mq).map(|j| &x[mg + j] - &x[mg + mq + j]).collect();
            Combination::Found(Certificate { lambda, nu })
        }
        PhaseOne::Infeasible(y) => {
            let h: Vec<Rational> = y.into_iter().map(|v| -v).collect();
            Combination::Infeasible(CanonicalVector::from_dense(n, &h))
        }
    })
}

/// Decides the cone program. Every returned object has passed its exact
/// check; a failure there is reported as [`LpError::InvariantViolation`].
pub fn solve(p: &ConeProblem) -> Result<SolveOutcome, LpError> {
    p.check_dims()?;
    match nonneg_combination(&p.target, &p.g, &p.q)? {
        Combination::Found(cert) => {
            if !verify_certificate(p, &cert)? {
                return Err(LpError::InvariantViolation("certificate fails exact verification"));
            }
            Ok(SolveOutcome::ProvenSti(cert))
        }
        Combination::Infeasible(ray) => {
            if !verify_ray(p, &ray) {
                return Err(LpError::InvariantViolation("unboundedness ray fails exact verification"));
            }
            Ok(SolveOutcome::NotProvable(ray))
        }
    }
}

/// Optimal multipliers of a provable problem.
pub fn extract_dual(p: &ConeProblem) -> Result<Certificate, LpError> {
    match solve(p)? {
        SolveOutcome::ProvenSti(c) => Ok(c),
        SolveOutcome::NotProvable(_) => Err(LpError::CertificateUnavailable),
    }
}

/// Exact check of `G^T lambda - Q^T nu = target` and `lambda >= 0`.
pub fn verify_certificate(p: &ConeProblem, c: &Certificate) -> Result<bool, LpError> {
    p.check_dims()?;
    if c.lambda.len() != p.g.len() {
        return Err(LpError::DimensionMismatch("lambda length differs from the number of G rows"));
    }
    if c.nu.len() != p.q.len() {
        return Err(LpError::DimensionMismatch("nu length differs from the number of Q rows"));
    }
    if c.lambda.iter().any(|l| l.is_negative()) {
        return Ok(false);
    }
    Ok(c.combination(&p.g, &p.q) == p.target)
}

/// Exact check of `G r >= 0`, `Q r = 0` and `target . r < 0`.
pub fn verify_ray(p: &ConeProblem, r: &CanonicalVector) -> bool {
    if r.n() != p.n() || p.check_dims().is_err() {
        return false;
    }
    p.g.rows().iter().all(|row| !row.row.dot(r).is_negative())
        && p.q.rows().iter().all(|row| row.row.dot(r).is_zero())
        && p.target.dot(r).is_negative()
}

/// Objective value `target . r`.
pub fn objective_at(p: &ConeProblem, r: &CanonicalVector) -> Rational {
    p.target.dot(r)
}

/// Coordinates of `r` as `(subset, value)` pairs, zero entries omitted.
pub fn ray_entries(r: &CanonicalVector) -> impl Iterator<Item = (VarSet, &Rational)> {
    r.iter()
}
