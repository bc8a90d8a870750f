//! Phase-one simplex over exact rationals.
//!
//! Decides `A x = b, x >= 0` and returns either a basic feasible `x` or a
//! Farkas vector `y` with `A^T y <= 0` and `b . y > 0`. Pivoting follows
//! Bland's rule (lowest eligible column enters, ratio ties leave by lowest
//! basic index), which rules out cycling and makes the result a pure
//! function of the input.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum PhaseOne {
    Feasible(Vec<Rational>),
    Infeasible(Vec<Rational>),
}

struct Tableau {
    /// `rows x (cols + rows)`; the trailing block belongs to the artificials.
    t: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    /// Phase-one reduced costs.
    reduced: Vec<Rational>,
    objective: Rational,
    basis: Vec<usize>,
}

impl Tableau {
    fn new(a: &[Vec<Rational>], b: &[Rational], cols: usize) -> (Self, Vec<bool>) {
        let m = a.len();
        let width = cols + m;
        let mut flipped = alloc::vec![false; m];
        let mut t = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        for (i, (row, bi)) in a.iter().zip(b).enumerate() {
            debug_assert_eq!(row.len(), cols);
            let flip = bi.is_negative();
            flipped[i] = flip;
            let mut r: Vec<Rational> = Vec::with_capacity(width);
            r.extend(row.iter().map(|v| if flip { -v } else { v.clone() }));
            r.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
            t.push(r);
            rhs.push(if flip { -bi } else { bi.clone() });
        }
        let mut reduced = alloc::vec![Rational::zero(); width];
        for (j, rc) in reduced.iter_mut().enumerate().take(cols) {
            let mut s = Rational::zero();
            for row in &t {
                s -= &row[j];
            }
            *rc = s;
        }
        let objective = rhs.iter().fold(Rational::zero(), |a, b| a + b);
        let basis = (cols..width).collect();
        (Tableau { t, rhs, reduced, objective, basis }, flipped)
    }

    fn entering(&self) -> Option<usize> {
        self.reduced.iter().position(|r| r.is_negative())
    }

    fn leaving(&self, e: usize) -> Option<usize> {
        let mut best: Option<(usize, Rational)> = None;
        for (i, row) in self.t.iter().enumerate() {
            let a = &row[e];
            if !a.is_positive() {
                continue;
            }
            let ratio = &self.rhs[i] / a;
            best = match best {
                None => Some((i, ratio)),
                Some((bi, br)) => {
                    if ratio < br || (ratio == br && self.basis[i] < self.basis[bi]) {
                        Some((i, ratio))
                    } else {
                        Some((bi, br))
                    }
                }
            };
        }
        best.map(|(i, _)| i)
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let p = self.t[r][e].clone();
        if !p.is_one() {
            for v in self.t[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &p;
                }
            }
            self.rhs[r] /= &p;
        }
        let (pivot_row, pivot_rhs) = (self.t[r].clone(), self.rhs[r].clone());
        let nz: Vec<usize> = pivot_row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, _)| j).collect();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[e].is_zero() {
                continue;
            }
            let f = row[e].clone();
            for &j in &nz {
                let d = &f * &pivot_row[j];
                row[j] -= d;
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        let f = self.reduced[e].clone();
        if !f.is_zero() {
            for &j in &nz {
                let d = &f * &pivot_row[j];
                self.reduced[j] -= d;
            }
            self.objective += &f * &pivot_rhs;
        }
        self.basis[r] = e;
    }
}

/// Solves the phase-one problem `min 1.a  s.t.  A x + a = b,  x, a >= 0`
/// with rows of `A` sign-normalized so `b >= 0`.
pub(crate) fn phase_one(a: &[Vec<Rational>], b: &[Rational], cols: usize) -> PhaseOne {
    debug_assert_eq!(a.len(), b.len());
    let (mut tab, flipped) = Tableau::new(a, b, cols);
    while let Some(e) = tab.entering() {
        let r = tab.leaving(e).expect("phase one is bounded below by zero");
        tab.pivot(r, e);
    }
    if tab.objective.is_zero() {
        let mut x = alloc::vec![Rational::zero(); cols];
        for (i, &j) in tab.basis.iter().enumerate() {
            if j < cols {
                x[j] = tab.rhs[i].clone();
            }
        }
        PhaseOne::Feasible(x)
    } else {
        // Duals of the flipped system are 1 - (reduced cost of artificial i).
        let m = a.len();
        let y = (0..m)
            .map(|i| {
                let yi = Rational::one() - &tab.reduced[cols + i];
                if flipped[i] {
                    -yi
                } else {
                    yi
                }
            })
            .collect();
        PhaseOne::Infeasible(y)
    }
}
