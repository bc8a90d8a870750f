//! Brute-force extreme rays of `{h : G h >= 0, Q h = 0}`.
//!
//! The cone is pointed (`G h >= 0` forces `h >= 0`), so it is the conic hull
//! of its extreme rays, and a ray is extreme iff the rows tight at it,
//! together with `Q`, have a one-dimensional null space. Trying every
//! subset of `G` rows finds them all. Only practical for `n <= 3`.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::expr::{dot, Q};

/// Basis of the null space of `rows` (each of length `dim`).
pub fn null_space(rows: &[Vec<Q>], dim: usize) -> Vec<Vec<Q>> {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..dim {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                let pivot = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot) {
                    *x -= f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    (0..dim)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Q::zero(); dim];
            v[free] = Q::from_integer(1);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][free];
            }
            v
        })
        .collect()
}

/// Scales so the first nonzero entry has absolute value 1.
fn normalize(v: &[Q]) -> Vec<Q> {
    let lead = v.iter().find(|x| !x.is_zero()).expect("nonzero").abs();
    v.iter().map(|x| x / lead).collect()
}

pub fn extreme_rays(g: &[Vec<Q>], q: &[Vec<Q>], dim: usize) -> Vec<Vec<Q>> {
    assert!(g.len() <= 20, "subset enumeration is exponential in the number of rows");
    let mut rays = BTreeSet::new();
    for subset in 0u32..(1 << g.len()) {
        let mut rows: Vec<Vec<Q>> = q.to_vec();
        rows.extend((0..g.len()).filter(|i| subset >> i & 1 == 1).map(|i| g[i].clone()));
        let ns = null_space(&rows, dim);
        if ns.len() != 1 {
            continue;
        }
        for sign in [1, -1] {
            let v: Vec<Q> = ns[0].iter().map(|x| x * Q::from_integer(sign)).collect();
            if g.iter().all(|row| !dot(row, &v).is_negative()) {
                rays.insert(normalize(&v));
            }
        }
    }
    rays.into_iter().collect()
}

/// `f . h >= 0` on the whole cone.
pub fn nonnegative_on(f: &[Q], rays: &[Vec<Q>]) -> bool {
    rays.iter().all(|r| !dot(f, r).is_negative())
}
