//! Variable universes and subsets of it.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Largest supported universe. Canonical vectors have `2^n - 1` coordinates
/// and the elemental matrix has `n + C(n,2) 2^(n-2)` rows, so anything near
/// this bound is already expensive.
pub const MAX_VARS: usize = 16;

/// Subset of the variables `1..=n`; bit `i - 1` is set iff variable `i` is
/// present. The bitmask value is also the canonical coordinate of the
/// joint entropy of the subset.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VarSet(u32);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub const fn from_mask(mask: u32) -> Self {
        VarSet(mask)
    }

    /// Singleton for the 1-based variable position `i`.
    pub fn singleton(i: usize) -> Self {
        debug_assert!((1..=MAX_VARS).contains(&i));
        VarSet(1 << (i - 1))
    }

    /// All of `1..=n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VARS);
        VarSet(((1u64 << n) - 1) as u32)
    }

    pub fn from_positions<I: IntoIterator<Item = usize>>(positions: I) -> Self {
        positions.into_iter().fold(VarSet::EMPTY, |s, i| s.union(VarSet::singleton(i)))
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub const fn intersection(self, other: VarSet) -> VarSet {
        VarSet(self.0 & other.0)
    }

    pub const fn difference(self, other: VarSet) -> VarSet {
        VarSet(self.0 & !other.0)
    }

    pub const fn is_disjoint(self, other: VarSet) -> bool {
        self.0 & other.0 == 0
    }

    pub const fn is_subset(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=MAX_VARS).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    /// 1-based positions in ascending order.
    pub fn positions(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (1..=MAX_VARS).filter(move |&i| mask & (1 << (i - 1)) != 0)
    }

    /// Comma-separated variable names, e.g. `A,B`.
    pub fn display<'a>(self, u: &'a VarUniverse) -> impl fmt::Display + 'a {
        DisplaySet { set: self, universe: u }
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.positions()).finish()
    }
}

struct DisplaySet<'a> {
    set: VarSet,
    universe: &'a VarUniverse,
}

impl fmt::Display for DisplaySet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, i) in self.set.positions().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            f.write_str(self.universe.name(i))?;
        }
        Ok(())
    }
}

/// Ordered, duplicate-free list of variable names. Declaration order fixes
/// the positions `1..=n`, and therefore the canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarUniverse {
    names: Vec<String>,
}

impl VarUniverse {
    /// Builds a universe without validating identifiers; see
    /// [`crate::parser::parse_universe`] for the checked entry point.
    pub(crate) fn from_names_unchecked(names: Vec<String>) -> Self {
        VarUniverse { names }
    }

    /// Default names `X1..Xn`.
    pub fn numbered(n: usize) -> Self {
        VarUniverse { names: (1..=n).map(|i| alloc::format!("X{i}")).collect() }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Name of the 1-based position `i`.
    pub fn name(&self, i: usize) -> &str {
        &self.names[i - 1]
    }

    /// 1-based position of `name`.
    pub fn position(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name).map(|p| p + 1)
    }

    pub fn full(&self) -> VarSet {
        VarSet::full(self.len())
    }
}
