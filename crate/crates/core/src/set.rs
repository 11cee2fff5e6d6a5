//! Bit sets of symbol indices with a canonical (sorted lexicographic) order.

use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;

/// A set of symbol indices drawn from an alphabet of fixed size.
///
/// Ordering compares the ascending element sequences lexicographically, so
/// `{0} < {0,1} < {1}`. All tie-breaking in the crate relies on this order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymbolSet(FixedBitSet);

impl SymbolSet {
    pub fn empty(universe: usize) -> Self {
        SymbolSet(FixedBitSet::with_capacity(universe))
    }

    pub fn from_indices(universe: usize, items: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(universe);
        for i in items {
            set.insert(i);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.0.len()
    }

    pub fn insert(&mut self, i: usize) {
        self.0.insert(i);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(i)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &SymbolSet) {
        self.0.union_with(&other.0);
    }

    pub fn intersect_with(&mut self, other: &SymbolSet) {
        self.0.intersect_with(&other.0);
    }

    pub fn intersection(&self, other: &SymbolSet) -> SymbolSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn is_subset(&self, other: &SymbolSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &SymbolSet) -> bool {
        self.0.is_disjoint(&other.0)
    }
}

impl Ord for SymbolSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for SymbolSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SymbolSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
