use std::fmt;

use fixedbitset::FixedBitSet;

/// A subset of the ground set `{0, .., n-1}` stored as a fixed-length bit vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(FixedBitSet);

impl Subset {
    /// The all-zeros vector of length `n`.
    pub fn empty(n: usize) -> Self {
        Subset(FixedBitSet::with_capacity(n))
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        Subset(bits)
    }

    pub fn from_items<I: IntoIterator<Item = usize>>(n: usize, items: I) -> Self {
        let mut s = Self::empty(n);
        for i in items {
            s.insert(i);
        }
        s
    }

    /// Builds a subset from the low `n` bits of `mask` (bit `i` is item `i`).
    pub fn from_mask(n: usize, mask: u64) -> Self {
        debug_assert!(n <= 64);
        Self::from_items(n, (0..n).filter(|i| mask >> i & 1 == 1))
    }

    /// Length of the bit vector (ground set size).
    pub fn universe(&self) -> usize {
        self.0.len()
    }

    /// Number of selected items.
    pub fn count(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn contains(&self, item: usize) -> bool {
        self.0.contains(item)
    }

    pub fn insert(&mut self, item: usize) {
        self.0.insert(item);
    }

    pub fn remove(&mut self, item: usize) {
        self.0.set(item, false);
    }

    pub fn toggle(&mut self, item: usize) {
        self.0.toggle(item);
    }

    pub fn with(&self, item: usize) -> Subset {
        let mut s = self.clone();
        s.insert(item);
        s
    }

    pub fn without(&self, item: usize) -> Subset {
        let mut s = self.clone();
        s.remove(item);
        s
    }

    pub fn items(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &Subset) -> Subset {
        Subset(&self.0 | &other.0)
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        Subset(&self.0 & &other.0)
    }

    pub fn as_bitset(&self) -> &FixedBitSet {
        &self.0
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subset({self})")
    }
}

/// Renders as a `0`/`1` string, item 0 first.
impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.universe() {
            f.write_str(if self.contains(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}
