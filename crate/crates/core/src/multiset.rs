//! Finite multisets in canonical sorted run-length form.
//!
//! A [`MultiSet`] is the value of an n-valued product: an element of the n-th
//! symmetric power of the carrier. Entries are kept strictly ascending, so two
//! multisets are equal exactly when their entry lists are equal.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiSet<T> {
    entries: Vec<(T, u64)>,
    total: u64,
}

impl<T: Ord> MultiSet<T> {
    /// Collects `items` into canonical form.
    pub fn from_items<I: IntoIterator<Item = T>>(items: I) -> Result<Self> {
        Self::from_counts(items.into_iter().map(|item| (item, 1)))
    }

    /// Builds a multiset from `(element, multiplicity)` pairs. Repeated
    /// elements are merged and zero multiplicities dropped.
    pub fn from_counts<I: IntoIterator<Item = (T, u64)>>(counts: I) -> Result<Self> {
        let mut runs: BTreeMap<T, u64> = BTreeMap::new();
        for (item, count) in counts {
            if count == 0 {
                continue;
            }
            let slot = runs.entry(item).or_insert(0);
            *slot = slot.checked_add(count).ok_or(Error::Overflow)?;
        }
        if runs.is_empty() {
            return Err(Error::EmptyMultiSet);
        }
        let mut total = 0u64;
        for count in runs.values() {
            total = total.checked_add(*count).ok_or(Error::Overflow)?;
        }
        Ok(MultiSet { entries: runs.into_iter().collect(), total })
    }

    /// `n` copies of a single element.
    pub fn constant(item: T, n: u64) -> Result<Self> {
        Self::from_counts([(item, n)])
    }

    pub fn multiplicity(&self, item: &T) -> u64 {
        match self.entries.binary_search_by(|(key, _)| key.cmp(item)) {
            Ok(pos) => self.entries[pos].1,
            Err(_) => 0,
        }
    }

    pub fn contains(&self, item: &T) -> bool {
        self.multiplicity(item) > 0
    }

    /// Distinct elements in ascending order.
    pub fn support(&self) -> impl Iterator<Item = &T> + '_ {
        self.entries.iter().map(|(item, _)| item)
    }

    pub fn support_set(&self) -> BTreeSet<T>
    where
        T: Clone,
    {
        self.support().cloned().collect()
    }

    /// Applies `f` to every element and re-canonicalizes.
    pub fn map<U: Ord, F: FnMut(&T) -> U>(&self, mut f: F) -> Result<MultiSet<U>> {
        MultiSet::from_counts(self.entries.iter().map(|(item, count)| (f(item), *count)))
    }
}

impl<T> MultiSet<T> {
    pub fn entries(&self) -> &[(T, u64)] {
        &self.entries
    }

    /// Sum of multiplicities.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Number of distinct elements.
    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, u64)> + '_ {
        self.entries.iter().map(|(item, count)| (item, *count))
    }
}

/// Union of multisets, each counted `outer` times.
///
/// This builds the n²-multisets compared by the associativity axiom.
pub fn flatten<T, I>(parts: I) -> Result<MultiSet<T>>
where
    T: Ord + Clone,
    I: IntoIterator<Item = (MultiSet<T>, u64)>,
{
    let mut counts = Vec::new();
    for (inner, outer) in parts {
        for (item, count) in inner.entries {
            counts.push((item, count.checked_mul(outer).ok_or(Error::Overflow)?));
        }
    }
    MultiSet::from_counts(counts)
}

impl<T: fmt::Display> fmt::Display for MultiSet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (item, count)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{item}:{count}")?;
        }
        f.write_str("}")
    }
}
