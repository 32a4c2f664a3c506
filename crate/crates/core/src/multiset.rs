//! Finite multisets ("ensembles avec multiplicités") over ordered keys.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiset<T: Ord> {
    counts: BTreeMap<T, usize>,
}

impl<T: Ord> Default for Multiset<T> {
    fn default() -> Self {
        Self {
            counts: BTreeMap::new(),
        }
    }
}

impl<T: Ord> Multiset<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, item: T) {
        self.insert_n(item, 1);
    }

    pub fn insert_n(&mut self, item: T, n: usize) {
        if n > 0 {
            *self.counts.entry(item).or_insert(0) += n;
        }
    }

    /// Removes up to `n` copies and returns how many were removed.
    pub fn remove_n(&mut self, item: &T, n: usize) -> usize {
        match self.counts.get_mut(item) {
            None => 0,
            Some(c) => {
                let taken = n.min(*c);
                *c -= taken;
                if *c == 0 {
                    self.counts.remove(item);
                }
                taken
            }
        }
    }

    /// Removes every copy and returns the former multiplicity.
    pub fn remove_all(&mut self, item: &T) -> usize {
        self.counts.remove(item).unwrap_or(0)
    }

    pub fn count(&self, item: &T) -> usize {
        self.counts.get(item).copied().unwrap_or(0)
    }

    pub fn contains(&self, item: &T) -> bool {
        self.counts.contains_key(item)
    }

    /// Total number of elements, counted with multiplicity.
    pub fn len(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn distinct_len(&self) -> usize {
        self.counts.len()
    }

    /// Distinct elements with their multiplicities, in key order.
    pub fn iter_counts(&self) -> btree_map::Iter<'_, T, usize> {
        self.counts.iter()
    }

    pub fn distinct(&self) -> impl Iterator<Item = &T> {
        self.counts.keys()
    }

    /// Every element repeated according to its multiplicity.
    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.counts
            .iter()
            .flat_map(|(k, &n)| std::iter::repeat_n(k, n))
    }

    /// Disjoint (additive) union.
    pub fn sum(mut self, other: Multiset<T>) -> Multiset<T> {
        for (k, n) in other.counts {
            self.insert_n(k, n);
        }
        self
    }
}

impl<T: Ord> FromIterator<T> for Multiset<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut m = Multiset::new();
        m.extend(iter);
        m
    }
}

impl<T: Ord> Extend<T> for Multiset<T> {
    fn extend<I: IntoIterator<Item = T>>(&mut self, iter: I) {
        for x in iter {
            self.insert(x);
        }
    }
}

impl<T: Ord + fmt::Debug> fmt::Debug for Multiset<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.counts.iter()).finish()
    }
}
