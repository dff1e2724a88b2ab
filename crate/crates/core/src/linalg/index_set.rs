use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Strictly increasing list of column indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct IndexSet {
    indices: Vec<usize>,
}

impl IndexSet {
    pub fn empty() -> Self {
        Self { indices: Vec::new() }
    }

    /// `{0, 1, …, n-1}`.
    pub fn full(n: usize) -> Self {
        Self { indices: (0..n).collect() }
    }

    /// Validates that `indices` are strictly increasing and below `bound`.
    pub fn new(indices: Vec<usize>, bound: usize) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(crate::error::invalid("index set must be strictly increasing"));
        }
        let set = Self { indices };
        set.check_bound(bound)?;
        Ok(set)
    }

    /// Sorts and deduplicates.
    pub fn from_unsorted(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        Self { indices }
    }

    pub fn check_bound(&self, bound: usize) -> Result<()> {
        match self.indices.last() {
            Some(&last) if last >= bound => Err(Error::IndexOutOfRange { index: last, len: bound }),
            _ => Ok(()),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    #[inline]
    pub fn as_slice(&self) -> &[usize] {
        &self.indices
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    /// Position of `i` within the set.
    pub fn position(&self, i: usize) -> Option<usize> {
        self.indices.binary_search(&i).ok()
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        let (a, b) = (&self.indices, &other.indices);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                core::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        IndexSet { indices: out }
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        IndexSet { indices: self.iter().filter(|&i| other.contains(i)).collect() }
    }

    pub fn difference(&self, other: &IndexSet) -> IndexSet {
        IndexSet { indices: self.iter().filter(|&i| !other.contains(i)).collect() }
    }

    pub fn is_disjoint(&self, other: &IndexSet) -> bool {
        self.intersection(other).is_empty()
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.iter().all(|i| other.contains(i))
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.indices
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_unsorted(iter.into_iter().collect())
    }
}
