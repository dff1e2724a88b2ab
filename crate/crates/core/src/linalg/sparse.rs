use alloc::vec;
use alloc::vec::Vec;

use super::{select, IndexSet};
use crate::error::{check_len, Result};
use crate::math;

/// Dense-length real vector with an explicitly tracked support.
///
/// Entries outside `support` are always zero; entries inside may happen to be
/// zero (e.g. a least-squares coefficient that vanished).
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVector {
    values: Vec<f64>,
    support: IndexSet,
}

impl SparseVector {
    pub fn zeros(len: usize) -> Self {
        Self { values: vec![0.0; len], support: IndexSet::empty() }
    }

    /// Support is the set of nonzero entries.
    pub fn from_dense(values: Vec<f64>) -> Self {
        let support = values.iter().enumerate().filter(|(_, v)| **v != 0.0).map(|(i, _)| i).collect();
        Self { values, support }
    }

    /// Places `on_support[k]` at `support[k]`.
    pub fn from_support(len: usize, support: IndexSet, on_support: &[f64]) -> Result<Self> {
        check_len(support.len(), on_support.len())?;
        support.check_bound(len)?;
        let mut values = vec![0.0; len];
        for (i, v) in support.iter().zip(on_support) {
            values[i] = *v;
        }
        Ok(Self { values, support })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn support(&self) -> &IndexSet {
        &self.support
    }

    pub fn get(&self, i: usize) -> f64 {
        self.values[i]
    }

    /// Entries on the support, in support order.
    pub fn on_support(&self) -> Vec<f64> {
        self.support.iter().map(|i| self.values[i]).collect()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn norm2(&self) -> f64 {
        math::norm2(&self.values)
    }

    pub fn norm1(&self) -> f64 {
        math::norm1(&self.values)
    }

    /// Number of nonzero entries.
    pub fn nnz(&self) -> usize {
        self.support.iter().filter(|&i| self.values[i] != 0.0).count()
    }

    /// Keeps the `s` largest-magnitude entries (ties go to the smaller index).
    pub fn pruned(&self, s: usize) -> SparseVector {
        let keep = select::top_k_nonzero(&self.values, s);
        let mut values = vec![0.0; self.len()];
        for i in keep.iter() {
            values[i] = self.values[i];
        }
        SparseVector { values, support: keep }
    }

    pub fn distance(&self, other: &[f64]) -> f64 {
        math::dist2(&self.values, other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_dense_tracks_nonzeros() {
        let v = SparseVector::from_dense(vec![0.0, 2.0, 0.0, -1.0]);
        assert_eq!(v.support().as_slice(), &[1, 3]);
        assert_eq!(v.on_support(), vec![2.0, -1.0]);
        assert_eq!(v.nnz(), 2);
    }

    #[test]
    fn from_support_places_values() {
        let v = SparseVector::from_support(4, IndexSet::from_unsorted(vec![0, 2]), &[5.0, 0.0]).unwrap();
        assert_eq!(v.values(), &[5.0, 0.0, 0.0, 0.0]);
        assert_eq!(v.support().len(), 2);
        assert_eq!(v.nnz(), 1);
    }
}
