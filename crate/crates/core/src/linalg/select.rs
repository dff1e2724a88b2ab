use alloc::vec::Vec;
use core::cmp::Ordering;

use super::IndexSet;
use crate::error::{Error, Result};

#[inline]
fn by_magnitude(v: &[f64]) -> impl Fn(&usize, &usize) -> Ordering + '_ {
    move |&a, &b| v[b].abs().total_cmp(&v[a].abs()).then(a.cmp(&b))
}

/// All indices ordered by decreasing magnitude, ties broken by smaller index.
pub fn ranked_indices(v: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_unstable_by(by_magnitude(v));
    idx
}

fn top_k_among(v: &[f64], mut candidates: Vec<usize>, k: usize) -> IndexSet {
    let cmp = by_magnitude(v);
    if k < candidates.len() {
        if k > 0 {
            candidates.select_nth_unstable_by(k - 1, &cmp);
        }
        candidates.truncate(k);
    }
    IndexSet::from_unsorted(candidates)
}

/// Indices of the `k` largest `|v_i|`, ties broken lexicographically.
pub fn top_k(v: &[f64], k: usize) -> Result<IndexSet> {
    if k > v.len() {
        return Err(Error::InvalidParameter(alloc::format!(
            "k = {k} exceeds vector length {}",
            v.len()
        )));
    }
    Ok(top_k_among(v, (0..v.len()).collect(), k))
}

/// Like [`top_k`] but never picks an index in `exclude` and never picks a zero
/// entry; returns fewer than `k` indices when not enough candidates remain.
pub fn top_k_excluding(v: &[f64], k: usize, exclude: &IndexSet) -> IndexSet {
    let candidates = (0..v.len()).filter(|&i| v[i] != 0.0 && !exclude.contains(i)).collect();
    top_k_among(v, candidates, k)
}

pub(crate) fn top_k_nonzero(v: &[f64], k: usize) -> IndexSet {
    top_k_excluding(v, k, &IndexSet::empty())
}
