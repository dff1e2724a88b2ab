//! Building blocks shared by the greedy algorithms.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{ranked_indices, IndexSet, SparseVector};
use crate::math;

/// Keeps the `s` largest-magnitude entries of `b` (ties go to the lower index).
pub fn prune(b: &SparseVector, s: usize) -> SparseVector {
    b.pruned(s)
}

/// Selects, among the indices in `j`, the subset of comparable magnitudes
/// (`|y_i| ≤ 2|y_k|` for every pair) with maximal energy.
///
/// The optimum is always a run of the magnitude-sorted sequence starting at
/// some element `a` and containing everything down to `|a|/2`, so every run is
/// scanned with two pointers. Ties keep the run with the larger leading entry.
pub fn regularize(j: &IndexSet, y: &[f64]) -> IndexSet {
    if j.is_empty() {
        return IndexSet::empty();
    }
    let vals: Vec<f64> = j.iter().map(|i| y[i]).collect();
    let order = ranked_indices(&vals);
    let mag: Vec<f64> = order.iter().map(|&k| vals[k].abs()).collect();
    let mut prefix = Vec::with_capacity(mag.len() + 1);
    prefix.push(0.0);
    for m in &mag {
        let last = *prefix.last().unwrap_or(&0.0);
        prefix.push(last + m * m);
    }
    let mut best = (f64::NEG_INFINITY, 0usize, 0usize);
    let mut end = 0;
    for start in 0..mag.len() {
        if end < start {
            end = start;
        }
        while end + 1 < mag.len() && 2.0 * mag[end + 1] >= mag[start] {
            end += 1;
        }
        let energy = prefix[end + 1] - prefix[start];
        if energy > best.0 {
            best = (energy, start, end);
        }
    }
    order[best.1..=best.2].iter().map(|&k| j.as_slice()[k]).collect()
}

/// `‖x − x_s‖₂ + ‖x − x_s‖₁/√s + e_norm`.
pub fn unrecoverable_energy(x: &SparseVector, s: usize, e_norm: f64) -> Result<f64> {
    if s == 0 {
        return Err(crate::error::invalid("sparsity must be at least 1"));
    }
    let head = x.pruned(s);
    let tail: Vec<f64> = x.values().iter().zip(head.values()).map(|(a, b)| a - b).collect();
    Ok(math::norm2(&tail) + math::norm1(&tail) / math::sqrt(s as f64) + e_norm)
}

/// Dyadic bands of a signal: `B_j = {i : 2^{−(j+1)}‖x‖² < |x_i|² ≤ 2^{−j}‖x‖²}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandProfile {
    pub bands: BTreeMap<u32, IndexSet>,
    pub profile: usize,
}

pub fn band_profile(x: &SparseVector) -> Result<BandProfile> {
    let total: f64 = x.values().iter().map(|v| v * v).sum();
    if total == 0.0 {
        return Err(Error::ZeroVector);
    }
    let mut raw: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for i in x.support().iter() {
        let ratio = x.get(i) * x.get(i) / total;
        // Smallest j with ratio > 2^{-(j+1)}, found by halving.
        let mut j = 0u32;
        let mut upper = 1.0f64;
        while ratio <= upper * 0.5 {
            upper *= 0.5;
            j += 1;
        }
        raw.entry(j).or_default().push(i);
    }
    let bands: BTreeMap<u32, IndexSet> =
        raw.into_iter().map(|(j, v)| (j, IndexSet::from_unsorted(v))).collect();
    let profile = bands.len();
    Ok(BandProfile { bands, profile })
}

/// Stopping rules for the CoSaMP loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Halting {
    FixedIterations(usize),
    /// Stop once `‖v‖₂ ≤ ε`.
    SampleNorm(f64),
    /// Stop once `‖Φ*v‖_∞ ≤ η/√(2s)`.
    ProxyInfNorm(f64),
}

/// Quantity tested by [`halting_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HaltingInput {
    SampleNorm(f64),
    ProxyInfNorm(f64),
}

/// Inclusive halting predicate. `SampleNorm(ε)` fires on `‖v‖ ≤ ε`,
/// `ProxyInfNorm(η)` on `‖y‖_∞ ≤ η/√(2s)`. Fixed-iteration rules and
/// mismatched inputs never fire here.
pub fn halting_check(rule: Halting, input: HaltingInput, s: usize) -> bool {
    match (rule, input) {
        (Halting::SampleNorm(eps), HaltingInput::SampleNorm(v)) => v <= eps,
        (Halting::ProxyInfNorm(eta), HaltingInput::ProxyInfNorm(y)) => {
            y <= eta / math::sqrt(2.0 * s as f64)
        }
        _ => false,
    }
}

/// Iteration bound for exact recovery of a sparse signal with the given
/// profile: `p·log_{4/3}(1 + 4.6√(s/p)) + 6`.
pub fn iteration_bound(s: usize, profile: usize) -> f64 {
    let p = profile.max(1) as f64;
    let arg = 1.0 + 4.6 * math::sqrt(s as f64 / p);
    p * math::ln(arg) / math::ln(4.0 / 3.0) + 6.0
}
