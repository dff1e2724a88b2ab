//! Uniform dispatch over the recovery algorithms.

use std::str::FromStr;

use sparse_recovery::convex::{bp_denoise, bp_equality, effective_noise_level, reweighted_l1, RwConfig};
use sparse_recovery::greedy::{cosamp, omp, romp, stomp, CosampConfig, Halting, StompConfig};
use sparse_recovery::{DenseMatrix, SparseVector};

use crate::error::BenchResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Bp,
    Omp,
    Stomp,
    Romp,
    Cosamp,
    Rwl1,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] =
        [Algorithm::Bp, Algorithm::Omp, Algorithm::Stomp, Algorithm::Romp, Algorithm::Cosamp, Algorithm::Rwl1];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Bp => "bp",
            Algorithm::Omp => "omp",
            Algorithm::Stomp => "stomp",
            Algorithm::Romp => "romp",
            Algorithm::Cosamp => "cosamp",
            Algorithm::Rwl1 => "rwl1",
        }
    }

    /// Iteration limit checked by the iteration study, if any.
    pub fn iteration_cap(self, s: usize) -> Option<usize> {
        match self {
            Algorithm::Romp => Some(2 * s),
            Algorithm::Cosamp => Some(6 * (s + 1)),
            _ => None,
        }
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}` (bp, omp, stomp, romp, cosamp, rwl1)"))
    }
}

/// What the solver is told about the noise.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NoiseInfo {
    /// `‖e‖₂`.
    pub norm: f64,
    /// Per-entry standard deviation the noise was drawn with.
    pub sigma: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Recovery {
    pub estimate: SparseVector,
    pub iterations: usize,
    /// Reweighted iterates, first one unweighted; empty for other algorithms.
    pub iterates: Vec<SparseVector>,
}

/// Runs `algo` with sparsity `s`. Sparsity-driven algorithms return zero for `s = 0`.
///
/// Basis pursuit uses the equality form when there is no noise and the
/// quadratic form with `ε = ‖e‖₂` otherwise. Reweighted ℓ1 uses
/// `ε = σ√(m + 2√(2m))`. CoSaMP halts on `‖v‖₂ ≤ ‖e‖₂` (on an exact zero
/// residual when noiseless) or at its iteration cap.
pub fn recover(algo: Algorithm, phi: &DenseMatrix, u: &[f64], s: usize, noise: NoiseInfo) -> BenchResult<Recovery> {
    let simple = |estimate: SparseVector, iterations: usize| Recovery { estimate, iterations, iterates: Vec::new() };
    if s == 0 && matches!(algo, Algorithm::Omp | Algorithm::Romp | Algorithm::Cosamp) {
        return Ok(simple(SparseVector::zeros(phi.cols()), 0));
    }
    Ok(match algo {
        Algorithm::Bp => {
            let x = if noise.norm > 0.0 { bp_denoise(phi, u, noise.norm)? } else { bp_equality(phi, u)? };
            simple(x, 1)
        }
        Algorithm::Omp => {
            let r = omp(phi, u, s)?;
            simple(r.estimate, r.iterations)
        }
        Algorithm::Stomp => {
            let r = stomp(phi, u, &StompConfig::default())?;
            simple(r.estimate, r.iterations)
        }
        Algorithm::Romp => {
            let r = romp(phi, u, s)?;
            simple(r.estimate, r.iterations)
        }
        Algorithm::Cosamp => {
            let r = cosamp(phi, u, &CosampConfig::new(s, Halting::SampleNorm(noise.norm)))?;
            simple(r.estimate, r.iterations)
        }
        Algorithm::Rwl1 => {
            let cfg = RwConfig::new(effective_noise_level(noise.sigma, phi.rows()));
            let r = reweighted_l1(phi, u, &cfg, None)?;
            Recovery { estimate: r.estimate, iterations: cfg.max_iters, iterates: r.iterates }
        }
    })
}
