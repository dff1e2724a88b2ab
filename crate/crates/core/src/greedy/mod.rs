//! Greedy pursuit: OMP, StOMP, ROMP and CoSaMP.

mod cosamp;
mod omp;
mod romp;
mod stomp;
mod support;

pub use cosamp::{cosamp, cosamp_observed, CosampConfig, CosampStep};
pub use omp::omp;
pub use romp::{romp, romp_with, RompConfig};
pub use stomp::{stomp, StompConfig};
pub use support::{
    band_profile, halting_check, iteration_bound, prune, regularize, unrecoverable_energy,
    BandProfile, Halting, HaltingInput,
};

use alloc::vec::Vec;

use crate::error::Result;
use crate::linalg::{DenseMatrix, IndexSet, LsConfig, SparseVector};
use crate::math;

/// Why a greedy loop stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HaltReason {
    ResidualZero,
    SupportFull,
    MaxIterations,
    SampleNormCriterion,
    ProxyInfNormCriterion,
    /// An iteration reproduced the previous approximation exactly.
    Stalled,
}

impl HaltReason {
    pub fn name(self) -> &'static str {
        match self {
            HaltReason::ResidualZero => "residual_zero",
            HaltReason::SupportFull => "support_full",
            HaltReason::MaxIterations => "max_iterations",
            HaltReason::SampleNormCriterion => "sample_norm_criterion",
            HaltReason::ProxyInfNormCriterion => "proxy_infnorm_criterion",
            HaltReason::Stalled => "stalled",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryReport {
    pub estimate: SparseVector,
    /// Index set built by the algorithm (`I` for OMP/StOMP/ROMP, final support for CoSaMP).
    pub support: IndexSet,
    pub iterations: usize,
    /// `‖r‖₂` after each iteration.
    pub residual_history: Vec<f64>,
    pub halt_reason: HaltReason,
    /// Indices chosen in each iteration (`{λ}`, `J`, `J₀` or `Ω`).
    pub selected: Vec<IndexSet>,
}

impl RecoveryReport {
    fn zero(d: usize, reason: HaltReason, iterations: usize) -> Self {
        Self {
            estimate: SparseVector::zeros(d),
            support: IndexSet::empty(),
            iterations,
            residual_history: Vec::new(),
            halt_reason: reason,
            selected: Vec::new(),
        }
    }
}

/// Least-squares settings used by OMP, StOMP and ROMP, which need the
/// projection to full accuracy.
pub(crate) fn exact_ls() -> LsConfig {
    LsConfig::default().with_tol(1e-13)
}

/// Residual tolerance relative to `‖u‖` below which a loop reports a zero residual.
pub(crate) const RELATIVE_RESIDUAL_TOL: f64 = 1e-10;

pub(crate) fn residual(phi: &DenseMatrix, u: &[f64], x: &SparseVector) -> Result<Vec<f64>> {
    let ax = phi.matvec_on(x.support(), &x.on_support())?;
    Ok(u.iter().zip(&ax).map(|(a, b)| a - b).collect())
}

pub(crate) fn validate_inputs(phi: &DenseMatrix, u: &[f64]) -> Result<()> {
    crate::error::check_len(phi.rows(), u.len())?;
    if u.iter().any(|v| !v.is_finite()) {
        return Err(crate::error::Error::NonFinite);
    }
    Ok(())
}

pub(crate) fn is_zero(u: &[f64]) -> bool {
    math::norm2(u) == 0.0
}
