//! ℓ1 minimization: basis pursuit with equality or quadratic constraints,
//! iteratively reweighted ℓ1, and the reweighted error recursion.

mod barrier;
mod lp;
mod reweighted;

pub use barrier::{bp_denoise, bp_denoise_with, BarrierOptions};
pub use lp::{bp_equality, bp_equality_lp, l1_recast, LpProblem, LpSolution};
pub use reweighted::{
    effective_noise_level, reweighted_l1, rw_error_recursion, RwBounds, RwConfig, StabilitySchedule,
    ReweightedReport, tail_noise_level,
};

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{solve_spd, DenseMatrix};
use crate::math;

/// Minimum-norm solution `Aᵀ(AAᵀ)⁻¹b`, or `Infeasible` when the system is
/// inconsistent.
pub(crate) fn min_norm_solution(a: &DenseMatrix, b: &[f64]) -> Result<Vec<f64>> {
    let aat = a.outer_gram();
    let w = solve_spd(aat.as_slice(), a.rows(), b)?;
    let x = a.adjoint_matvec(&w)?;
    let r = a.matvec(&x)?;
    let miss = math::dist2(&r, b);
    if !(miss <= 1e-8 * math::norm2(b).max(1.0)) {
        return Err(Error::Infeasible);
    }
    Ok(x)
}
