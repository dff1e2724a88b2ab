use alloc::vec;

use super::{exact_ls, is_zero, residual, validate_inputs, HaltReason, RecoveryReport};
use crate::error::{invalid, Result};
use crate::linalg::{pseudoinverse_apply, top_k_excluding, DenseMatrix, IndexSet, SparseVector};
use crate::math;

/// Residual norm at which OMP stops early.
const OMP_RESIDUAL_FLOOR: f64 = 1e-12;

/// Orthogonal matching pursuit: `s` rounds, one new index per round.
pub fn omp(phi: &DenseMatrix, u: &[f64], s: usize) -> Result<RecoveryReport> {
    validate_inputs(phi, u)?;
    if s > phi.rows() || s > phi.cols() {
        return Err(invalid("OMP needs s <= min(m, d)"));
    }
    let d = phi.cols();
    if is_zero(u) {
        return Ok(RecoveryReport::zero(d, HaltReason::ResidualZero, 0));
    }
    let ls = exact_ls();
    let mut support = IndexSet::empty();
    let mut estimate = SparseVector::zeros(d);
    let mut r = u.to_vec();
    let mut report = RecoveryReport::zero(d, HaltReason::MaxIterations, 0);
    for _ in 0..s {
        if math::norm2(&r) <= OMP_RESIDUAL_FLOOR {
            report.halt_reason = HaltReason::ResidualZero;
            break;
        }
        let y = phi.adjoint_matvec(&r)?;
        let mut pick = top_k_excluding(&y, 1, &support);
        if pick.is_empty() {
            // Proxy vanishes off the support; take the first unused column.
            let next = (0..d).find(|i| !support.contains(*i)).unwrap_or(0);
            pick = IndexSet::new(vec![next], d)?;
        }
        support = support.union(&pick);
        estimate = pseudoinverse_apply(phi, &support, u, &ls)?;
        r = residual(phi, u, &estimate)?;
        report.iterations += 1;
        report.residual_history.push(math::norm2(&r));
        report.selected.push(pick);
    }
    if report.halt_reason == HaltReason::MaxIterations && math::norm2(&r) <= OMP_RESIDUAL_FLOOR {
        report.halt_reason = HaltReason::ResidualZero;
    }
    report.estimate = estimate;
    report.support = support;
    Ok(report)
}
