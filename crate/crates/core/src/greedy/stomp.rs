use alloc::vec::Vec;

use super::{exact_ls, residual, validate_inputs, HaltReason, RecoveryReport, RELATIVE_RESIDUAL_TOL};
use crate::error::{invalid, Result};
use crate::linalg::{pseudoinverse_apply, ranked_indices, DenseMatrix, IndexSet, SparseVector};
use crate::math;

/// Stagewise OMP settings. The noise level of stage `k` is `σ_k = ‖r‖₂/√m`
/// and the threshold `t` is the same in every stage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StompConfig {
    pub t: f64,
    pub max_stages: usize,
}

impl StompConfig {
    pub fn new(t: f64, max_stages: usize) -> Self {
        Self { t, max_stages }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t > 0.0) || !self.t.is_finite() {
            return Err(invalid("StOMP threshold must be positive"));
        }
        if self.max_stages == 0 {
            return Err(invalid("StOMP needs at least one stage"));
        }
        Ok(())
    }
}

impl Default for StompConfig {
    fn default() -> Self {
        Self { t: 2.0, max_stages: 10 }
    }
}

pub fn stomp(phi: &DenseMatrix, u: &[f64], cfg: &StompConfig) -> Result<RecoveryReport> {
    validate_inputs(phi, u)?;
    cfg.validate()?;
    let (m, d) = (phi.rows(), phi.cols());
    let ls = exact_ls();
    let tol = RELATIVE_RESIDUAL_TOL * math::norm2(u);
    let mut support = IndexSet::empty();
    let mut estimate = SparseVector::zeros(d);
    let mut r = u.to_vec();
    let mut report = RecoveryReport::zero(d, HaltReason::MaxIterations, 0);
    let cap = m.min(d);
    for _ in 0..cfg.max_stages {
        report.iterations += 1;
        let y = phi.adjoint_matvec(&r)?;
        let threshold = cfg.t * math::norm2(&r) / math::sqrt(m as f64);
        let mut chosen: Vec<usize> = ranked_indices(&y)
            .into_iter()
            .filter(|&j| !support.contains(j) && y[j].abs() > threshold)
            .collect();
        if chosen.is_empty() {
            report.halt_reason = HaltReason::ProxyInfNormCriterion;
            report.selected.push(IndexSet::empty());
            break;
        }
        chosen.truncate(cap - support.len());
        let j = IndexSet::from_unsorted(chosen);
        support = support.union(&j);
        estimate = pseudoinverse_apply(phi, &support, u, &ls)?;
        r = residual(phi, u, &estimate)?;
        let rn = math::norm2(&r);
        report.residual_history.push(rn);
        report.selected.push(j);
        if rn <= tol {
            report.halt_reason = HaltReason::ResidualZero;
            break;
        }
        if support.len() >= cap {
            report.halt_reason = HaltReason::SupportFull;
            break;
        }
    }
    report.estimate = estimate;
    report.support = support;
    Ok(report)
}
