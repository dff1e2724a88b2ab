use super::{exact_ls, is_zero, residual, regularize, validate_inputs, HaltReason, RecoveryReport, RELATIVE_RESIDUAL_TOL};
use crate::error::{invalid, Result};
use crate::linalg::{pseudoinverse_apply, ranked_indices, top_k_excluding, DenseMatrix, IndexSet, SparseVector};
use crate::math;

/// ROMP limits. Defaults are `max_support = 2s` and `max_iters = s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RompConfig {
    pub s: usize,
    pub max_support: usize,
    pub max_iters: usize,
}

impl RompConfig {
    pub fn new(s: usize) -> Self {
        Self { s, max_support: 2 * s, max_iters: s }
    }

    pub fn validate(&self) -> Result<()> {
        if self.s == 0 || self.max_support == 0 || self.max_iters == 0 {
            return Err(invalid("ROMP needs s, max_support and max_iters >= 1"));
        }
        Ok(())
    }
}

/// Regularized OMP with the default limits.
pub fn romp(phi: &DenseMatrix, u: &[f64], s: usize) -> Result<RecoveryReport> {
    romp_with(phi, u, &RompConfig::new(s))
}

pub fn romp_with(phi: &DenseMatrix, u: &[f64], cfg: &RompConfig) -> Result<RecoveryReport> {
    validate_inputs(phi, u)?;
    cfg.validate()?;
    let (m, d) = (phi.rows(), phi.cols());
    if is_zero(u) {
        return Ok(RecoveryReport::zero(d, HaltReason::ResidualZero, 0));
    }
    let ls = exact_ls();
    let tol = RELATIVE_RESIDUAL_TOL * math::norm2(u);
    // The final J0 is trimmed to its largest entries so that |I| never exceeds max_support.
    let cap = m.min(d).min(cfg.max_support);
    let mut support = IndexSet::empty();
    let mut estimate = SparseVector::zeros(d);
    let mut r = u.to_vec();
    let mut report = RecoveryReport::zero(d, HaltReason::MaxIterations, 0);
    while report.iterations < cfg.max_iters {
        let y = phi.adjoint_matvec(&r)?;
        let j = top_k_excluding(&y, cfg.s, &support);
        if j.is_empty() {
            report.halt_reason = HaltReason::ProxyInfNormCriterion;
            break;
        }
        let mut j0 = regularize(&j, &y);
        if support.len() + j0.len() > cap {
            let vals: alloc::vec::Vec<f64> = j0.iter().map(|i| y[i]).collect();
            let keep = cap - support.len();
            j0 = ranked_indices(&vals).into_iter().take(keep).map(|k| j0.as_slice()[k]).collect();
        }
        support = support.union(&j0);
        estimate = pseudoinverse_apply(phi, &support, u, &ls)?;
        r = residual(phi, u, &estimate)?;
        let rn = math::norm2(&r);
        report.iterations += 1;
        report.residual_history.push(rn);
        report.selected.push(j0);
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

