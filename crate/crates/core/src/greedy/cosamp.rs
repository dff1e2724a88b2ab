use alloc::vec;
use alloc::vec::Vec;

use super::{
    halting_check, is_zero, residual, validate_inputs, Halting, HaltReason, HaltingInput, RecoveryReport,
    RELATIVE_RESIDUAL_TOL,
};
use crate::error::{invalid, Error, Result};
use crate::linalg::{least_squares, top_k_excluding, DenseMatrix, IndexSet, LsConfig, SparseVector};
use crate::math;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosampConfig {
    pub s: usize,
    pub halting: Halting,
    /// Estimation step; by default three CG iterations warm-started from the
    /// previous approximation.
    pub ls: LsConfig,
    /// Hard iteration cap for the criterion-based rules. `None` means `max(8s, 60)`.
    pub max_iters: Option<usize>,
    /// Estimate the residual signal from the current samples and add it to
    /// the previous approximation instead of re-solving against `u`.
    pub residual_variant: bool,
}

impl CosampConfig {
    pub fn new(s: usize, halting: Halting) -> Self {
        Self {
            s,
            halting,
            ls: LsConfig::conjugate_gradient(3),
            max_iters: None,
            residual_variant: false,
        }
    }

    pub fn with_ls(mut self, ls: LsConfig) -> Self {
        self.ls = ls;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.s == 0 {
            return Err(invalid("CoSaMP needs s >= 1"));
        }
        match self.halting {
            Halting::FixedIterations(0) => return Err(invalid("fixed iteration count must be >= 1")),
            Halting::SampleNorm(e) | Halting::ProxyInfNorm(e) if !(e >= 0.0) => {
                return Err(invalid("halting tolerance must be nonnegative"))
            }
            _ => {}
        }
        self.ls.validate()
    }

    fn iteration_cap(&self) -> usize {
        match self.halting {
            Halting::FixedIterations(k) => k,
            _ => self.max_iters.unwrap_or((8 * self.s).max(60)),
        }
    }
}

/// State exposed to an observer after each CoSaMP iteration.
#[derive(Debug)]
pub struct CosampStep<'a> {
    /// 1-based iteration number.
    pub iteration: usize,
    /// Proxy `Φ*v` computed at the start of the iteration.
    pub proxy: &'a [f64],
    /// Merged support `T`.
    pub merged: &'a IndexSet,
    /// New approximation `a^k`.
    pub approximation: &'a SparseVector,
    /// Updated samples `v = u − Φa^k`.
    pub samples: &'a [f64],
}

pub fn cosamp(phi: &DenseMatrix, u: &[f64], cfg: &CosampConfig) -> Result<RecoveryReport> {
    cosamp_observed(phi, u, cfg, |_| {})
}

/// [`cosamp`] calling `observe` after every iteration.
pub fn cosamp_observed<F>(phi: &DenseMatrix, u: &[f64], cfg: &CosampConfig, mut observe: F) -> Result<RecoveryReport>
where
    F: FnMut(&CosampStep<'_>),
{
    validate_inputs(phi, u)?;
    cfg.validate()?;
    let d = phi.cols();
    if is_zero(u) {
        return Ok(RecoveryReport::zero(d, HaltReason::ResidualZero, 0));
    }
    let s = cfg.s;
    let cap = cfg.iteration_cap();
    let tol = RELATIVE_RESIDUAL_TOL * math::norm2(u);
    let mut a = SparseVector::zeros(d);
    let mut v = u.to_vec();
    let mut report = RecoveryReport::zero(d, HaltReason::MaxIterations, 0);
    loop {
        let vn = math::norm2(&v);
        if halting_check(cfg.halting, HaltingInput::SampleNorm(vn), s) {
            report.halt_reason = HaltReason::SampleNormCriterion;
            break;
        }
        let y = phi.adjoint_matvec(&v)?;
        if halting_check(cfg.halting, HaltingInput::ProxyInfNorm(math::norm_inf(&y)), s) {
            report.halt_reason = HaltReason::ProxyInfNormCriterion;
            break;
        }
        if vn <= tol {
            report.halt_reason = HaltReason::ResidualZero;
            break;
        }
        if report.iterations >= cap {
            report.halt_reason = HaltReason::MaxIterations;
            break;
        }
        let omega = top_k_excluding(&y, 2 * s, &IndexSet::empty());
        let (merged, b) = if cfg.residual_variant {
            let est = solve_on(phi, &omega, &v, None, &cfg.ls)?;
            let mut c = a.values().to_vec();
            for (k, i) in omega.iter().enumerate() {
                c[i] += est[k];
            }
            (omega.clone(), SparseVector::from_dense(c))
        } else {
            let t = omega.union(a.support());
            if t.len() > 3 * s {
                return Err(Error::Hypothesis(alloc::format!("merged support {} exceeds 3s", t.len())));
            }
            let warm: Vec<f64> = t.iter().map(|i| a.get(i)).collect();
            let est = solve_on(phi, &t, u, Some(&warm), &cfg.ls)?;
            let b = SparseVector::from_support(d, t.clone(), &est)?;
            (t, b)
        };
        let next = b.pruned(s);
        let stalled = next == a;
        a = next;
        v = residual(phi, u, &a)?;
        report.iterations += 1;
        report.residual_history.push(math::norm2(&v));
        report.selected.push(omega);
        observe(&CosampStep {
            iteration: report.iterations,
            proxy: &y,
            merged: &merged,
            approximation: &a,
            samples: &v,
        });
        if stalled {
            report.halt_reason = HaltReason::Stalled;
            break;
        }
    }
    report.support = a.support().clone();
    report.estimate = a;
    Ok(report)
}

fn solve_on(phi: &DenseMatrix, t: &IndexSet, rhs: &[f64], warm: Option<&[f64]>, ls: &LsConfig) -> Result<Vec<f64>> {
    if t.is_empty() {
        return Ok(Vec::new());
    }
    let sub = phi.restrict_columns(t)?;
    let z0 = match warm {
        Some(w) => w.to_vec(),
        None => vec![0.0; t.len()],
    };
    Ok(least_squares(&sub, rhs, &z0, ls)?.z)
}
