use alloc::vec::Vec;

use super::barrier::{bp_denoise_with, BarrierOptions};
use crate::error::{check_len, invalid, Error, Result};
use crate::linalg::{DenseMatrix, SparseVector};
use crate::math;

/// Stability parameter `a` used when forming weights for solve `k` (1-based).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StabilitySchedule {
    /// `a_k = 1/(1000k)`.
    InverseThousandK,
    Constant(f64),
}

impl StabilitySchedule {
    pub fn at(self, k: usize) -> f64 {
        match self {
            StabilitySchedule::InverseThousandK => 1.0 / (1000.0 * k as f64),
            StabilitySchedule::Constant(a) => a,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RwConfig {
    pub epsilon: f64,
    pub schedule: StabilitySchedule,
    /// Number of weighted solves, the first one unweighted.
    pub max_iters: usize,
}

impl RwConfig {
    pub fn new(epsilon: f64) -> Self {
        Self { epsilon, schedule: StabilitySchedule::InverseThousandK, max_iters: 9 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon >= 0.0) || !self.epsilon.is_finite() {
            return Err(invalid("epsilon must be finite and nonnegative"));
        }
        if let StabilitySchedule::Constant(a) = self.schedule {
            if !(a > 0.0) {
                return Err(invalid("stability parameter must be positive"));
            }
        }
        if self.max_iters == 0 {
            return Err(invalid("reweighted l1 needs at least one iteration"));
        }
        Ok(())
    }
}

/// Noise bound `ε = σ·√(m + 2√(2m))` for i.i.d. `N(0, σ²)` noise in `m` samples.
pub fn effective_noise_level(sigma: f64, m: usize) -> f64 {
    let m = m as f64;
    sigma * math::sqrt(m + 2.0 * math::sqrt(2.0 * m))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReweightedReport {
    pub estimate: SparseVector,
    /// Estimate after each weighted solve.
    pub iterates: Vec<SparseVector>,
    /// `‖x − x̂_k‖₂` per solve, when a reference signal was supplied.
    pub errors: Option<Vec<f64>>,
}

/// Iteratively reweighted ℓ1: solve `min Σ w_i|z_i| s.t. ‖Φz − u‖ ≤ ε`, then
/// reset `w_i = 1/(|x̂_i| + a_k)`. Weighted problems are solved as plain ones
/// on `Φ diag(1/w)`.
pub fn reweighted_l1(
    phi: &DenseMatrix,
    u: &[f64],
    cfg: &RwConfig,
    reference: Option<&[f64]>,
) -> Result<ReweightedReport> {
    cfg.validate()?;
    check_len(phi.rows(), u.len())?;
    if let Some(x) = reference {
        check_len(phi.cols(), x.len())?;
    }
    let d = phi.cols();
    let mut scales = alloc::vec![1.0; d];
    let mut iterates = Vec::with_capacity(cfg.max_iters);
    let mut prev: Option<Vec<f64>> = None;
    for k in 1..=cfg.max_iters {
        if let Some(p) = &prev {
            let a = cfg.schedule.at(k);
            for (sc, v) in scales.iter_mut().zip(p) {
                *sc = v.abs() + a;
            }
        }
        let scaled = phi.scale_columns(&scales)?;
        let opts = BarrierOptions {
            warm_start: prev.as_ref().map(|p| p.iter().zip(&scales).map(|(v, s)| v / s).collect()),
            ..BarrierOptions::default()
        };
        let z = bp_denoise_with(&scaled, u, cfg.epsilon, &opts)?;
        let x: Vec<f64> = z.values().iter().zip(&scales).map(|(v, s)| v * s).collect();
        iterates.push(SparseVector::from_dense(x.clone()));
        prev = Some(x);
    }
    let errors = reference.map(|x| iterates.iter().map(|it| it.distance(x)).collect());
    let estimate = iterates.last().cloned().unwrap_or_else(|| SparseVector::zeros(d));
    Ok(ReweightedReport { estimate, iterates, errors })
}

/// Per-iteration error bounds for reweighted ℓ1 on a sparse signal.
#[derive(Debug, Clone, PartialEq)]
pub struct RwBounds {
    pub mu: f64,
    pub eps: f64,
    pub delta: f64,
    /// `√2·δ/(1 − δ)`.
    pub rho: f64,
    /// `2√(1 + δ)/(1 − δ)`.
    pub alpha: f64,
    /// `E(1), E(2), …` up to and including the first term within `tol` of the limit.
    pub e: Vec<f64>,
    /// `2αε / (1 + √(1 − 4αε/μ − 4αερ/μ))`.
    pub limit: f64,
    pub iters_to_converge: usize,
}

impl RwBounds {
    /// Limiting bound in simplified form, `2αε/(1 + ρ)`.
    pub fn simple_bound(&self) -> f64 {
        2.0 * self.alpha * self.eps / (1.0 + self.rho)
    }
}

const MAX_RECURSION_STEPS: usize = 100_000;

/// Runs `E(1) = 2αε/(1 − ρ)`, `E(k+1) = (1 + q)αε/(1 − ρq)` with
/// `q = E(k)/(μ − E(k))` until `|E(k) − L| ≤ tol`.
pub fn rw_error_recursion(mu: f64, eps: f64, delta: f64, tol: f64) -> Result<RwBounds> {
    if !(delta >= 0.0 && delta < math::sqrt(2.0) - 1.0) {
        return Err(Error::Hypothesis(alloc::format!("delta = {delta} must lie in [0, sqrt(2) - 1)")));
    }
    if !(eps >= 0.0) || !eps.is_finite() || !(tol > 0.0) || !(mu > 0.0) {
        return Err(invalid("need eps >= 0, mu > 0 and tol > 0"));
    }
    let rho = math::sqrt(2.0) * delta / (1.0 - delta);
    let alpha = 2.0 * math::sqrt(1.0 + delta) / (1.0 - delta);
    if mu < 4.0 * alpha * eps / (1.0 - rho) {
        return Err(Error::Hypothesis(alloc::format!(
            "mu = {mu} is below 4*alpha*eps/(1 - rho) = {}",
            4.0 * alpha * eps / (1.0 - rho)
        )));
    }
    let disc = 1.0 - 4.0 * alpha * eps / mu - 4.0 * alpha * eps * rho / mu;
    let limit = 2.0 * alpha * eps / (1.0 + math::sqrt(disc.max(0.0)));
    let mut e = Vec::new();
    let mut cur = 2.0 * alpha * eps / (1.0 - rho);
    loop {
        e.push(cur);
        if (cur - limit).abs() <= tol {
            break;
        }
        if e.len() >= MAX_RECURSION_STEPS {
            return Err(Error::MaxIterations(e.len()));
        }
        let q = cur / (mu - cur);
        cur = (1.0 + q) * alpha * eps / (1.0 - rho * q);
    }
    let iters_to_converge = e.len();
    Ok(RwBounds { mu, eps, delta, rho, alpha, e, limit, iters_to_converge })
}

/// `1.2(‖x − x_s‖₂ + ‖x − x_s‖₁/√s) + ε`: the noise level at which the
/// sparse-case bounds apply to an arbitrary signal. Evaluated only; callers
/// decide whether to enforce `μ ≥ 4α·ε₀/(1 − ρ)`.
pub fn tail_noise_level(x: &SparseVector, s: usize, eps: f64) -> Result<f64> {
    if s == 0 {
        return Err(invalid("sparsity must be at least 1"));
    }
    let head = x.pruned(s);
    let tail: Vec<f64> = x.values().iter().zip(head.values()).map(|(a, b)| a - b).collect();
    Ok(1.2 * (math::norm2(&tail) + math::norm1(&tail) / math::sqrt(s as f64)) + eps)
}
