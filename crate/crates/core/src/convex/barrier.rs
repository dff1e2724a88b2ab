use alloc::vec;
use alloc::vec::Vec;

use super::{bp_equality, min_norm_solution};
use crate::error::{check_len, invalid, Error, Result};
use crate::linalg::{solve_spd, DenseMatrix, SparseVector};
use crate::math;

/// Log-barrier settings for [`bp_denoise_with`].
#[derive(Debug, Clone, PartialEq)]
pub struct BarrierOptions {
    /// Target duality gap `(2d + 1)/τ`.
    pub gap_tol: f64,
    /// Factor applied to `τ` after each centering.
    pub mu: f64,
    pub newton_tol: f64,
    pub newton_max_iters: usize,
    /// Starting point; replaced by the minimum-norm solution when infeasible.
    pub warm_start: Option<Vec<f64>>,
}

impl Default for BarrierOptions {
    fn default() -> Self {
        Self { gap_tol: 1e-8, mu: 10.0, newton_tol: 1e-6, newton_max_iters: 500, warm_start: None }
    }
}

/// `min ‖z‖₁ s.t. ‖Φz − u‖₂ ≤ ε`.
pub fn bp_denoise(phi: &DenseMatrix, u: &[f64], eps: f64) -> Result<SparseVector> {
    bp_denoise_with(phi, u, eps, &BarrierOptions::default())
}

pub fn bp_denoise_with(phi: &DenseMatrix, u: &[f64], eps: f64, opts: &BarrierOptions) -> Result<SparseVector> {
    check_len(phi.rows(), u.len())?;
    if !(eps >= 0.0) || !eps.is_finite() {
        return Err(invalid("noise bound must be finite and nonnegative"));
    }
    if u.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    if !(opts.mu > 1.0) || !(opts.gap_tol > 0.0) || opts.newton_max_iters == 0 {
        return Err(invalid("invalid barrier options"));
    }
    let d = phi.cols();
    if eps >= math::norm2(u) {
        return Ok(SparseVector::zeros(d));
    }
    if eps == 0.0 {
        return bp_equality(phi, u);
    }
    // The Newton system is solved densely in x-space; reductions to m-space
    // through a capacitance matrix lose too much accuracy near the boundary.
    let gram = phi.gram();
    let mut x = match &opts.warm_start {
        Some(w) => {
            check_len(d, w.len())?;
            let r = phi.matvec(w)?;
            if math::dist2(&r, u) < eps {
                w.clone()
            } else {
                min_norm_solution(phi, u)?
            }
        }
        None => min_norm_solution(phi, u)?,
    };
    let xmax = math::norm_inf(&x);
    let mut t: Vec<f64> = x.iter().map(|v| 0.95 * v.abs() + 0.1 * xmax).collect();
    let n = (2 * d + 1) as f64;
    let mut tau = (n / math::norm1(&x).max(f64::MIN_POSITIVE)).max(1.0);
    loop {
        newton(phi, &gram, u, eps, tau, &mut x, &mut t, opts)?;
        if n / tau <= opts.gap_tol {
            break;
        }
        tau *= opts.mu;
    }
    Ok(SparseVector::from_dense(x))
}

struct Point {
    x: Vec<f64>,
    t: Vec<f64>,
    r: Vec<f64>,
    f: f64,
}

fn barrier_value(x: &[f64], t: &[f64], r: &[f64], eps: f64, tau: f64) -> Option<f64> {
    let fe = 0.5 * (math::dot(r, r) - eps * eps);
    if !(fe < 0.0) {
        return None;
    }
    let mut logs = math::ln(-fe);
    let mut sum_t = 0.0;
    for (xi, ti) in x.iter().zip(t) {
        let a = ti - xi;
        let b = ti + xi;
        if !(a > 0.0 && b > 0.0) {
            return None;
        }
        logs += math::ln(a) + math::ln(b);
        sum_t += ti;
    }
    Some(sum_t - logs / tau)
}

/// Newton centering for fixed `τ`; updates `(x, t)` in place.
#[allow(clippy::too_many_arguments)]
fn newton(
    phi: &DenseMatrix,
    gram: &DenseMatrix,
    u: &[f64],
    eps: f64,
    tau: f64,
    x: &mut Vec<f64>,
    t: &mut Vec<f64>,
    opts: &BarrierOptions,
) -> Result<()> {
    let d = x.len();
    let r: Vec<f64> = phi.matvec(x)?.iter().zip(u).map(|(a, b)| a - b).collect();
    let f = barrier_value(x, t, &r, eps, tau).ok_or(Error::Infeasible)?;
    let mut cur = Point { x: core::mem::take(x), t: core::mem::take(t), r, f };
    for _ in 0..opts.newton_max_iters {
        let fu1: Vec<f64> = (0..d).map(|j| cur.x[j] - cur.t[j]).collect();
        let fu2: Vec<f64> = (0..d).map(|j| -cur.x[j] - cur.t[j]).collect();
        let fe = 0.5 * (math::dot(&cur.r, &cur.r) - eps * eps);
        let atr = phi.adjoint_matvec(&cur.r)?;
        let mut ntgz = vec![0.0; d];
        let mut ntgu = vec![0.0; d];
        let mut sig11 = vec![0.0; d];
        let mut sig12 = vec![0.0; d];
        let mut w1p = vec![0.0; d];
        let mut inv_diag = vec![0.0; d];
        for j in 0..d {
            ntgz[j] = 1.0 / fu1[j] - 1.0 / fu2[j] + atr[j] / fe;
            ntgu[j] = -tau - 1.0 / fu1[j] - 1.0 / fu2[j];
            let a = 1.0 / (fu1[j] * fu1[j]);
            let b = 1.0 / (fu2[j] * fu2[j]);
            sig11[j] = a + b;
            sig12[j] = -a + b;
            w1p[j] = ntgz[j] - sig12[j] / sig11[j] * ntgu[j];
            // 1/(sig11 − sig12²/sig11) = (fu1² + fu2²)/4
            inv_diag[j] = 0.25 * (fu1[j] * fu1[j] + fu2[j] * fu2[j]);
        }
        let gvec: Vec<f64> = atr.iter().map(|v| v / fe).collect();
        let Ok(dx) = newton_direction(gram, &inv_diag, -1.0 / fe, &gvec, &w1p) else {
            break;
        };
        let adx = phi.matvec(&dx)?;
        let du: Vec<f64> = (0..d).map(|j| ntgu[j] / sig11[j] - sig12[j] / sig11[j] * dx[j]).collect();

        // Largest step keeping the iterate strictly feasible.
        let mut smax = 1.0f64;
        for j in 0..d {
            let a = dx[j] - du[j];
            if a > 0.0 {
                smax = smax.min(-fu1[j] / a);
            }
            let b = -dx[j] - du[j];
            if b > 0.0 {
                smax = smax.min(-fu2[j] / b);
            }
        }
        let aq = math::dot(&adx, &adx);
        if aq > 0.0 {
            let bq = 2.0 * math::dot(&cur.r, &adx);
            let cq = math::dot(&cur.r, &cur.r) - eps * eps;
            smax = smax.min((-bq + math::sqrt(bq * bq - 4.0 * aq * cq)) / (2.0 * aq));
        }
        let mut s = 0.99 * smax;

        // gradf = −(1/τ)[ntgz; ntgu]
        let slope = -(math::dot(&ntgz, &dx) + math::dot(&ntgu, &du)) / tau;
        let mut next = None;
        for _ in 0..32 {
            let xp: Vec<f64> = (0..d).map(|j| cur.x[j] + s * dx[j]).collect();
            let tp: Vec<f64> = (0..d).map(|j| cur.t[j] + s * du[j]).collect();
            // Recomputed rather than accumulated so feasibility is exact.
            let rp: Vec<f64> = phi.matvec(&xp)?.iter().zip(u).map(|(a, b)| a - b).collect();
            if let Some(fp) = barrier_value(&xp, &tp, &rp, eps, tau) {
                if fp <= cur.f + 0.01 * s * slope {
                    next = Some(Point { x: xp, t: tp, r: rp, f: fp });
                    break;
                }
            }
            s *= 0.5;
        }
        let Some(p) = next else { break };
        cur = p;
        // Newton decrement of τ·f, which does not shrink as τ grows.
        if -slope * tau / 2.0 <= opts.newton_tol {
            break;
        }
    }
    *x = cur.x;
    *t = cur.t;
    Ok(())
}

/// Solves `(D + c·ΦᵀΦ + g gᵀ) dx = w` with `D` given by its inverse.
fn newton_direction(gram: &DenseMatrix, inv_diag: &[f64], c: f64, g: &[f64], w: &[f64]) -> Result<Vec<f64>> {
    let d = w.len();
    let mut h = vec![0.0; d * d];
    for i in 0..d {
        for k in 0..d {
            h[i * d + k] = c * gram.get(i, k) + g[i] * g[k];
        }
        h[i * d + i] += 1.0 / inv_diag[i];
    }
    solve_spd(&h, d, w)
}
