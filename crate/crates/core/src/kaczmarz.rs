//! Randomized Kaczmarz for overdetermined systems, with rows sampled in
//! proportion to their squared norms.

use alloc::vec::Vec;

use crate::error::{check_len, invalid, Error, Result};
use crate::linalg::{extreme_singular_values, DenseMatrix};
use crate::math;
use crate::rng::CounterRng;

/// Orthogonal projection of `x` onto `{z : ⟨a, z⟩ = b}`.
pub fn project_row(x: &[f64], a: &[f64], b: f64) -> Result<Vec<f64>> {
    check_len(a.len(), x.len())?;
    let mut out = x.to_vec();
    project_in_place(&mut out, a, b, math::dot(a, a)).ok_or(Error::ZeroVector)?;
    Ok(out)
}

fn project_in_place(x: &mut [f64], a: &[f64], b: f64, norm_sq: f64) -> Option<()> {
    if !(norm_sq > 0.0) {
        return None;
    }
    let c = (b - math::dot(a, x)) / norm_sq;
    math::axpy(c, a, x);
    Some(())
}

/// Inverse-CDF sampler over squared row norms.
#[derive(Debug, Clone, PartialEq)]
pub struct RowSampler {
    cumulative: Vec<f64>,
}

impl RowSampler {
    pub fn new(a: &DenseMatrix) -> Result<Self> {
        let mut cumulative = Vec::with_capacity(a.rows());
        let mut acc = 0.0;
        for (i, w) in a.row_norms_sq().into_iter().enumerate() {
            if !(w > 0.0) {
                return Err(Error::ZeroRow(i));
            }
            acc += w;
            cumulative.push(acc);
        }
        if cumulative.is_empty() {
            return Err(invalid("matrix has no rows"));
        }
        Ok(Self { cumulative })
    }

    /// Row `i` with probability `‖a_i‖²/‖A‖_F²`.
    pub fn sample(&self, rng: &mut CounterRng) -> usize {
        let total = *self.cumulative.last().unwrap_or(&0.0);
        let target = rng.next_f64() * total;
        let i = self.cumulative.partition_point(|&c| c <= target);
        i.min(self.cumulative.len() - 1)
    }
}

/// `(R, γ)` with `R = ‖A⁻¹‖²‖A‖_F²` (`‖A⁻¹‖ = 1/σ_min`) and
/// `γ = max_i |r_i|/‖a_i‖₂` (zero without a residual).
pub fn rk_theory(a: &DenseMatrix, residual: Option<&[f64]>) -> Result<(f64, f64)> {
    let (smin, smax) = extreme_singular_values(a)?;
    if !(smin > 1e-12 * smax) {
        return Err(Error::RankDeficient);
    }
    let r_const = a.frobenius_norm_sq() / (smin * smin);
    let gamma = match residual {
        None => 0.0,
        Some(r) => {
            check_len(a.rows(), r.len())?;
            let mut g = 0.0f64;
            for (i, (ri, n)) in r.iter().zip(a.row_norms_sq()).enumerate() {
                if !(n > 0.0) {
                    return Err(Error::ZeroRow(i));
                }
                g = g.max(ri.abs() / math::sqrt(n));
            }
            g
        }
    };
    Ok((r_const, gamma))
}

#[derive(Debug, Clone, PartialEq)]
pub struct KaczmarzRun {
    /// `(k, ‖x_k − x_ref‖₂)` at `k = 0`, every `log_stride` steps and the last step.
    pub iterates_logged: Vec<(usize, f64)>,
    pub final_estimate: Vec<f64>,
    /// `‖A⁻¹‖²‖A‖_F²`, or infinity when `A` lacks full column rank.
    pub r: f64,
    /// `max_i |r_i|/‖a_i‖` for `r = b − A x_ref`; zero without a reference.
    pub gamma: f64,
    pub seed: u64,
}

/// Error reference for [`rk_solve`].
#[derive(Debug, Clone, Copy)]
pub struct RkReference<'a> {
    pub x: &'a [f64],
    /// Log stride; `0` logs only the first and last iterates.
    pub log_stride: usize,
}

/// Runs `iters` randomized projections from `x0`.
pub fn rk_solve(
    a: &DenseMatrix,
    b: &[f64],
    x0: &[f64],
    iters: usize,
    seed: u64,
    reference: Option<RkReference<'_>>,
) -> Result<KaczmarzRun> {
    check_len(a.rows(), b.len())?;
    check_len(a.cols(), x0.len())?;
    let sampler = RowSampler::new(a)?;
    let norms = a.row_norms_sq();
    let mut rng = CounterRng::new(seed);
    let mut x = x0.to_vec();
    let mut log = Vec::new();
    let (r_const, gamma) = match reference {
        Some(rf) => {
            check_len(a.cols(), rf.x.len())?;
            log.push((0, math::dist2(&x, rf.x)));
            let ax = a.matvec(rf.x)?;
            let resid: Vec<f64> = b.iter().zip(&ax).map(|(p, q)| p - q).collect();
            match rk_theory(a, Some(&resid)) {
                Ok(v) => v,
                Err(Error::RankDeficient) => (f64::INFINITY, rk_theory_gamma(&resid, &norms)),
                Err(e) => return Err(e),
            }
        }
        None => match rk_theory(a, None) {
            Ok(v) => v,
            Err(Error::RankDeficient) => (f64::INFINITY, 0.0),
            Err(e) => return Err(e),
        },
    };
    for k in 1..=iters {
        let i = sampler.sample(&mut rng);
        project_in_place(&mut x, a.row(i), b[i], norms[i]).ok_or(Error::ZeroRow(i))?;
        if let Some(rf) = reference {
            if (rf.log_stride > 0 && k % rf.log_stride == 0) || k == iters {
                log.push((k, math::dist2(&x, rf.x)));
            }
        }
    }
    Ok(KaczmarzRun { iterates_logged: log, final_estimate: x, r: r_const, gamma, seed })
}

fn rk_theory_gamma(resid: &[f64], norms: &[f64]) -> f64 {
    resid.iter().zip(norms).fold(0.0f64, |g, (r, n)| g.max(r.abs() / math::sqrt(*n)))
}
