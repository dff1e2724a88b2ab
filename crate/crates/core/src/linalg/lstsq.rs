use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{DenseMatrix, IndexSet, SparseVector};
use crate::error::{check_len, Error, Result};
use crate::math;

/// Iterative scheme for the normal equations `AᵀA z = Aᵀu`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LsMethod {
    /// `z ← Aᵀu − M z` with the splitting `M = AᵀA − I`. Converges only when `‖M‖ < 1`.
    Richardson,
    /// Conjugate gradient on the normal equations (CGLS).
    ConjugateGradient,
}

/// Least-squares settings. `max_iters = None` means `3·|T|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LsConfig {
    pub method: LsMethod,
    pub max_iters: Option<usize>,
    /// Stop once `‖Aᵀ(u − Az)‖ ≤ tol·‖Aᵀu‖`.
    pub tol: f64,
}

impl Default for LsConfig {
    fn default() -> Self {
        Self { method: LsMethod::ConjugateGradient, max_iters: None, tol: 1e-10 }
    }
}

impl LsConfig {
    pub fn conjugate_gradient(max_iters: usize) -> Self {
        Self { method: LsMethod::ConjugateGradient, max_iters: Some(max_iters), tol: 1e-10 }
    }

    pub fn richardson(max_iters: usize) -> Self {
        Self { method: LsMethod::Richardson, max_iters: Some(max_iters), tol: 1e-10 }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iters == Some(0) {
            return Err(crate::error::invalid("least-squares max_iters must be at least 1"));
        }
        if !(self.tol >= 0.0) {
            return Err(crate::error::invalid("least-squares tol must be nonnegative"));
        }
        Ok(())
    }

    fn iteration_cap(&self, cols: usize) -> usize {
        self.max_iters.unwrap_or(3 * cols.max(1))
    }
}

/// Approximate least-squares solution with the number of iterations used.
#[derive(Debug, Clone, PartialEq)]
pub struct LsSolution {
    pub z: Vec<f64>,
    pub iters: usize,
}

/// Approximates `A_T† u` starting from `z0`.
pub fn least_squares(a: &DenseMatrix, u: &[f64], z0: &[f64], cfg: &LsConfig) -> Result<LsSolution> {
    cfg.validate()?;
    check_len(a.rows(), u.len())?;
    check_len(a.cols(), z0.len())?;
    if a.cols() == 0 {
        return Ok(LsSolution { z: Vec::new(), iters: 0 });
    }
    let atu = a.adjoint_matvec(u)?;
    let target = cfg.tol * math::norm2(&atu);
    let cap = cfg.iteration_cap(a.cols());
    match cfg.method {
        LsMethod::Richardson => richardson(a, u, z0, &atu, target, cap),
        LsMethod::ConjugateGradient => cgls(a, u, z0, &atu, target, cap),
    }
}

fn normal_residual(a: &DenseMatrix, u: &[f64], z: &[f64]) -> Result<Vec<f64>> {
    let az = a.matvec(z)?;
    let r: Vec<f64> = u.iter().zip(&az).map(|(ui, ai)| ui - ai).collect();
    a.adjoint_matvec(&r)
}

fn richardson(
    a: &DenseMatrix,
    u: &[f64],
    z0: &[f64],
    atu: &[f64],
    target: f64,
    cap: usize,
) -> Result<LsSolution> {
    let mut z = z0.to_vec();
    let mut g = normal_residual(a, u, &z)?;
    let initial = math::norm2(&g);
    let mut iters = 0;
    while iters < cap && math::norm2(&g) > target {
        // z ← Aᵀu − (AᵀA − I) z
        let az = a.matvec(&z)?;
        let ataz = a.adjoint_matvec(&az)?;
        for ((zi, b), c) in z.iter_mut().zip(atu).zip(&ataz) {
            *zi = b - (c - *zi);
        }
        iters += 1;
        g = normal_residual(a, u, &z)?;
        let current = math::norm2(&g);
        if !current.is_finite() || current > 10.0 * initial.max(f64::MIN_POSITIVE) {
            return Err(Error::Divergence { iters, initial, current });
        }
    }
    Ok(LsSolution { z, iters })
}

fn cgls(
    a: &DenseMatrix,
    u: &[f64],
    z0: &[f64],
    _atu: &[f64],
    target: f64,
    cap: usize,
) -> Result<LsSolution> {
    let mut z = z0.to_vec();
    let az = a.matvec(&z)?;
    let mut r: Vec<f64> = u.iter().zip(&az).map(|(ui, ai)| ui - ai).collect();
    let mut s = a.adjoint_matvec(&r)?;
    let mut p = s.clone();
    let mut gamma = math::dot(&s, &s);
    let mut iters = 0;
    while iters < cap && math::sqrt(gamma) > target {
        let q = a.matvec(&p)?;
        let qq = math::dot(&q, &q);
        if !(qq > 0.0) {
            break;
        }
        let alpha = gamma / qq;
        math::axpy(alpha, &p, &mut z);
        math::axpy(-alpha, &q, &mut r);
        s = a.adjoint_matvec(&r)?;
        let next = math::dot(&s, &s);
        iters += 1;
        if !next.is_finite() {
            return Err(Error::Divergence { iters, initial: gamma, current: next });
        }
        let beta = next / gamma;
        gamma = next;
        for (pi, si) in p.iter_mut().zip(&s) {
            *pi = si + beta * *pi;
        }
    }
    Ok(LsSolution { z, iters })
}

/// Least-squares fit of `u` on the columns in `support`, scattered into a
/// length-`d` vector.
pub fn pseudoinverse_apply(
    a: &DenseMatrix,
    support: &IndexSet,
    u: &[f64],
    cfg: &LsConfig,
) -> Result<SparseVector> {
    warm_pseudoinverse(a, support, u, None, cfg).map(|(v, _)| v)
}

/// [`pseudoinverse_apply`] with an optional warm start (a length-`d` vector
/// whose entries on `support` seed the iteration). Also returns iterations used.
pub(crate) fn warm_pseudoinverse(
    a: &DenseMatrix,
    support: &IndexSet,
    u: &[f64],
    warm: Option<&[f64]>,
    cfg: &LsConfig,
) -> Result<(SparseVector, usize)> {
    check_len(a.rows(), u.len())?;
    if support.len() > a.rows() {
        return Err(Error::InvalidParameter(format!(
            "support of size {} exceeds {} measurements",
            support.len(),
            a.rows()
        )));
    }
    let at = a.restrict_columns(support)?;
    let z0 = match warm {
        Some(w) => {
            check_len(a.cols(), w.len())?;
            support.iter().map(|i| w[i]).collect()
        }
        None => vec![0.0; support.len()],
    };
    let sol = least_squares(&at, u, &z0, cfg)?;
    Ok((SparseVector::from_support(a.cols(), support.clone(), &sol.z)?, sol.iters))
}
