use alloc::vec;
use alloc::vec::Vec;

use super::min_norm_solution;
use crate::error::{check_len, Error, Result};
use crate::linalg::{solve_spd, DenseMatrix, SparseVector};
use crate::math;

/// Linear program `min cᵀw` s.t. `A_eq w = b_eq`, `A_ub w ≤ b_ub`, over
/// `w = (z, t)` with `2d` variables.
#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    pub objective: Vec<f64>,
    pub eq_matrix: DenseMatrix,
    pub eq_rhs: Vec<f64>,
    pub ub_matrix: DenseMatrix,
    pub ub_rhs: Vec<f64>,
}

impl LpProblem {
    pub fn variables(&self) -> usize {
        self.objective.len()
    }

    pub fn objective_value(&self, w: &[f64]) -> f64 {
        math::dot(&self.objective, w)
    }

    /// Largest constraint violation at `w`.
    pub fn violation(&self, w: &[f64]) -> Result<f64> {
        let eq = self.eq_matrix.matvec(w)?;
        let ub = self.ub_matrix.matvec(w)?;
        let e = eq.iter().zip(&self.eq_rhs).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        let u = ub.iter().zip(&self.ub_rhs).fold(0.0f64, |m, (a, b)| m.max(a - b));
        Ok(e.max(u))
    }
}

/// Recasts `min ‖z‖₁ s.t. Φz = u` as an LP: minimize `Σ t_i` subject to
/// `z − t ≤ 0`, `−z − t ≤ 0`, `Φz = u`.
pub fn l1_recast(phi: &DenseMatrix, u: &[f64]) -> Result<LpProblem> {
    check_len(phi.rows(), u.len())?;
    let (m, d) = (phi.rows(), phi.cols());
    let mut objective = vec![0.0; 2 * d];
    objective[d..].iter_mut().for_each(|c| *c = 1.0);
    let mut eq = DenseMatrix::zeros(m, 2 * d);
    for i in 0..m {
        for j in 0..d {
            eq.set(i, j, phi.get(i, j));
        }
    }
    let mut ub = DenseMatrix::zeros(2 * d, 2 * d);
    for j in 0..d {
        ub.set(j, j, 1.0);
        ub.set(j, d + j, -1.0);
        ub.set(d + j, j, -1.0);
        ub.set(d + j, d + j, -1.0);
    }
    Ok(LpProblem { objective, eq_matrix: eq, eq_rhs: u.to_vec(), ub_matrix: ub, ub_rhs: vec![0.0; 2 * d] })
}

/// Primal solution of the recast LP.
#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub z: Vec<f64>,
    pub t: Vec<f64>,
    pub iterations: usize,
}

const MAX_PD_ITERS: usize = 100;
const PD_TOL: f64 = 1e-11;
const BARRIER_GROWTH: f64 = 10.0;
const LINE_ALPHA: f64 = 0.01;
const LINE_BETA: f64 = 0.5;

/// `min ‖z‖₁ s.t. Φz = u`.
pub fn bp_equality(phi: &DenseMatrix, u: &[f64]) -> Result<SparseVector> {
    bp_equality_lp(phi, u).map(|s| SparseVector::from_dense(s.z))
}

/// Primal-dual interior-point solve of the recast LP. Each Newton step is
/// reduced to an `m × m` positive definite system.
pub fn bp_equality_lp(phi: &DenseMatrix, u: &[f64]) -> Result<LpSolution> {
    check_len(phi.rows(), u.len())?;
    if u.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    let (m, d) = (phi.rows(), phi.cols());
    if math::norm2(u) == 0.0 {
        return Ok(LpSolution { z: vec![0.0; d], t: vec![0.0; d], iterations: 0 });
    }
    let mut x = min_norm_solution(phi, u)?;
    let xmax = math::norm_inf(&x);
    let mut t: Vec<f64> = x.iter().map(|v| 0.95 * v.abs() + 0.1 * xmax).collect();
    let mut f1: Vec<f64> = x.iter().zip(&t).map(|(x, t)| x - t).collect();
    let mut f2: Vec<f64> = x.iter().zip(&t).map(|(x, t)| -x - t).collect();
    let mut l1: Vec<f64> = f1.iter().map(|f| -1.0 / f).collect();
    let mut l2: Vec<f64> = f2.iter().map(|f| -1.0 / f).collect();
    let diff: Vec<f64> = l1.iter().zip(&l2).map(|(a, b)| a - b).collect();
    let mut v: Vec<f64> = phi.matvec(&diff)?.into_iter().map(|z| -z).collect();
    let mut atv = phi.adjoint_matvec(&v)?;
    let mut rpri: Vec<f64> = phi.matvec(&x)?.iter().zip(u).map(|(a, b)| a - b).collect();
    let n2 = (2 * d) as f64;
    let gap = |f1: &[f64], f2: &[f64], l1: &[f64], l2: &[f64]| -> f64 {
        -(math::dot(f1, l1) + math::dot(f2, l2))
    };
    let mut sdg = gap(&f1, &f2, &l1, &l2);
    let mut tau = BARRIER_GROWTH * n2 / sdg;
    let residual_norm = |l1: &[f64], l2: &[f64], f1: &[f64], f2: &[f64], atv: &[f64], rp: &[f64], tau: f64| {
        let mut acc = 0.0;
        for j in 0..d {
            let rd1 = l1[j] - l2[j] + atv[j];
            let rd2 = 1.0 - l1[j] - l2[j];
            let rc1 = -l1[j] * f1[j] - 1.0 / tau;
            let rc2 = -l2[j] * f2[j] - 1.0 / tau;
            acc += rd1 * rd1 + rd2 * rd2 + rc1 * rc1 + rc2 * rc2;
        }
        math::sqrt(acc + math::dot(rp, rp))
    };
    let mut resnorm = residual_norm(&l1, &l2, &f1, &f2, &atv, &rpri, tau);
    let tol = PD_TOL * math::norm1(&x).max(1.0);
    let mut iterations = 0;
    while sdg >= tol && iterations < MAX_PD_ITERS {
        iterations += 1;
        let inv = 1.0 / tau;
        let mut w1 = vec![0.0; d];
        let mut w2 = vec![0.0; d];
        let mut sig1 = vec![0.0; d];
        let mut sig2 = vec![0.0; d];
        let mut inv_sigx = vec![0.0; d];
        for j in 0..d {
            w1[j] = -inv * (-1.0 / f1[j] + 1.0 / f2[j]) - atv[j];
            w2[j] = -1.0 - inv * (1.0 / f1[j] + 1.0 / f2[j]);
            let a = -l1[j] / f1[j];
            let b = -l2[j] / f2[j];
            sig1[j] = a + b;
            sig2[j] = b - a;
            // sig1 − sig2²/sig1 without cancellation; stored as its inverse.
            inv_sigx[j] = 0.25 * (-f1[j] / l1[j] - f2[j] / l2[j]);
        }
        let tmp: Vec<f64> =
            (0..d).map(|j| inv_sigx[j] * (w1[j] - w2[j] * sig2[j] / sig1[j])).collect();
        let atmp = phi.matvec(&tmp)?;
        let w1p: Vec<f64> = rpri.iter().zip(&atmp).map(|(r, a)| r + a).collect();
        // H = Φ diag(1/sigx) Φᵀ
        let mut h = vec![0.0; m * m];
        for i in 0..m {
            let ri = phi.row(i);
            for k in i..m {
                let rk = phi.row(k);
                let mut acc = 0.0;
                for j in 0..d {
                    acc += ri[j] * rk[j] * inv_sigx[j];
                }
                h[i * m + k] = acc;
                h[k * m + i] = acc;
            }
        }
        let dv = match solve_spd(&h, m, &w1p) {
            Ok(dv) => dv,
            Err(_) => break,
        };
        let atdv = phi.adjoint_matvec(&dv)?;
        let dx: Vec<f64> =
            (0..d).map(|j| (w1[j] - w2[j] * sig2[j] / sig1[j] - atdv[j]) * inv_sigx[j]).collect();
        let adx = phi.matvec(&dx)?;
        let du: Vec<f64> = (0..d).map(|j| (w2[j] - sig2[j] * dx[j]) / sig1[j]).collect();
        let dl1: Vec<f64> =
            (0..d).map(|j| (l1[j] / f1[j]) * (-dx[j] + du[j]) - l1[j] - inv / f1[j]).collect();
        let dl2: Vec<f64> =
            (0..d).map(|j| (l2[j] / f2[j]) * (dx[j] + du[j]) - l2[j] - inv / f2[j]).collect();

        let mut s = 1.0f64;
        for j in 0..d {
            if dl1[j] < 0.0 {
                s = s.min(-l1[j] / dl1[j]);
            }
            if dl2[j] < 0.0 {
                s = s.min(-l2[j] / dl2[j]);
            }
            let a = dx[j] - du[j];
            if a > 0.0 {
                s = s.min(-f1[j] / a);
            }
            let b = -dx[j] - du[j];
            if b > 0.0 {
                s = s.min(-f2[j] / b);
            }
        }
        s *= 0.99;

        let mut accepted = None;
        for _ in 0..32 {
            let xp: Vec<f64> = (0..d).map(|j| x[j] + s * dx[j]).collect();
            let tp: Vec<f64> = (0..d).map(|j| t[j] + s * du[j]).collect();
            let l1p: Vec<f64> = (0..d).map(|j| l1[j] + s * dl1[j]).collect();
            let l2p: Vec<f64> = (0..d).map(|j| l2[j] + s * dl2[j]).collect();
            let atvp: Vec<f64> = (0..d).map(|j| atv[j] + s * atdv[j]).collect();
            let f1p: Vec<f64> = (0..d).map(|j| xp[j] - tp[j]).collect();
            let f2p: Vec<f64> = (0..d).map(|j| -xp[j] - tp[j]).collect();
            let rpp: Vec<f64> = (0..m).map(|i| rpri[i] + s * adx[i]).collect();
            let rn = residual_norm(&l1p, &l2p, &f1p, &f2p, &atvp, &rpp, tau);
            if rn <= (1.0 - LINE_ALPHA * s) * resnorm {
                accepted = Some((xp, tp, l1p, l2p, atvp, f1p, f2p, rpp));
                break;
            }
            s *= LINE_BETA;
        }
        let Some((xp, tp, l1p, l2p, atvp, f1p, f2p, rpp)) = accepted else {
            break;
        };
        for i in 0..m {
            v[i] += s * dv[i];
        }
        x = xp;
        t = tp;
        l1 = l1p;
        l2 = l2p;
        atv = atvp;
        f1 = f1p;
        f2 = f2p;
        rpri = rpp;
        sdg = gap(&f1, &f2, &l1, &l2);
        tau = BARRIER_GROWTH * n2 / sdg;
        resnorm = residual_norm(&l1, &l2, &f1, &f2, &atv, &rpri, tau);
    }
    // Final projection onto {Φz = u} removes accumulated infeasibility.
    let miss: Vec<f64> = phi.matvec(&x)?.iter().zip(u).map(|(a, b)| b - a).collect();
    if let Ok(corr) = min_norm_solution(phi, &miss) {
        x.iter_mut().zip(&corr).for_each(|(a, c)| *a += c);
    }
    if !(sdg <= 1e-6 * math::norm1(&x).max(1.0)) {
        return Err(Error::MaxIterations(iterations));
    }
    Ok(LpSolution { z: x, t, iterations })
}
