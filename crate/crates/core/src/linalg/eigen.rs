use alloc::vec::Vec;

use super::DenseMatrix;
use crate::error::{check_len, invalid, Result};
use crate::math;

const MAX_SWEEPS: usize = 64;

/// Eigenvalues of a symmetric `n × n` row-major matrix, ascending, computed
/// with cyclic Jacobi rotations.
pub fn symmetric_eigenvalues(a: &[f64], n: usize) -> Result<Vec<f64>> {
    check_len(n * n, a.len())?;
    let mut m = a.to_vec();
    let total: f64 = m.iter().map(|x| x * x).sum();
    let eps = f64::EPSILON * f64::EPSILON * total;
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += m[p * n + q] * m[p * n + q];
            }
        }
        if off <= eps {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + math::sqrt(theta * theta + 1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / math::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let akp = m[k * n + p];
                    let akq = m[k * n + q];
                    m[k * n + p] = c * akp - s * akq;
                    m[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = m[p * n + k];
                    let aqk = m[q * n + k];
                    m[p * n + k] = c * apk - s * aqk;
                    m[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| m[i * n + i]).collect();
    ev.sort_unstable_by(f64::total_cmp);
    Ok(ev)
}

/// `(σ_min, σ_max)` of a matrix with at least one column, via the eigenvalues
/// of its Gram matrix.
pub fn extreme_singular_values(a: &DenseMatrix) -> Result<(f64, f64)> {
    if a.cols() == 0 {
        return Err(invalid("extreme singular values need at least one column"));
    }
    let g = a.gram();
    let ev = symmetric_eigenvalues(g.as_slice(), a.cols())?;
    let lo = ev[0].max(0.0);
    let hi = ev[ev.len() - 1].max(0.0);
    Ok((math::sqrt(lo), math::sqrt(hi)))
}
