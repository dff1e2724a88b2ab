use alloc::vec::Vec;

use crate::error::{check_len, Error, Result};
use crate::math;

/// In-place Cholesky factorization of a symmetric positive definite `n × n`
/// row-major matrix; the lower triangle receives `L`.
pub fn cholesky_factor(a: &mut [f64], n: usize) -> Result<()> {
    check_len(n * n, a.len())?;
    for j in 0..n {
        let rj = j * n;
        let d = a[rj + j] - math::dot(&a[rj..rj + j], &a[rj..rj + j]);
        if !(d > 0.0) || !d.is_finite() {
            return Err(Error::RankDeficient);
        }
        let d = math::sqrt(d);
        a[rj + j] = d;
        for i in j + 1..n {
            let ri = i * n;
            let (head, tail) = a.split_at_mut(ri);
            let s = tail[j] - math::dot(&tail[..j], &head[rj..rj + j]);
            tail[j] = s / d;
        }
    }
    Ok(())
}

/// Solves `L Lᵀ x = b` given the factor from [`cholesky_factor`]; `b` is overwritten.
pub fn cholesky_solve(l: &[f64], n: usize, b: &mut [f64]) {
    for i in 0..n {
        let s = b[i] - math::dot(&l[i * n..i * n + i], &b[..i]);
        b[i] = s / l[i * n + i];
    }
    for i in (0..n).rev() {
        let mut s = b[i];
        for k in i + 1..n {
            s -= l[k * n + i] * b[k];
        }
        b[i] = s / l[i * n + i];
    }
}

/// Solves a symmetric positive definite system. When the plain factorization
/// breaks down, a relative diagonal shift is added, growing by 100× up to
/// `1e-6` of the largest diagonal entry.
pub fn solve_spd(a: &[f64], n: usize, b: &[f64]) -> Result<Vec<f64>> {
    check_len(n * n, a.len())?;
    check_len(n, b.len())?;
    let scale = (0..n).fold(0.0f64, |m, i| m.max(a[i * n + i].abs()));
    if !scale.is_finite() || b.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    let mut shift = 0.0;
    loop {
        let mut f = a.to_vec();
        if shift > 0.0 {
            for i in 0..n {
                f[i * n + i] += shift;
            }
        }
        if cholesky_factor(&mut f, n).is_ok() {
            let mut x = b.to_vec();
            cholesky_solve(&f, n, &mut x);
            return Ok(x);
        }
        shift = if shift == 0.0 { scale * 1e-14 } else { shift * 100.0 };
        if !(shift > 0.0) || shift > scale * 1e-6 {
            return Err(Error::RankDeficient);
        }
    }
}
