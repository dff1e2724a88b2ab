//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use sparse_recovery::DenseMatrix;

/// Gaussian elimination with partial pivoting; `None` when singular.
pub fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    let scale = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() <= 1e-12 * scale.max(1e-300) {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| a[i][k] * x[k]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    Some(x)
}

/// Least-squares fit of `u` on the listed columns via the normal equations.
pub fn lstsq_on(phi: &DenseMatrix, cols: &[usize], u: &[f64]) -> Option<Vec<f64>> {
    let k = cols.len();
    let m = phi.rows();
    let mut g = vec![vec![0.0; k]; k];
    let mut rhs = vec![0.0; k];
    for (a, &ca) in cols.iter().enumerate() {
        for (b, &cb) in cols.iter().enumerate() {
            g[a][b] = (0..m).map(|i| phi.get(i, ca) * phi.get(i, cb)).sum();
        }
        rhs[a] = (0..m).map(|i| phi.get(i, ca) * u[i]).sum();
    }
    solve_dense(g, rhs)
}

pub fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn norm1(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).sum()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub fn matvec(phi: &DenseMatrix, x: &[f64]) -> Vec<f64> {
    (0..phi.rows()).map(|i| (0..phi.cols()).map(|j| phi.get(i, j) * x[j]).sum()).collect()
}

/// Eigenvalues of a small symmetric matrix by repeated Jacobi sweeps, ascending.
pub fn sym_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _ in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Gram matrix of the listed columns.
pub fn gram_on(phi: &DenseMatrix, cols: &[usize]) -> Vec<Vec<f64>> {
    cols.iter()
        .map(|&a| cols.iter().map(|&b| (0..phi.rows()).map(|i| phi.get(i, a) * phi.get(i, b)).sum()).collect())
        .collect()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Restricted isometry constant by brute force: largest deviation of the
/// Gram eigenvalues from 1 over every `r`-column subset.
pub fn brute_ric(phi: &DenseMatrix, r: usize) -> f64 {
    combinations(phi.cols(), r)
        .iter()
        .map(|c| {
            let ev = sym_eigenvalues(gram_on(phi, c));
            (ev[ev.len() - 1] - 1.0).max(1.0 - ev[0])
        })
        .fold(0.0, f64::max)
}

/// Outcome of enumerating the basic solutions of `min ‖z‖₁, Φz = u`.
pub struct VertexOracle {
    pub value: f64,
    pub minimizer: Vec<f64>,
    /// Whether every optimal vertex is the same point.
    pub unique: bool,
}

/// Brute-force BP oracle for full-row-rank `Φ`: every vertex of the LP is
/// `z_S = Φ_S⁻¹u` for an `m`-column subset `S` with `Φ_S` invertible.
pub fn bp_vertex_oracle(phi: &DenseMatrix, u: &[f64]) -> Option<VertexOracle> {
    let (m, d) = (phi.rows(), phi.cols());
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut vertices = Vec::new();
    for cols in combinations(d, m) {
        let a: Vec<Vec<f64>> = (0..m).map(|i| cols.iter().map(|&j| phi.get(i, j)).collect()).collect();
        let Some(zs) = solve_dense(a, u.to_vec()) else { continue };
        let mut z = vec![0.0; d];
        for (k, &j) in cols.iter().enumerate() {
            z[j] = zs[k];
        }
        let v = norm1(&z);
        if best.as_ref().map_or(true, |(b, _)| v < *b) {
            best = Some((v, z.clone()));
        }
        vertices.push((v, z));
    }
    let (value, minimizer) = best?;
    let tol = 1e-9 * value.max(1.0);
    let unique = vertices.iter().filter(|(v, _)| *v <= value + tol).all(|(_, z)| dist(z, &minimizer) <= 1e-7 * value.max(1.0));
    Some(VertexOracle { value, minimizer, unique })
}

/// Small deterministic generator for test data (xorshift64*).
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        Self(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) | 1)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 ^= self.0 >> 12;
        self.0 ^= self.0 << 25;
        self.0 ^= self.0 >> 27;
        self.0.wrapping_mul(0x2545_f491_4f6c_dd1d)
    }

    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn normal(&mut self) -> f64 {
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.uniform() * n as f64) as usize % n
    }

    pub fn subset(&mut self, n: usize, k: usize) -> Vec<usize> {
        let mut pool: Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = i + self.below(n - i);
            pool.swap(i, j);
        }
        let mut s = pool[..k].to_vec();
        s.sort_unstable();
        s
    }
}

/// Columns `0..d` of the orthonormal DCT-II matrix of order `m`, plus a
/// Gaussian perturbation of size `t/√m`. Near-isometric on sparse vectors
/// when `t` is small.
pub fn perturbed_orthonormal(m: usize, d: usize, t: f64, rng: &mut TestRng) -> DenseMatrix {
    let mut data = Vec::with_capacity(m * d);
    for k in 0..m {
        for n in 0..d {
            let scale = if k == 0 { (1.0 / m as f64).sqrt() } else { (2.0 / m as f64).sqrt() };
            let base = scale * (std::f64::consts::PI * (2 * n + 1) as f64 * k as f64 / (2 * m) as f64).cos();
            data.push(base + t * rng.normal() / (m as f64).sqrt());
        }
    }
    DenseMatrix::new(m, d, data).unwrap()
}

/// Random sparse vector with `k` nonzeros drawn as standard normals.
pub fn sparse_normal(d: usize, k: usize, rng: &mut TestRng) -> Vec<f64> {
    let mut x = vec![0.0; d];
    for j in rng.subset(d, k) {
        x[j] = rng.normal();
    }
    x
}
