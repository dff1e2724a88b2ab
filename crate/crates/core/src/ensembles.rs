//! Seeded measurement matrices, test signals and noise.
//!
//! Every generator is a pure function of its spec: the same spec (including
//! the seed) always yields bit-identical output.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::linalg::{DenseMatrix, SparseVector};
use crate::math;
use crate::rng::CounterRng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// i.i.d. standard normal entries.
    Gaussian,
    /// i.i.d. uniform ±1 entries.
    Bernoulli,
    /// `m` distinct rows of the orthonormal `d × d` DCT-II matrix.
    PartialDct,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Gaussian => "gaussian",
            Family::Bernoulli => "bernoulli",
            Family::PartialDct => "partial_dct",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "gaussian" => Some(Family::Gaussian),
            "bernoulli" => Some(Family::Bernoulli),
            "partial_dct" | "dct" => Some(Family::PartialDct),
            _ => None,
        }
    }
}

/// Random matrix family, shape, seed and normalization.
///
/// With `normalize`, Gaussian and Bernoulli entries are scaled by `1/√m` and
/// partial-DCT rows by `√(d/m)`, so that columns have unit norm in expectation
/// (exactly, for the DCT).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EnsembleSpec {
    pub family: Family,
    pub rows: usize,
    pub cols: usize,
    pub seed: u64,
    pub normalize: bool,
}

impl EnsembleSpec {
    pub fn new(family: Family, rows: usize, cols: usize, seed: u64) -> Self {
        Self { family, rows, cols, seed, normalize: true }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rows == 0 || self.cols == 0 {
            return Err(invalid("matrix dimensions must be positive"));
        }
        if self.family == Family::PartialDct && self.rows > self.cols {
            return Err(invalid("partial DCT needs m <= d"));
        }
        Ok(())
    }
}

/// Entry `(k, n)` of the orthonormal DCT-II matrix of order `d`.
pub fn dct_entry(d: usize, k: usize, n: usize) -> f64 {
    let scale = if k == 0 { math::sqrt(1.0 / d as f64) } else { math::sqrt(2.0 / d as f64) };
    let angle = core::f64::consts::PI * (2 * n + 1) as f64 * k as f64 / (2 * d) as f64;
    scale * math::cos(angle)
}

/// The full orthonormal `d × d` DCT-II matrix.
pub fn dct_matrix(d: usize) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(d, d);
    for k in 0..d {
        for n in 0..d {
            m.set(k, n, dct_entry(d, k, n));
        }
    }
    m
}

/// Row indices a partial-DCT spec selects, ascending.
pub fn partial_dct_rows(spec: &EnsembleSpec) -> Vec<usize> {
    let mut rng = CounterRng::new(spec.seed);
    let mut rows = rng.sample_without_replacement(spec.cols, spec.rows);
    rows.sort_unstable();
    rows
}

pub fn gen_matrix(spec: &EnsembleSpec) -> Result<DenseMatrix> {
    spec.validate()?;
    let (m, d) = (spec.rows, spec.cols);
    let mut rng = CounterRng::new(spec.seed);
    let data: Vec<f64> = match spec.family {
        Family::Gaussian => {
            let c = if spec.normalize { 1.0 / math::sqrt(m as f64) } else { 1.0 };
            (0..m * d).map(|_| c * rng.normal()).collect()
        }
        Family::Bernoulli => {
            let c = if spec.normalize { 1.0 / math::sqrt(m as f64) } else { 1.0 };
            (0..m * d).map(|_| c * rng.sign()).collect()
        }
        Family::PartialDct => {
            let c = if spec.normalize { math::sqrt(d as f64 / m as f64) } else { 1.0 };
            let rows = partial_dct_rows(spec);
            let mut data = Vec::with_capacity(m * d);
            for &k in &rows {
                data.extend((0..d).map(|n| c * dct_entry(d, k, n)));
            }
            data
        }
    };
    DenseMatrix::new(m, d, data)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SignalKind {
    /// Unit-magnitude entries on the support.
    Flat,
    /// The `i`-th selected entry has magnitude `i^(-1/p)`, `0 < p < 1`.
    Compressible { p: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignMode {
    Positive,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignalSpec {
    pub dim: usize,
    pub sparsity: usize,
    pub kind: SignalKind,
    pub signs: SignMode,
    pub seed: u64,
}

impl SignalSpec {
    /// Flat signal with positive entries.
    pub fn flat(dim: usize, sparsity: usize, seed: u64) -> Self {
        Self { dim, sparsity, kind: SignalKind::Flat, signs: SignMode::Positive, seed }
    }

    /// Compressible signal with random signs.
    pub fn compressible(dim: usize, sparsity: usize, p: f64, seed: u64) -> Self {
        Self { dim, sparsity, kind: SignalKind::Compressible { p }, signs: SignMode::Random, seed }
    }

    pub fn with_signs(mut self, signs: SignMode) -> Self {
        self.signs = signs;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.sparsity > self.dim {
            return Err(invalid("sparsity exceeds signal dimension"));
        }
        if let SignalKind::Compressible { p } = self.kind {
            if !(p > 0.0 && p < 1.0) {
                return Err(invalid("compressibility p must lie in (0, 1)"));
            }
        }
        Ok(())
    }
}

/// Support chosen uniformly at random; values per [`SignalKind`].
pub fn gen_signal(spec: &SignalSpec) -> Result<SparseVector> {
    spec.validate()?;
    let mut rng = CounterRng::new(spec.seed);
    let picks = rng.sample_without_replacement(spec.dim, spec.sparsity);
    let mut values = vec![0.0; spec.dim];
    for (rank, &i) in picks.iter().enumerate() {
        let magnitude = match spec.kind {
            SignalKind::Flat => 1.0,
            SignalKind::Compressible { p } => math::powf((rank + 1) as f64, -1.0 / p),
        };
        let sign = match spec.signs {
            SignMode::Positive => 1.0,
            SignMode::Random => rng.sign(),
        };
        values[i] = sign * magnitude;
    }
    // Every selected magnitude is positive, so the support is exactly the picks.
    Ok(SparseVector::from_dense(values))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub dim: usize,
    pub target_norm: f64,
    pub seed: u64,
}

fn gaussian_direction(dim: usize, seed: u64) -> Vec<f64> {
    let mut rng = CounterRng::new(seed);
    (0..dim).map(|_| rng.normal()).collect()
}

/// Gaussian vector rescaled to exactly `target_norm`.
pub fn gen_noise(spec: &NoiseSpec) -> Result<Vec<f64>> {
    if !(spec.target_norm >= 0.0) || !spec.target_norm.is_finite() {
        return Err(invalid("noise norm must be finite and nonnegative"));
    }
    if spec.target_norm == 0.0 || spec.dim == 0 {
        return Ok(vec![0.0; spec.dim]);
    }
    let g = gaussian_direction(spec.dim, spec.seed);
    let c = spec.target_norm / math::norm2(&g);
    Ok(g.into_iter().map(|x| x * c).collect())
}

/// Noise vector together with the per-entry scale `σ` it was drawn with
/// (`e = σ·g`, `g` standard normal).
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledNoise {
    pub vector: Vec<f64>,
    pub sigma: f64,
}

/// Gaussian noise whose norm is `fraction · ‖u_clean‖₂`.
pub fn relative_noise(u_clean: &[f64], fraction: f64, seed: u64) -> Result<Vec<f64>> {
    relative_noise_scaled(u_clean, fraction, seed).map(|n| n.vector)
}

pub fn relative_noise_scaled(u_clean: &[f64], fraction: f64, seed: u64) -> Result<ScaledNoise> {
    if !(fraction >= 0.0) || !fraction.is_finite() {
        return Err(invalid("noise fraction must be finite and nonnegative"));
    }
    if fraction == 0.0 {
        return Ok(ScaledNoise { vector: vec![0.0; u_clean.len()], sigma: 0.0 });
    }
    let base = math::norm2(u_clean);
    if base == 0.0 {
        return Err(Error::ZeroVector);
    }
    let g = gaussian_direction(u_clean.len(), seed);
    let sigma = fraction * base / math::norm2(&g);
    Ok(ScaledNoise { vector: g.into_iter().map(|x| x * sigma).collect(), sigma })
}
