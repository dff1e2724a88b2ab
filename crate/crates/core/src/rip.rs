//! Restricted isometry constants: exhaustive and sampled estimation, plus
//! numerical checks of the inequalities that follow from them.
//!
//! Constants use the quadratic-form convention: `δ_r` is the smallest `δ` with
//! `(1 − δ)‖x‖² ≤ ‖Φx‖² ≤ (1 + δ)‖x‖²` for every `r`-sparse `x`. Both one-sided
//! deviations are kept, since some analyses need the singular-value bracket
//! rather than the symmetric constant.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::linalg::{symmetric_eigenvalues, DenseMatrix, IndexSet};
use crate::math;
use crate::rng::CounterRng;

/// Largest number of supports [`ric_exact`] will enumerate by default.
pub const DEFAULT_ENUMERATION_CAP: u128 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RicMode {
    Exact,
    MonteCarlo { trials: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RicReport {
    pub r: usize,
    /// `max(0, upper, lower)`.
    pub delta: f64,
    /// `max_T λ_max(Φ_TᵀΦ_T) − 1` (may be negative).
    pub upper: f64,
    /// `1 − min_T λ_min(Φ_TᵀΦ_T)` (may be negative).
    pub lower: f64,
    pub mode: RicMode,
    /// Support attaining `delta` (first one in enumeration/sampling order).
    pub witness: IndexSet,
    /// True when every support of size `r` was examined.
    pub exhaustive: bool,
}

impl RicReport {
    /// Sampled reports only bound `δ_r` from below.
    pub fn is_lower_bound(&self) -> bool {
        !self.exhaustive
    }

    /// Smallest `ε` with `(1 − ε)‖x‖ ≤ ‖Φx‖ ≤ (1 + ε)‖x‖` on `r`-sparse vectors.
    pub fn linear_epsilon(&self) -> f64 {
        let up = math::sqrt((1.0 + self.upper).max(0.0)) - 1.0;
        let down = 1.0 - math::sqrt((1.0 - self.lower).max(0.0));
        up.max(down).max(0.0)
    }
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Lexicographic rank → combination of `k` elements from `0..n`.
pub fn unrank_combination(n: usize, k: usize, mut rank: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut next = 0;
    for slot in 0..k {
        let mut c = next;
        loop {
            let block = binomial(n - c - 1, k - slot - 1);
            if rank < block {
                break;
            }
            rank -= block;
            c += 1;
        }
        out.push(c);
        next = c + 1;
    }
    out
}

/// Advances `comb` to the next lexicographic combination; false at the end.
pub fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if comb[i] < n - k + i {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// `(λ_min, λ_max)` of the principal submatrix of `gram` on `support`.
pub fn support_eigen_extremes(gram: &DenseMatrix, support: &[usize]) -> Result<(f64, f64)> {
    let k = support.len();
    if k == 0 {
        return Err(invalid("support must be nonempty"));
    }
    if k == 1 {
        let v = gram.get(support[0], support[0]);
        return Ok((v, v));
    }
    let mut sub = vec![0.0; k * k];
    for (a, &i) in support.iter().enumerate() {
        for (b, &j) in support.iter().enumerate() {
            sub[a * k + b] = gram.get(i, j);
        }
    }
    let ev = symmetric_eigenvalues(&sub, k)?;
    Ok((ev[0], ev[k - 1]))
}

/// Running maximum over supports with a deterministic tie-break: the support
/// with the smaller sequence number wins.
#[derive(Debug, Clone, PartialEq)]
pub struct RicAccumulator {
    pub r: usize,
    pub upper: f64,
    pub lower: f64,
    best: Option<(f64, u128, Vec<usize>)>,
    pub examined: u128,
}

impl RicAccumulator {
    pub fn new(r: usize) -> Self {
        Self { r, upper: f64::NEG_INFINITY, lower: f64::NEG_INFINITY, best: None, examined: 0 }
    }

    pub fn observe(&mut self, seq: u128, support: &[usize], lambda_min: f64, lambda_max: f64) {
        let up = lambda_max - 1.0;
        let down = 1.0 - lambda_min;
        self.upper = self.upper.max(up);
        self.lower = self.lower.max(down);
        let score = up.max(down);
        let better = match &self.best {
            None => true,
            Some((b, s, _)) => score > *b || (score == *b && seq < *s),
        };
        if better {
            self.best = Some((score, seq, support.to_vec()));
        }
        self.examined += 1;
    }

    /// Order-independent combination of two partial results.
    pub fn merge(mut self, other: RicAccumulator) -> RicAccumulator {
        self.upper = self.upper.max(other.upper);
        self.lower = self.lower.max(other.lower);
        self.examined += other.examined;
        if let Some((score, seq, support)) = other.best {
            let better = match &self.best {
                None => true,
                Some((b, s, _)) => score > *b || (score == *b && seq < *s),
            };
            if better {
                self.best = Some((score, seq, support));
            }
        }
        self
    }

    pub fn into_report(self, mode: RicMode, exhaustive: bool) -> RicReport {
        let (delta, witness) = match self.best {
            Some((score, _, support)) => (score.max(0.0), IndexSet::from_unsorted(support)),
            None => (0.0, IndexSet::empty()),
        };
        RicReport {
            r: self.r,
            delta,
            upper: self.upper,
            lower: self.lower,
            mode,
            witness,
            exhaustive,
        }
    }
}

fn check_order(d: usize, r: usize) -> Result<()> {
    if r == 0 || r > d {
        return Err(invalid("RIC order must satisfy 1 <= r <= d"));
    }
    Ok(())
}

/// Scans `count` supports of size `r` starting at lexicographic rank `start`.
/// `gram` is `ΦᵀΦ`. Chunks produced this way can be merged in any order.
pub fn ric_exact_range(gram: &DenseMatrix, r: usize, start: u128, count: u128) -> Result<RicAccumulator> {
    let d = gram.cols();
    check_order(d, r)?;
    let total = binomial(d, r);
    let mut acc = RicAccumulator::new(r);
    if start >= total || count == 0 {
        return Ok(acc);
    }
    let end = start.saturating_add(count).min(total);
    let mut comb = unrank_combination(d, r, start);
    let mut rank = start;
    loop {
        let (lo, hi) = support_eigen_extremes(gram, &comb)?;
        acc.observe(rank, &comb, lo, hi);
        rank += 1;
        if rank >= end || !next_combination(&mut comb, d) {
            break;
        }
    }
    Ok(acc)
}

/// Exact `δ_r` by enumerating all supports of size `r`.
pub fn ric_exact(phi: &DenseMatrix, r: usize) -> Result<RicReport> {
    ric_exact_with_cap(phi, r, DEFAULT_ENUMERATION_CAP)
}

pub fn ric_exact_with_cap(phi: &DenseMatrix, r: usize, cap: u128) -> Result<RicReport> {
    check_order(phi.cols(), r)?;
    let count = binomial(phi.cols(), r);
    if count > cap {
        return Err(Error::EnumerationCap { count, cap });
    }
    let gram = phi.gram();
    Ok(ric_exact_range(&gram, r, 0, count)?.into_report(RicMode::Exact, true))
}

/// Support examined by Monte-Carlo trial `t`: column `t mod d` plus `r − 1`
/// others drawn from a stream keyed by `(seed, t)`.
pub fn monte_carlo_support(d: usize, r: usize, seed: u64, trial: u64) -> Vec<usize> {
    let anchor = (trial % d as u64) as usize;
    let mut rng = CounterRng::derived(seed, &[trial]);
    let mut support: Vec<usize> = rng
        .sample_without_replacement(d - 1, r - 1)
        .into_iter()
        .map(|i| if i >= anchor { i + 1 } else { i })
        .collect();
    support.push(anchor);
    support.sort_unstable();
    support
}

/// Lower bound on `δ_r` from `trials` sampled supports. When `trials` covers
/// every support the enumeration is exhaustive and the value is exact.
pub fn ric_monte_carlo(phi: &DenseMatrix, r: usize, trials: usize, seed: u64) -> Result<RicReport> {
    check_order(phi.cols(), r)?;
    if trials == 0 {
        return Err(invalid("Monte-Carlo RIC needs at least one trial"));
    }
    let mode = RicMode::MonteCarlo { trials };
    let gram = phi.gram();
    let total = binomial(phi.cols(), r);
    if (trials as u128) >= total {
        return Ok(ric_exact_range(&gram, r, 0, total)?.into_report(mode, true));
    }
    let mut acc = RicAccumulator::new(r);
    for t in 0..trials as u64 {
        let support = monte_carlo_support(phi.cols(), r, seed, t);
        let (lo, hi) = support_eigen_extremes(&gram, &support)?;
        acc.observe(u128::from(t), &support, lo, hi);
    }
    let exhaustive = r == 1 && trials >= phi.cols();
    Ok(acc.into_report(mode, exhaustive))
}

/// Outcome of one inequality evaluated over a battery of random cases.
#[derive(Debug, Clone, PartialEq)]
pub struct ConsequenceCheck {
    pub name: &'static str,
    pub passed: bool,
    /// Minimum over cases of `bound − observed` (negative means violated).
    pub worst_slack: f64,
    pub cases: usize,
}

impl ConsequenceCheck {
    fn new(name: &'static str) -> Self {
        Self { name, passed: true, worst_slack: f64::INFINITY, cases: 0 }
    }

    fn record(&mut self, observed: f64, bound: f64) {
        let slack = bound - observed;
        self.cases += 1;
        self.worst_slack = self.worst_slack.min(slack);
        // Round-off allowance: the inequalities are evaluated in floating point.
        if slack < -1e-10 * bound.abs().max(1.0) {
            self.passed = false;
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConsequenceReport {
    /// Exact constants `δ_1, …, δ_k` used by the checks.
    pub deltas: Vec<RicReport>,
    pub checks: Vec<ConsequenceCheck>,
}

impl ConsequenceReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&ConsequenceCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConsequenceConfig {
    /// Random cases per inequality.
    pub cases: usize,
    pub seed: u64,
    pub cap: u128,
}

impl Default for ConsequenceConfig {
    fn default() -> Self {
        Self { cases: 200, seed: 0, cap: DEFAULT_ENUMERATION_CAP }
    }
}

fn random_subset(rng: &mut CounterRng, d: usize, size: usize) -> Vec<usize> {
    let mut v = rng.sample_without_replacement(d, size);
    v.sort_unstable();
    v
}

fn gram_sub(gram: &DenseMatrix, rows: &[usize], cols: &[usize]) -> Vec<f64> {
    let mut out = Vec::with_capacity(rows.len() * cols.len());
    for &i in rows {
        for &j in cols {
            out.push(gram.get(i, j));
        }
    }
    out
}

/// Spectral norm of a `p × q` row-major matrix.
fn spectral_norm(b: &[f64], p: usize, q: usize) -> Result<f64> {
    if p == 0 || q == 0 {
        return Ok(0.0);
    }
    let mut btb = vec![0.0; q * q];
    for i in 0..p {
        for a in 0..q {
            for c in 0..q {
                btb[a * q + c] += b[i * q + a] * b[i * q + c];
            }
        }
    }
    let ev = symmetric_eigenvalues(&btb, q)?;
    Ok(math::sqrt(ev[q - 1].max(0.0)))
}

/// Orthonormal basis of the span of the given columns (modified Gram–Schmidt,
/// dependent columns dropped).
fn orthonormal_basis(columns: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(columns.len());
    for mut c in columns {
        let scale = math::norm2(&c);
        for q in &basis {
            let proj = math::dot(q, &c);
            math::axpy(-proj, q, &mut c);
        }
        let n = math::norm2(&c);
        if n > 1e-12 * scale.max(f64::MIN_POSITIVE) {
            c.iter_mut().for_each(|x| *x /= n);
            basis.push(c);
        }
    }
    basis
}

/// Evaluates, on random instances, the standard consequences of the restricted
/// isometry property for sparsity `s`, using exact constants.
///
/// Checks reported (by name):
/// - `local_approximation`: `‖(ΦᵀΦx)|_I − x|_I‖ ≤ 2.03 ε ‖x‖` for `s`-sparse `x`, `|I| ≤ s`;
/// - `spectral_norm`: `‖(Φᵀz)|_I‖ ≤ (1 + ε)‖z‖` for `|I| ≤ 2s`;
/// - `almost_orthogonality`: `‖P_I P_J‖ ≤ 2.2 ε` for disjoint `I, J`, `|I ∪ J| ≤ 2s`;
/// - `approximate_orthogonality`: `‖Φ_IᵀΦ_J‖ ≤ δ_{2s}` for the same pairs;
/// - `order_comparison`: `δ_{cr} ≤ c·δ_{2r}` on every pair of computed orders;
/// - `energy_bound`: `‖Φx‖ ≤ √(1 + δ_r)(‖x‖ + ‖x‖₁/√r)` for dense `x`, every computed `r`.
///
/// Here `ε` is the linear-form constant of order `2s`.
pub fn check_ric_consequences(phi: &DenseMatrix, s: usize, cfg: &ConsequenceConfig) -> Result<ConsequenceReport> {
    let d = phi.cols();
    if s == 0 || 2 * s > d {
        return Err(invalid("consequence checks need 1 <= s and 2s <= d"));
    }
    let gram = phi.gram();
    let max_order = (4 * s).min(d);
    let mut deltas = Vec::new();
    for r in 1..=max_order {
        let count = binomial(d, r);
        if count > cfg.cap {
            if r <= 2 * s {
                return Err(Error::EnumerationCap { count, cap: cfg.cap });
            }
            break;
        }
        deltas.push(ric_exact_range(&gram, r, 0, count)?.into_report(RicMode::Exact, true));
    }
    let order = |r: usize| &deltas[r - 1];
    let eps = order(2 * s).linear_epsilon();
    let delta_2s = order(2 * s).delta;
    let mut rng = CounterRng::derived(cfg.seed, &[0x5249_4321]);

    let mut local = ConsequenceCheck::new("local_approximation");
    let mut spectral = ConsequenceCheck::new("spectral_norm");
    let mut almost = ConsequenceCheck::new("almost_orthogonality");
    let mut approx = ConsequenceCheck::new("approximate_orthogonality");
    let mut energy = ConsequenceCheck::new("energy_bound");
    let mut corollary = ConsequenceCheck::new("order_comparison");

    for _ in 0..cfg.cases {
        // s-sparse x and |I| <= s.
        let k = 1 + rng.below(s as u64) as usize;
        let supp = random_subset(&mut rng, d, k);
        let mut x = vec![0.0; d];
        for &i in &supp {
            x[i] = rng.normal();
        }
        let y = phi.adjoint_matvec(&phi.matvec(&x)?)?;
        let isize = 1 + rng.below(s as u64) as usize;
        let iset = random_subset(&mut rng, d, isize);
        let dev = math::sqrt(iset.iter().map(|&i| (y[i] - x[i]) * (y[i] - x[i])).sum());
        local.record(dev, 2.03 * eps * math::norm2(&x));

        // Any z, |I| <= 2s.
        let z: Vec<f64> = (0..phi.rows()).map(|_| rng.normal()).collect();
        let ptz = phi.adjoint_matvec(&z)?;
        let isize = 1 + rng.below(2 * s as u64) as usize;
        let iset = random_subset(&mut rng, d, isize);
        let lhs = math::sqrt(iset.iter().map(|&i| ptz[i] * ptz[i]).sum());
        spectral.record(lhs, (1.0 + eps) * math::norm2(&z));

        // Disjoint I, J with |I ∪ J| <= 2s.
        let total = 2 + rng.below(2 * s as u64 - 1) as usize;
        let union = rng.sample_without_replacement(d, total);
        let split = 1 + rng.below(total as u64 - 1) as usize;
        let mut i_set = union[..split].to_vec();
        let mut j_set = union[split..].to_vec();
        i_set.sort_unstable();
        j_set.sort_unstable();
        let cross = gram_sub(&gram, &i_set, &j_set);
        approx.record(spectral_norm(&cross, i_set.len(), j_set.len())?, delta_2s);
        let qi = orthonormal_basis(i_set.iter().map(|&c| phi.column(c)).collect());
        let qj = orthonormal_basis(j_set.iter().map(|&c| phi.column(c)).collect());
        let mut b = Vec::with_capacity(qi.len() * qj.len());
        for a in &qi {
            for c in &qj {
                b.push(math::dot(a, c));
            }
        }
        almost.record(spectral_norm(&b, qi.len(), qj.len())?, 2.2 * eps);

        // Dense x against every computed order.
        let xd: Vec<f64> = (0..d).map(|_| rng.normal()).collect();
        let lhs = math::norm2(&phi.matvec(&xd)?);
        for rep in &deltas {
            let bound = math::sqrt(1.0 + rep.delta)
                * (math::norm2(&xd) + math::norm1(&xd) / math::sqrt(rep.r as f64));
            energy.record(lhs, bound);
        }
    }

    for r in 1..=deltas.len() {
        if 2 * r > deltas.len() {
            break;
        }
        for c in 1..=deltas.len() / r {
            corollary.record(order(c * r).delta, c as f64 * order(2 * r).delta);
        }
    }

    Ok(ConsequenceReport { deltas, checks: vec![local, spectral, almost, approx, corollary, energy] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::dct_matrix;

    #[test]
    fn binomial_and_unrank() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(5, 6), 0);
        let mut comb = unrank_combination(5, 3, 0);
        let mut seen = 0u128;
        loop {
            assert_eq!(unrank_combination(5, 3, seen), comb);
            seen += 1;
            if !next_combination(&mut comb, 5) {
                break;
            }
        }
        assert_eq!(seen, binomial(5, 3));
    }

    #[test]
    fn orthogonal_has_zero_constant() {
        let phi = dct_matrix(8);
        for r in 1..=8 {
            assert!(ric_exact(&phi, r).unwrap().delta < 1e-12);
        }
    }

    #[test]
    fn sixty_degree_pair() {
        let s3 = math::sqrt(3.0) / 2.0;
        let phi = DenseMatrix::from_columns(&[&[1.0, 0.0], &[0.5, s3]]).unwrap();
        let rep = ric_exact(&phi, 2).unwrap();
        assert!((rep.delta - 0.5).abs() < 1e-12);
        assert_eq!(rep.witness.as_slice(), &[0, 1]);
    }

    #[test]
    fn order_one_is_column_norm_deviation() {
        let phi = DenseMatrix::from_columns(&[&[1.0, 0.0], &[0.0, 1.2], &[0.3, 0.4]]).unwrap();
        let rep = ric_exact(&phi, 1).unwrap();
        // |‖φ_i‖² − 1| = 0, 0.44, 0.75
        assert!((rep.delta - 0.75).abs() < 1e-12);
        assert_eq!(rep.witness.as_slice(), &[2]);
    }

    #[test]
    fn cap_is_enforced() {
        let phi = DenseMatrix::identity(30);
        let err = ric_exact_with_cap(&phi, 15, 1000).unwrap_err();
        assert!(matches!(err, Error::EnumerationCap { .. }));
    }

    #[test]
    fn chunked_scan_matches_whole() {
        let phi = crate::ensembles::gen_matrix(&crate::ensembles::EnsembleSpec::new(
            crate::ensembles::Family::Gaussian,
            5,
            9,
            3,
        ))
        .unwrap();
        let gram = phi.gram();
        let total = binomial(9, 3);
        let whole = ric_exact_range(&gram, 3, 0, total).unwrap();
        let mut parts: Vec<RicAccumulator> =
            (0..total).step_by(7).map(|s| ric_exact_range(&gram, 3, s, 7).unwrap()).collect();
        parts.reverse();
        let merged = parts.into_iter().reduce(RicAccumulator::merge).unwrap();
        assert_eq!(
            merged.into_report(RicMode::Exact, true),
            whole.into_report(RicMode::Exact, true)
        );
    }
}
