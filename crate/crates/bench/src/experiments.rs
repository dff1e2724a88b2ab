//! Experiment drivers. Every trial is keyed by its own derived seed, trials
//! run on the rayon pool, and results are reduced in trial order so tables do
//! not depend on scheduling.

use std::time::Instant;

use rayon::prelude::*;
use sparse_recovery::convex::rw_error_recursion;
use sparse_recovery::ensembles::{
    gen_matrix, gen_noise, gen_signal, relative_noise_scaled, EnsembleSpec, Family, NoiseSpec, SignalSpec,
};
use sparse_recovery::kaczmarz::{rk_solve, RkReference};
use sparse_recovery::rip::{binomial, ric_exact_range, ric_monte_carlo, RicMode, RicReport, DEFAULT_ENUMERATION_CAP};
use sparse_recovery::rng::{derive_seed, tag, CounterRng};
use sparse_recovery::{DenseMatrix, SparseVector};

use crate::algo::{recover, Algorithm, NoiseInfo, Recovery};
use crate::error::{config_err, BenchResult};
use crate::output::{Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Noise {
    None,
    /// Fixed `‖e‖₂`.
    Norm(f64),
    /// `‖e‖₂ = fraction · ‖Φx‖₂`.
    Fraction(f64),
}

impl Noise {
    fn label(self) -> String {
        match self {
            Noise::None => "none".into(),
            Noise::Norm(v) => format!("norm:{v}"),
            Noise::Fraction(v) => format!("fraction:{v}"),
        }
    }

    fn is_zero(self) -> bool {
        matches!(self, Noise::None | Noise::Norm(0.0) | Noise::Fraction(0.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SignalChoice {
    Flat,
    Compressible { p: f64 },
}

impl SignalChoice {
    fn label(self) -> String {
        match self {
            SignalChoice::Flat => "flat".into(),
            SignalChoice::Compressible { p } => format!("compressible:{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub algo: Algorithm,
    pub d: usize,
    pub ms: Vec<usize>,
    pub ss: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub ensemble: Family,
    pub noise: Noise,
    pub signal: SignalChoice,
    /// Success when `‖x̂ − x‖₂ ≤ threshold·‖x‖₂` (absolute when `x = 0`).
    pub threshold: f64,
    /// Adds a wall-clock column; off by default so outputs stay reproducible.
    pub timing: bool,
}

impl Grid {
    pub fn new(algo: Algorithm, d: usize, ms: Vec<usize>, ss: Vec<usize>, trials: usize, seed: u64) -> Self {
        Self {
            algo,
            d,
            ms,
            ss,
            trials,
            seed,
            ensemble: Family::Gaussian,
            noise: Noise::None,
            signal: SignalChoice::Flat,
            threshold: 1e-5,
            timing: false,
        }
    }

    pub fn validate(&self) -> BenchResult<()> {
        if self.trials == 0 {
            return Err(config_err("trials must be at least 1"));
        }
        if self.d == 0 || self.ms.is_empty() || self.ss.is_empty() {
            return Err(config_err("d, m and s must be nonempty"));
        }
        if let Some(s) = self.ss.iter().find(|&&s| s > self.d) {
            return Err(config_err(format!("sparsity {s} exceeds d = {}", self.d)));
        }
        if self.ms.contains(&0) {
            return Err(config_err("m must be positive"));
        }
        if !(self.threshold >= 0.0) {
            return Err(config_err("threshold must be nonnegative"));
        }
        match self.noise {
            Noise::Norm(v) | Noise::Fraction(v) if !(v >= 0.0) || !v.is_finite() => {
                return Err(config_err("noise level must be finite and nonnegative"))
            }
            _ => {}
        }
        for &m in &self.ms {
            if m > self.d {
                eprintln!("warning: m = {m} exceeds d = {}", self.d);
            }
        }
        Ok(())
    }

    fn cells(&self) -> Vec<(usize, usize)> {
        self.ss.iter().flat_map(|&s| self.ms.iter().map(move |&m| (s, m))).collect()
    }

    fn key(&self, s: usize, m: usize) -> Vec<Cell> {
        vec![
            self.algo.name().into(),
            self.d.into(),
            m.into(),
            s.into(),
            self.trials.into(),
            self.seed.into(),
            self.ensemble.name().into(),
            self.signal.label().into(),
            self.noise.label().into(),
        ]
    }
}

const KEY_COLUMNS: [&str; 9] = ["algo", "d", "m", "s", "trials", "seed", "ensemble", "signal", "noise"];

fn header(extra: &[&str]) -> Vec<String> {
    KEY_COLUMNS.iter().chain(extra).map(|c| c.to_string()).collect()
}

/// Seed of trial `trial` in cell `(s, m)`.
pub fn trial_seed(master: u64, algo: Algorithm, s: usize, m: usize, trial: usize) -> u64 {
    derive_seed(master, &[tag(algo.name()), s as u64, m as u64, trial as u64])
}

/// A generated measurement problem.
#[derive(Debug, Clone)]
pub struct Instance {
    pub phi: DenseMatrix,
    pub x: SparseVector,
    pub u: Vec<f64>,
    pub noise: NoiseInfo,
}

fn draw_noise(noise: Noise, u_clean: &[f64], seed: u64) -> BenchResult<(Vec<f64>, NoiseInfo)> {
    let m = u_clean.len();
    Ok(match noise {
        Noise::None | Noise::Norm(0.0) | Noise::Fraction(0.0) => (vec![0.0; m], NoiseInfo::default()),
        Noise::Norm(v) => {
            let e = gen_noise(&NoiseSpec { dim: m, target_norm: v, seed })?;
            (e, NoiseInfo { norm: v, sigma: v / (m as f64).sqrt() })
        }
        Noise::Fraction(f) => {
            if u_clean.iter().all(|&v| v == 0.0) {
                (vec![0.0; m], NoiseInfo::default())
            } else {
                let n = relative_noise_scaled(u_clean, f, seed)?;
                let norm = n.vector.iter().map(|v| v * v).sum::<f64>().sqrt();
                (n.vector, NoiseInfo { norm, sigma: n.sigma })
            }
        }
    })
}

/// Builds the problem for one trial. `x` is `s`-sparse, or compressible over
/// all `d` coordinates when `full_support` is set.
pub fn make_instance(
    ensemble: Family,
    d: usize,
    m: usize,
    s: usize,
    signal: SignalChoice,
    noise: Noise,
    full_support: bool,
    seed: u64,
) -> BenchResult<Instance> {
    let phi = gen_matrix(&EnsembleSpec::new(ensemble, m, d, derive_seed(seed, &[tag("matrix")])))?;
    let k = if full_support { d } else { s };
    let sig_seed = derive_seed(seed, &[tag("signal")]);
    let spec = match signal {
        SignalChoice::Flat => SignalSpec::flat(d, k, sig_seed),
        SignalChoice::Compressible { p } => SignalSpec::compressible(d, k, p, sig_seed),
    };
    let x = gen_signal(&spec)?;
    let u_clean = phi.matvec(x.values())?;
    let (e, info) = draw_noise(noise, &u_clean, derive_seed(seed, &[tag("noise")]))?;
    let u = u_clean.iter().zip(&e).map(|(a, b)| a + b).collect();
    Ok(Instance { phi, x, u, noise: info })
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Outcome {
    error: f64,
    rel_error: f64,
    success: bool,
    iterations: usize,
    runtime_ms: f64,
}

fn outcome(inst: &Instance, rec: &Recovery, threshold: f64, runtime_ms: f64) -> Outcome {
    let error = rec.estimate.distance(inst.x.values());
    let xn = inst.x.norm2();
    let rel_error = if xn > 0.0 { error / xn } else { error };
    Outcome { error, rel_error, success: rel_error <= threshold, iterations: rec.iterations, runtime_ms }
}

/// Runs `job(cell index, trial)` for every cell and trial in parallel and
/// returns results grouped by cell in trial order.
fn run_jobs<T, F>(cells: usize, trials: usize, job: F) -> BenchResult<Vec<Vec<T>>>
where
    T: Send,
    F: Fn(usize, usize) -> BenchResult<T> + Sync,
{
    let flat: Vec<BenchResult<T>> =
        (0..cells * trials).into_par_iter().map(|k| job(k / trials, k % trials)).collect();
    let mut grouped: Vec<Vec<T>> = (0..cells).map(|_| Vec::with_capacity(trials)).collect();
    for (k, r) in flat.into_iter().enumerate() {
        grouped[k / trials].push(r?);
    }
    Ok(grouped)
}

fn timed<T>(f: impl FnOnce() -> BenchResult<T>) -> BenchResult<(T, f64)> {
    let t0 = Instant::now();
    let v = f()?;
    Ok((v, t0.elapsed().as_secs_f64() * 1e3))
}

fn mean(v: impl Iterator<Item = f64>) -> f64 {
    let (n, s) = v.fold((0usize, 0.0), |(n, s), x| (n + 1, s + x));
    if n == 0 {
        f64::NAN
    } else {
        s / n as f64
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    if v.is_empty() {
        return f64::NAN;
    }
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn grid_outcomes(grid: &Grid) -> BenchResult<(Vec<(usize, usize)>, Vec<Vec<Outcome>>)> {
    grid.validate()?;
    let cells = grid.cells();
    let results = run_jobs(cells.len(), grid.trials, |c, t| {
        let (s, m) = cells[c];
        let seed = trial_seed(grid.seed, grid.algo, s, m, t);
        let inst = make_instance(grid.ensemble, grid.d, m, s, grid.signal, grid.noise, false, seed)?;
        let (rec, ms) = timed(|| recover(grid.algo, &inst.phi, &inst.u, s, inst.noise))?;
        Ok(outcome(&inst, &rec, grid.threshold, ms))
    })?;
    Ok((cells, results))
}

/// Success counts per `(s, m)` cell.
pub fn run_phase_transition(grid: &Grid) -> BenchResult<Table> {
    let (cells, results) = grid_outcomes(grid)?;
    let mut cols = vec!["threshold", "successes", "success_rate", "mean_normalized_error", "mean_iterations"];
    if grid.timing {
        cols.push("mean_runtime_ms");
    }
    let mut table = Table::new(&header(&cols));
    for ((s, m), outs) in cells.into_iter().zip(results) {
        let successes = outs.iter().filter(|o| o.success).count();
        let mut row = grid.key(s, m);
        row.extend([
            grid.threshold.into(),
            successes.into(),
            (successes as f64 / grid.trials as f64).into(),
            mean(outs.iter().map(|o| o.rel_error)).into(),
            mean(outs.iter().map(|o| o.iterations as f64)).into(),
        ]);
        if grid.timing {
            row.push(mean(outs.iter().map(|o| o.runtime_ms)).into());
        }
        table.push(row);
    }
    Ok(table)
}

/// For each `m`, the largest tested `s` whose success rate reaches `level`
/// (empty when none does).
pub fn run_trend(grid: &Grid, level: f64) -> BenchResult<Table> {
    if !(0.0..=1.0).contains(&level) {
        return Err(config_err("level must lie in [0, 1]"));
    }
    let phase = run_phase_transition(grid)?;
    let mut table = Table::new(&["algo", "d", "m", "trials", "seed", "ensemble", "signal", "noise", "level", "max_s"]);
    for &m in &grid.ms {
        let mut best: Option<usize> = None;
        for i in 0..phase.rows.len() {
            let row_m = phase.get(i, "m").and_then(Cell::as_f64).unwrap_or(-1.0) as usize;
            let rate = phase.get(i, "success_rate").and_then(Cell::as_f64).unwrap_or(0.0);
            let s = phase.get(i, "s").and_then(Cell::as_f64).unwrap_or(0.0) as usize;
            if row_m == m && rate >= level {
                best = Some(best.map_or(s, |b| b.max(s)));
            }
        }
        table.push(vec![
            grid.algo.name().into(),
            grid.d.into(),
            m.into(),
            grid.trials.into(),
            grid.seed.into(),
            grid.ensemble.name().into(),
            grid.signal.label().into(),
            grid.noise.label().into(),
            level.into(),
            best.into(),
        ]);
    }
    Ok(table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseMode {
    /// `‖x̂ − x‖₂ / ‖e‖₂` for sparse signals with measurement noise.
    Measurement,
    /// `‖x̂ − x‖₂ / (‖x − x_s‖₁/√s)` for compressible signals over all coordinates.
    Signal,
    /// `‖x − x̂_last‖₂ / ‖x − x̂_1‖₂` for reweighted ℓ1 (below one means the
    /// reweighting helped).
    Reweighted,
}

impl std::str::FromStr for NoiseMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "measurement" => Ok(NoiseMode::Measurement),
            "signal" => Ok(NoiseMode::Signal),
            "reweighted" => Ok(NoiseMode::Reweighted),
            _ => Err(format!("unknown noise mode `{s}` (measurement, signal, reweighted)")),
        }
    }
}

fn tail_l1_over_root_s(x: &SparseVector, s: usize) -> f64 {
    let head = x.pruned(s);
    let tail: f64 = x.values().iter().zip(head.values()).map(|(a, b)| (a - b).abs()).sum();
    tail / (s as f64).sqrt()
}

/// Error ratios per cell.
pub fn run_noise_study(grid: &Grid, mode: NoiseMode) -> BenchResult<Table> {
    grid.validate()?;
    match mode {
        NoiseMode::Measurement | NoiseMode::Reweighted if grid.noise.is_zero() => {
            return Err(config_err("this study needs --noise-norm or --noise-fraction > 0"))
        }
        NoiseMode::Signal if !matches!(grid.signal, SignalChoice::Compressible { .. }) => {
            return Err(config_err("signal mode needs a compressible signal (--signal compressible --p P)"))
        }
        NoiseMode::Signal if grid.ss.contains(&0) => return Err(config_err("signal mode needs s >= 1")),
        NoiseMode::Reweighted if grid.algo != Algorithm::Rwl1 => {
            return Err(config_err("reweighted mode needs --algo rwl1"))
        }
        _ => {}
    }
    let cells = grid.cells();
    let results = run_jobs(cells.len(), grid.trials, |c, t| {
        let (s, m) = cells[c];
        let seed = trial_seed(grid.seed, grid.algo, s, m, t);
        let full = mode == NoiseMode::Signal;
        let inst = make_instance(grid.ensemble, grid.d, m, s, grid.signal, grid.noise, full, seed)?;
        let rec = recover(grid.algo, &inst.phi, &inst.u, s, inst.noise)?;
        let err = rec.estimate.distance(inst.x.values());
        let ratio = match mode {
            NoiseMode::Measurement => err / inst.noise.norm,
            NoiseMode::Signal => err / tail_l1_over_root_s(&inst.x, s),
            NoiseMode::Reweighted => err / rec.iterates[0].distance(inst.x.values()),
        };
        Ok((ratio, inst.noise.norm))
    })?;
    let mode_name = match mode {
        NoiseMode::Measurement => "measurement",
        NoiseMode::Signal => "signal",
        NoiseMode::Reweighted => "reweighted",
    };
    let mut table = Table::new(&header(&[
        "mode",
        "mean_noise_norm",
        "mean_ratio",
        "median_ratio",
        "max_ratio",
        "fraction_below_one",
    ]));
    for ((s, m), outs) in cells.into_iter().zip(results) {
        let ratios: Vec<f64> = outs.iter().map(|o| o.0).collect();
        let mut row = grid.key(s, m);
        row.extend([
            mode_name.into(),
            mean(outs.iter().map(|o| o.1)).into(),
            mean(ratios.iter().copied()).into(),
            median(ratios.clone()).into(),
            ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max).into(),
            (ratios.iter().filter(|&&r| r < 1.0).count() as f64 / ratios.len() as f64).into(),
        ]);
        table.push(row);
    }
    Ok(table)
}

/// Iteration counts per cell, with the number of successful runs exceeding
/// the algorithm's iteration cap.
pub fn run_iteration_study(grid: &Grid) -> BenchResult<(Table, usize)> {
    let (cells, results) = grid_outcomes(grid)?;
    let mut table = Table::new(&header(&[
        "successes",
        "mean_iterations",
        "max_iterations",
        "iteration_cap",
        "cap_violations",
    ]));
    let mut total = 0;
    for ((s, m), outs) in cells.into_iter().zip(results) {
        let cap = grid.algo.iteration_cap(s);
        let violations =
            cap.map_or(0, |c| outs.iter().filter(|o| o.success && o.iterations > c).count());
        total += violations;
        let mut row = grid.key(s, m);
        row.extend([
            outs.iter().filter(|o| o.success).count().into(),
            mean(outs.iter().map(|o| o.iterations as f64)).into(),
            outs.iter().map(|o| o.iterations).max().unwrap_or(0).into(),
            cap.into(),
            violations.into(),
        ]);
        table.push(row);
    }
    Ok((table, total))
}

#[derive(Debug, Clone, PartialEq)]
pub struct KaczmarzStudy {
    pub m: usize,
    pub n: usize,
    pub trials: usize,
    pub iters: usize,
    pub noise_fraction: f64,
    pub seed: u64,
    /// `A = I_m`, `x = 0`, `b = 1`: the noise is the all-ones vector.
    pub identity: bool,
    /// Log the error every `log_stride` steps instead of one final row.
    pub curve: bool,
    pub log_stride: usize,
}

impl KaczmarzStudy {
    pub fn new(m: usize, n: usize, trials: usize, iters: usize, noise_fraction: f64, seed: u64) -> Self {
        Self { m, n, trials, iters, noise_fraction, seed, identity: false, curve: false, log_stride: 100 }
    }
}

/// Randomized Kaczmarz on Gaussian systems, reporting the error against the
/// horizon `√R·γ`.
pub fn run_kaczmarz_study(spec: &KaczmarzStudy) -> BenchResult<Table> {
    let n = if spec.identity { spec.m } else { spec.n };
    if spec.trials == 0 || n == 0 {
        return Err(config_err("trials and n must be positive"));
    }
    if spec.m < n {
        return Err(config_err(format!("the system must be overdetermined (m = {} < n = {n})", spec.m)));
    }
    if !(spec.noise_fraction >= 0.0) {
        return Err(config_err("noise fraction must be nonnegative"));
    }
    let runs = run_jobs(1, spec.trials, |_, t| {
        let seed = derive_seed(spec.seed, &[tag("kaczmarz"), spec.m as u64, n as u64, t as u64]);
        let (a, x, b) = if spec.identity {
            (DenseMatrix::identity(spec.m), vec![0.0; n], vec![1.0; spec.m])
        } else {
            let spec_a = EnsembleSpec { normalize: false, ..EnsembleSpec::new(Family::Gaussian, spec.m, n, derive_seed(seed, &[tag("matrix")])) };
            let a = gen_matrix(&spec_a)?;
            let mut rng = CounterRng::derived(seed, &[tag("signal")]);
            let x: Vec<f64> = (0..n).map(|_| rng.normal()).collect();
            let clean = a.matvec(&x)?;
            let (e, _) = draw_noise(Noise::Fraction(spec.noise_fraction), &clean, derive_seed(seed, &[tag("noise")]))?;
            let b = clean.iter().zip(&e).map(|(p, q)| p + q).collect();
            (a, x, b)
        };
        let x0 = vec![0.0; n];
        let stride = if spec.curve { spec.log_stride } else { 0 };
        let run = rk_solve(&a, &b, &x0, spec.iters, derive_seed(seed, &[tag("rows")]), Some(RkReference { x: &x, log_stride: stride }))?;
        let x0_err = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        Ok((seed, run, x0_err))
    })?
    .remove(0);

    let mut table = if spec.curve {
        Table::new(&["m", "n", "trial", "seed", "noise_fraction", "k", "error", "threshold", "bound"])
    } else {
        Table::new(&[
            "m", "n", "trial", "seed", "noise_fraction", "iters", "final_error", "threshold", "bound", "R", "gamma",
            "within_threshold",
        ])
    };
    for (t, (seed, run, x0_err)) in runs.into_iter().enumerate() {
        let threshold = run.r.sqrt() * run.gamma;
        let bound = |k: usize| (1.0 - 1.0 / run.r).powf(k as f64 / 2.0) * x0_err + threshold;
        if spec.curve {
            for &(k, err) in &run.iterates_logged {
                table.push(vec![
                    spec.m.into(),
                    n.into(),
                    t.into(),
                    seed.into(),
                    spec.noise_fraction.into(),
                    k.into(),
                    err.into(),
                    threshold.into(),
                    bound(k).into(),
                ]);
            }
        } else {
            let err = run.iterates_logged.last().map_or(f64::NAN, |p| p.1);
            table.push(vec![
                spec.m.into(),
                n.into(),
                t.into(),
                seed.into(),
                spec.noise_fraction.into(),
                spec.iters.into(),
                err.into(),
                threshold.into(),
                bound(spec.iters).into(),
                run.r.into(),
                run.gamma.into(),
                (err <= threshold).into(),
            ]);
        }
    }
    Ok(table)
}

/// Iterations until the reweighted error recursion is within `tol` of its
/// limit, per `(ε, δ)`. Cells violating the recursion's hypothesis are marked
/// and left blank.
pub fn run_rw_bounds(mu: f64, eps: &[f64], delta: &[f64], tol: f64) -> BenchResult<Table> {
    if !(mu > 0.0) || !(tol > 0.0) {
        return Err(config_err("mu and tol must be positive"));
    }
    let mut table = Table::new(&[
        "mu", "eps", "delta", "hypothesis_holds", "rho", "alpha", "e1", "limit", "simple_bound", "iterations",
    ]);
    for &e in eps {
        for &dl in delta {
            let row: Vec<Cell> = match rw_error_recursion(mu, e, dl, tol) {
                Ok(b) => vec![
                    mu.into(),
                    e.into(),
                    dl.into(),
                    true.into(),
                    b.rho.into(),
                    b.alpha.into(),
                    b.e[0].into(),
                    b.limit.into(),
                    b.simple_bound().into(),
                    b.iters_to_converge.into(),
                ],
                Err(sparse_recovery::Error::Hypothesis(_)) => {
                    let mut r = vec![mu.into(), e.into(), dl.into(), false.into()];
                    r.resize(10, Cell::Empty);
                    r
                }
                Err(other) => return Err(other.into()),
            };
            table.push(row);
        }
    }
    Ok(table)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RicStudy {
    pub ensemble: Family,
    pub m: usize,
    pub d: usize,
    pub orders: Vec<usize>,
    pub seed: u64,
    /// Sampled supports; `None` enumerates all of them.
    pub mc_trials: Option<usize>,
}

const RIC_CHUNKS: u128 = 64;

/// Exact enumeration split into rank ranges scanned in parallel and merged.
pub fn ric_exact_parallel(phi: &DenseMatrix, r: usize) -> BenchResult<RicReport> {
    if r == 0 || r > phi.cols() {
        return Err(config_err("order must satisfy 1 <= r <= d"));
    }
    let total = binomial(phi.cols(), r);
    if total > DEFAULT_ENUMERATION_CAP {
        return Err(sparse_recovery::Error::EnumerationCap { count: total, cap: DEFAULT_ENUMERATION_CAP }.into());
    }
    let gram = phi.gram();
    let size = total.div_ceil(RIC_CHUNKS).max(1);
    let parts: Vec<_> = (0..total.div_ceil(size))
        .into_par_iter()
        .map(|c| ric_exact_range(&gram, r, c * size, size))
        .collect::<Result<_, _>>()?;
    let acc = parts.into_iter().reduce(|a, b| a.merge(b)).expect("at least one chunk");
    Ok(acc.into_report(RicMode::Exact, true))
}

pub fn run_ric(spec: &RicStudy) -> BenchResult<Table> {
    let phi = gen_matrix(&EnsembleSpec::new(spec.ensemble, spec.m, spec.d, spec.seed))?;
    let mut table = Table::new(&[
        "ensemble", "m", "d", "r", "seed", "mode", "delta", "lower", "upper", "linear_epsilon", "exhaustive", "witness",
    ]);
    for &r in &spec.orders {
        let rep = match spec.mc_trials {
            None => ric_exact_parallel(&phi, r)?,
            Some(t) => ric_monte_carlo(&phi, r, t, derive_seed(spec.seed, &[tag("ric"), r as u64]))?,
        };
        let mode = match rep.mode {
            RicMode::Exact => "exact".to_string(),
            RicMode::MonteCarlo { trials } => format!("monte_carlo:{trials}"),
        };
        let witness: Vec<String> = rep.witness.iter().map(|i| i.to_string()).collect();
        table.push(vec![
            spec.ensemble.name().into(),
            spec.m.into(),
            spec.d.into(),
            r.into(),
            spec.seed.into(),
            mode.into(),
            rep.delta.into(),
            rep.lower.into(),
            rep.upper.into(),
            rep.linear_epsilon().into(),
            rep.exhaustive.into(),
            witness.join(" ").into(),
        ]);
    }
    Ok(table)
}

/// Single-instance report for `recover`.
pub fn run_recover(
    algo: Algorithm,
    phi: &DenseMatrix,
    u: &[f64],
    s: usize,
    noise_bound: f64,
    truth: Option<&[f64]>,
) -> BenchResult<Table> {
    let sigma = noise_bound / (phi.rows() as f64).sqrt();
    let rec = recover(algo, phi, u, s, NoiseInfo { norm: noise_bound, sigma })?;
    let ax = phi.matvec(rec.estimate.values())?;
    let resid = ax.iter().zip(u).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
    let support: Vec<String> = rec.estimate.support().iter().map(|i| i.to_string()).collect();
    let values: Vec<String> = rec.estimate.support().iter().map(|i| format!("{:?}", rec.estimate.get(i))).collect();
    let mut table = Table::new(&[
        "algo", "m", "d", "s", "iterations", "residual_norm", "l1_norm", "error", "support", "values",
    ]);
    table.push(vec![
        algo.name().into(),
        phi.rows().into(),
        phi.cols().into(),
        s.into(),
        rec.iterations.into(),
        resid.into(),
        rec.estimate.norm1().into(),
        truth.map(|x| rec.estimate.distance(x)).into(),
        support.join(" ").into(),
        values.join(" ").into(),
    ]);
    Ok(table)
}
