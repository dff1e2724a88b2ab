use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sparse_recovery::ensembles::Family;
use sparse_recovery_bench::config::{FloatList, IntList, Resolver};
use sparse_recovery_bench::error::{config_err, BenchError, BenchResult};
use sparse_recovery_bench::experiments::{
    run_iteration_study, run_kaczmarz_study, run_noise_study, run_phase_transition, run_recover, run_ric,
    run_rw_bounds, run_trend, Grid, KaczmarzStudy, Noise, NoiseMode, RicStudy, SignalChoice,
};
use sparse_recovery_bench::io::{read_matrix_file, read_vector_file};
use sparse_recovery_bench::{Algorithm, Format, Table};

#[derive(Parser)]
#[command(name = "srbench", version, about = "Seeded sparse-recovery experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Success rate per (s, m) cell.
    Phase(Common),
    /// Largest s reaching a success level, per m.
    Trend {
        #[command(flatten)]
        common: Common,
        /// Required success rate.
        #[arg(long)]
        level: Option<f64>,
    },
    /// Error-to-noise ratios.
    Noise {
        #[command(flatten)]
        common: Common,
        /// measurement, signal or reweighted.
        #[arg(long)]
        mode: Option<NoiseMode>,
    },
    /// Iteration counts against each algorithm's cap.
    Iters(Common),
    /// Randomized Kaczmarz error against its noise horizon.
    Kaczmarz {
        #[command(flatten)]
        common: Common,
        /// Columns of the system (rows come from --m).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        iters: Option<usize>,
        /// Use the identity system with all-ones noise.
        #[arg(long)]
        identity: bool,
        /// Emit the error curve instead of final errors.
        #[arg(long)]
        curve: bool,
        #[arg(long)]
        log_stride: Option<usize>,
    },
    /// Reweighted ℓ1 error-recursion iteration counts.
    Rwbounds {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long)]
        eps: Option<FloatList>,
        #[arg(long)]
        delta: Option<FloatList>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Restricted isometry constants of one seeded matrix.
    Ric {
        #[command(flatten)]
        common: Common,
        /// Orders to evaluate.
        #[arg(long)]
        r: Option<IntList>,
        /// Sample this many supports instead of enumerating.
        #[arg(long)]
        mc_trials: Option<usize>,
    },
    /// Recover one instance read from CSV files.
    Recover {
        #[command(flatten)]
        common: Common,
        /// Matrix, one row per line.
        #[arg(long)]
        matrix: PathBuf,
        /// True signal; measurements are computed from it.
        #[arg(long, required_unless_present = "measurements")]
        signal: Option<PathBuf>,
        /// Measurement vector.
        #[arg(long, conflicts_with = "signal")]
        measurements: Option<PathBuf>,
        /// Noise bound handed to the solver.
        #[arg(long, default_value_t = 0.0)]
        noise_bound: f64,
    },
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long)]
    algo: Option<Algorithm>,
    #[arg(long)]
    d: Option<usize>,
    /// List or range, e.g. `32:256:32` or `64,128`.
    #[arg(long)]
    m: Option<IntList>,
    #[arg(long)]
    s: Option<IntList>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// gaussian, bernoulli or partial_dct.
    #[arg(long)]
    ensemble: Option<String>,
    /// Fixed noise norm.
    #[arg(long, conflicts_with = "noise_fraction")]
    noise_norm: Option<f64>,
    /// Noise norm relative to the clean measurements.
    #[arg(long)]
    noise_fraction: Option<f64>,
    /// Success threshold on the normalized error.
    #[arg(long)]
    threshold: Option<f64>,
    /// flat or compressible.
    #[arg(long)]
    signal_kind: Option<String>,
    /// Compressibility exponent for compressible signals.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<Format>,
    /// `key = value` file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Add wall-clock columns (makes output non-reproducible).
    #[arg(long)]
    timing: bool,
}

struct Resolved {
    cfg: Resolver,
    common: Common,
}

impl Resolved {
    fn new(common: Common) -> BenchResult<Self> {
        Ok(Self { cfg: Resolver::from_path(common.config.as_deref())?, common })
    }

    fn seed(&self) -> BenchResult<u64> {
        self.cfg.get(self.common.seed, "seed", 0)
    }

    fn ensemble(&self) -> BenchResult<Family> {
        let name = self.cfg.get(self.common.ensemble.clone(), "ensemble", "gaussian".into())?;
        Family::parse(&name).ok_or_else(|| config_err(format!("unknown ensemble `{name}`")))
    }

    fn noise(&self) -> BenchResult<Noise> {
        let norm = self.cfg.opt(self.common.noise_norm, "noise_norm")?;
        let frac = self.cfg.opt(self.common.noise_fraction, "noise_fraction")?;
        match (norm, frac) {
            (Some(_), Some(_)) => Err(config_err("give either noise_norm or noise_fraction, not both")),
            (Some(v), None) => Ok(Noise::Norm(v)),
            (None, Some(v)) => Ok(Noise::Fraction(v)),
            (None, None) => Ok(Noise::None),
        }
    }

    fn signal(&self) -> BenchResult<SignalChoice> {
        let kind = self.cfg.get(self.common.signal_kind.clone(), "signal_kind", "flat".into())?;
        match kind.as_str() {
            "flat" => Ok(SignalChoice::Flat),
            "compressible" => Ok(SignalChoice::Compressible { p: self.cfg.get(self.common.p, "p", 0.5)? }),
            other => Err(config_err(format!("unknown signal kind `{other}` (flat or compressible)"))),
        }
    }

    fn grid(&self) -> BenchResult<Grid> {
        let c = &self.common;
        let mut g = Grid::new(
            self.cfg.get(c.algo, "algo", Algorithm::Omp)?,
            self.cfg.get(c.d, "d", 256)?,
            self.cfg.get(c.m.clone(), "m", IntList(vec![32, 64, 96, 128]))?.0,
            self.cfg.get(c.s.clone(), "s", IntList(vec![1, 2, 4, 8, 16]))?.0,
            self.cfg.get(c.trials, "trials", 100)?,
            self.seed()?,
        );
        g.ensemble = self.ensemble()?;
        g.noise = self.noise()?;
        g.signal = self.signal()?;
        g.threshold = self.cfg.get(c.threshold, "threshold", 1e-5)?;
        g.timing = self.cfg.switch(c.timing, "timing")?;
        Ok(g)
    }

    fn emit(&self, table: &Table) -> BenchResult<()> {
        let format = self.cfg.get(self.common.format, "format", Format::Csv)?;
        match self.cfg.opt(self.common.out.clone(), "out")? {
            Some(path) => {
                let mut w = BufWriter::new(File::create(&path)?);
                table.write(format, &mut w)?;
                w.flush()?;
            }
            None => {
                let stdout = io::stdout();
                let mut lock = stdout.lock();
                table.write(format, &mut lock)?;
            }
        }
        Ok(())
    }
}

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::Phase(c) | Command::Iters(c) => c,
        Command::Trend { common, .. }
        | Command::Noise { common, .. }
        | Command::Kaczmarz { common, .. }
        | Command::Rwbounds { common, .. }
        | Command::Ric { common, .. }
        | Command::Recover { common, .. } => common,
    }
}

fn single(list: IntList, what: &str) -> BenchResult<usize> {
    match list.0.as_slice() {
        [v] => Ok(*v),
        _ => Err(config_err(format!("{what} takes a single value here"))),
    }
}

fn execute(cmd: Command) -> BenchResult<()> {
    let r = Resolved::new(common(&cmd).clone())?;
    let threads = r.cfg.get(r.common.threads, "threads", 0)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| config_err(format!("thread pool: {e}")))?;
    pool.install(|| run(cmd, &r))
}

fn run(cmd: Command, r: &Resolved) -> BenchResult<()> {
    let table = match cmd {
        Command::Phase(_) => run_phase_transition(&r.grid()?)?,
        Command::Trend { level, .. } => run_trend(&r.grid()?, r.cfg.get(level, "level", 0.99)?)?,
        Command::Noise { mode, .. } => run_noise_study(&r.grid()?, r.cfg.get(mode, "mode", NoiseMode::Measurement)?)?,
        Command::Iters(_) => {
            let (table, violations) = run_iteration_study(&r.grid()?)?;
            r.emit(&table)?;
            if violations > 0 {
                return Err(BenchError::Numerical(format!("{violations} successful runs exceeded the iteration cap")));
            }
            return Ok(());
        }
        Command::Kaczmarz { n, iters, identity, curve, log_stride, .. } => {
            let m = single(r.cfg.get(r.common.m.clone(), "m", IntList(vec![100]))?, "m")?;
            let noise_fraction = match r.noise()? {
                Noise::None => 0.0,
                Noise::Fraction(f) => f,
                Noise::Norm(_) => return Err(config_err("kaczmarz takes --noise-fraction")),
            };
            let mut spec = KaczmarzStudy::new(
                m,
                r.cfg.get(n, "n", 50)?,
                r.cfg.get(r.common.trials, "trials", 100)?,
                r.cfg.get(iters, "iters", 1000)?,
                noise_fraction,
                r.seed()?,
            );
            spec.identity = r.cfg.switch(identity, "identity")?;
            spec.curve = r.cfg.switch(curve, "curve")?;
            spec.log_stride = r.cfg.get(log_stride, "log_stride", 100)?;
            run_kaczmarz_study(&spec)?
        }
        Command::Rwbounds { mu, eps, delta, tol, .. } => run_rw_bounds(
            r.cfg.get(mu, "mu", 10.0)?,
            &r.cfg.get(eps, "eps", FloatList(vec![0.01, 0.1, 0.5, 1.0]))?.0,
            &r.cfg.get(delta, "delta", FloatList((0..8).map(|k| 0.05 * k as f64).collect()))?.0,
            r.cfg.get(tol, "tol", 1e-3)?,
        )?,
        Command::Ric { r: orders, mc_trials, .. } => run_ric(&RicStudy {
            ensemble: r.ensemble()?,
            m: single(r.cfg.get(r.common.m.clone(), "m", IntList(vec![8]))?, "m")?,
            d: r.cfg.get(r.common.d, "d", 16)?,
            orders: r.cfg.get(orders, "r", IntList(vec![1, 2, 3]))?.0,
            seed: r.seed()?,
            mc_trials: r.cfg.opt(mc_trials, "mc_trials")?,
        })?,
        Command::Recover { matrix, signal, measurements, noise_bound, .. } => {
            let phi = read_matrix_file(&matrix)?;
            let (u, truth) = match (signal, measurements) {
                (Some(p), _) => {
                    let x = read_vector_file(&p)?;
                    (phi.matvec(&x)?, Some(x))
                }
                (None, Some(p)) => (read_vector_file(&p)?, None),
                (None, None) => return Err(config_err("give --signal or --measurements")),
            };
            let algo = r.cfg.get(r.common.algo, "algo", Algorithm::Omp)?;
            let s = single(r.cfg.get(r.common.s.clone(), "s", IntList(vec![1]))?, "s")?;
            run_recover(algo, &phi, &u, s, noise_bound, truth.as_deref())?
        }
    };
    r.emit(&table)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("srbench: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
