//! `pagerank` command line: `rank`, `verify` and `sweep`.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 power iteration hit
//! `--max-iters` (`rank`), 3 a verification trial failed (`verify`).

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::google::{GoogleOperator, PersonalizationVector, DEFAULT_DENSE_CAP};
use crate::io::{
    fmt_float, parse_edge_list, parse_vector, random_instance, write_rank_result, OutputFormat,
    RandomInstanceSpec,
};
use crate::solver::{power_method, SolverConfig};
use crate::spectral::{eigenvalues_dense, verify_theorem, TheoremTolerances};
use crate::transition::{build_transition, PatchPolicy, SparseTransition};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NOT_CONVERGED: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "pagerank",
    version,
    about = "PageRank by power iteration, with a dense check of how damping scales the spectrum",
    after_help = "Defaults for --alpha (0.85) and --tol (1e-10) are conventional choices, not derived values."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank the nodes of an edge-list graph.
    Rank(RankArgs),
    /// Check the eigenvalue relation between P and the Google matrix on random instances.
    Verify(VerifyArgs),
    /// Measure power-iteration convergence over a grid of damping factors.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DanglingArg {
    Uniform,
    Personalization,
}

impl From<DanglingArg> for PatchPolicy {
    fn from(d: DanglingArg) -> Self {
        match d {
            DanglingArg::Uniform => PatchPolicy::Uniform,
            DanglingArg::Personalization => PatchPolicy::Personalization,
        }
    }
}

fn parse_alpha(s: &str) -> std::result::Result<f64, String> {
    let a: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if a > 0.0 && a < 1.0 {
        Ok(a)
    } else {
        Err(format!(
            "damping factor must satisfy 0 < alpha < 1, got {a}"
        ))
    }
}

fn parse_positive(s: &str) -> std::result::Result<f64, String> {
    let t: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if t > 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err(format!("expected a positive value, got {t}"))
    }
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// How dangling nodes are completed.
    #[arg(long, value_enum, default_value_t = DanglingArg::Uniform)]
    pub dangling: DanglingArg,
    /// Personalization vector, one probability per line (defaults to uniform).
    #[arg(long)]
    pub v_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RankArgs {
    /// Edge-list file.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 0.85, value_parser = parse_alpha)]
    pub alpha: f64,
    /// 1-norm threshold on successive iterates.
    #[arg(long, default_value_t = 1e-10, value_parser = parse_positive)]
    pub tol: f64,
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_iters: u64,
    /// Output file (stdout when omitted).
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    #[command(flatten)]
    pub graph: GraphArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Dimension of the random instances.
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 0.85, value_parser = parse_alpha)]
    pub alpha: f64,
    /// Trial t uses seed + t.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Verify this graph instead of random instances (a single trial).
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    #[command(flatten)]
    pub graph: GraphArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Edge-list file; a seeded random dense instance is used when omitted.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Dimension of the random instance.
    #[arg(long, default_value_t = 50)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.5, value_parser = parse_alpha)]
    pub alpha_min: f64,
    #[arg(long, default_value_t = 0.95, value_parser = parse_alpha)]
    pub alpha_max: f64,
    /// Number of grid points, endpoints included.
    #[arg(long, default_value_t = 10)]
    pub steps: usize,
    #[arg(long, default_value_t = 1e-10, value_parser = parse_positive)]
    pub tol: f64,
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_iters: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    #[command(flatten)]
    pub graph: GraphArgs,
}

/// Parses `args` (program name first) and runs the subcommand, writing the
/// declared output to `out` unless `--output` is given and diagnostics to
/// `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_INPUT
                }
            };
        }
    };
    let outcome = match &cli.command {
        Command::Rank(a) => cmd_rank(a, out, err),
        Command::Verify(a) => cmd_verify(a, out, err),
        Command::Sweep(a) => cmd_sweep(a, out, err),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn read_graph(path: &Path, args: &GraphArgs) -> Result<(SparseTransition, PersonalizationVector)> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let g = parse_edge_list(&text)?;
    let p = build_transition(&g, args.dangling.into());
    let v = match &args.v_file {
        Some(vp) => read_personalization(vp, p.n())?,
        None => PersonalizationVector::uniform(p.n()),
    };
    Ok((p, v))
}

fn read_personalization(path: &Path, n: usize) -> Result<PersonalizationVector> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let v = parse_vector(&text)?;
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: v.len(),
        });
    }
    PersonalizationVector::new(v)
}

fn with_sink<F>(path: &Option<PathBuf>, out: &mut dyn Write, f: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    match path {
        Some(p) => {
            let file =
                fs::File::create(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            let mut w = io::BufWriter::new(file);
            f(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => f(out),
    }
}

pub fn cmd_rank(a: &RankArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let (p, v) = read_graph(&a.input, &a.graph)?;
    let op = GoogleOperator::new(p, a.alpha, v)?;
    let cfg = SolverConfig {
        tol: a.tol,
        max_iters: a.max_iters as usize,
        ..SolverConfig::default()
    };
    let r = power_method(&op, None, &cfg)?;
    with_sink(&a.output, out, |w| write_rank_result(&r, a.format, w))?;
    writeln!(
        err,
        "{} after {} iterations, residual {:e}",
        if r.converged {
            "converged"
        } else {
            "not converged"
        },
        r.iterations,
        r.final_residual
    )?;
    Ok(if r.converged {
        EXIT_OK
    } else {
        EXIT_NOT_CONVERGED
    })
}

#[derive(Debug, Serialize)]
struct TrialRow {
    trial: usize,
    seed: Option<u64>,
    n: usize,
    alpha: f64,
    structure_defect: f64,
    block_defect: f64,
    rank_one_defect: f64,
    eig_defect: Option<f64>,
    lambda2_a: Option<f64>,
    predicted_lambda2_a: Option<f64>,
    passed: bool,
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_float).unwrap_or_default()
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let tol = TheoremTolerances::default();
    let instances: Vec<(Option<u64>, SparseTransition, PersonalizationVector)> = match &a.input {
        Some(path) => {
            let (p, v) = read_graph(path, &a.graph)?;
            if p.n() > tol.dense_cap {
                return Err(Error::DenseCapExceeded {
                    n: p.n(),
                    cap: tol.dense_cap,
                });
            }
            vec![(None, p, v)]
        }
        None => {
            if a.n > tol.dense_cap {
                return Err(Error::DenseCapExceeded {
                    n: a.n,
                    cap: tol.dense_cap,
                });
            }
            if a.trials == 0 {
                return Err(Error::InvalidConfig("--trials must be at least 1".into()));
            }
            (0..a.trials)
                .map(|t| {
                    let seed = a.seed.wrapping_add(t as u64);
                    let (p, v) = random_instance(&RandomInstanceSpec::dense(a.n, seed))?;
                    Ok((Some(seed), p, v))
                })
                .collect::<Result<_>>()?
        }
    };

    let rows: Vec<TrialRow> = instances
        .par_iter()
        .enumerate()
        .map(|(trial, (seed, p, v))| {
            let r = verify_theorem(p, a.alpha, v, &tol)?;
            if let Some(e) = &r.eigen_error {
                log::warn!("trial {trial}: {e}");
            }
            Ok(TrialRow {
                trial,
                seed: *seed,
                n: r.n,
                alpha: a.alpha,
                structure_defect: r.structure_defect(),
                block_defect: r.block_defect_relative(),
                rank_one_defect: r.rank_one_defect.max(r.w1_defect),
                eig_defect: r.eig_multiset_defect,
                lambda2_a: r.lambda2_modulus_a,
                predicted_lambda2_a: r.lambda2_modulus_p.map(|m| a.alpha * m),
                passed: r.passed,
            })
        })
        .collect::<Result<_>>()?;

    let passed = rows.iter().filter(|r| r.passed).count();
    with_sink(&a.output, out, |w| {
        match a.format {
            OutputFormat::Json => {
                let doc = json!({ "trials": rows, "passed": passed, "total": rows.len() });
                serde_json::to_writer_pretty(&mut *w, &doc).map_err(io::Error::from)?;
                writeln!(w)?;
            }
            OutputFormat::Csv | OutputFormat::Tsv => {
                let sep = if a.format == OutputFormat::Csv {
                    ","
                } else {
                    "\t"
                };
                writeln!(
                    w,
                    "{}",
                    [
                        "trial",
                        "seed",
                        "n",
                        "alpha",
                        "structure_defect",
                        "block_defect",
                        "rank_one_defect",
                        "eig_defect",
                        "lambda2_a",
                        "predicted_lambda2_a",
                        "passed"
                    ]
                    .join(sep)
                )?;
                for r in &rows {
                    let fields = [
                        r.trial.to_string(),
                        r.seed.map(|s| s.to_string()).unwrap_or_default(),
                        r.n.to_string(),
                        fmt_float(r.alpha),
                        fmt_float(r.structure_defect),
                        fmt_float(r.block_defect),
                        fmt_float(r.rank_one_defect),
                        opt(r.eig_defect),
                        opt(r.lambda2_a),
                        opt(r.predicted_lambda2_a),
                        r.passed.to_string(),
                    ];
                    writeln!(w, "{}", fields.join(sep))?;
                }
            }
        }
        Ok(())
    })?;
    let worst_eig = rows.iter().filter_map(|r| r.eig_defect).fold(0.0, f64::max);
    writeln!(
        err,
        "{passed}/{} trials passed (worst eigenvalue match {worst_eig:e})",
        rows.len()
    )?;
    Ok(if passed == rows.len() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}

/// `steps` evenly spaced points from `min` to `max` inclusive.
pub fn alpha_grid(min: f64, max: f64, steps: usize) -> Result<Vec<f64>> {
    if steps == 0 {
        return Err(Error::InvalidConfig("empty alpha grid (--steps 0)".into()));
    }
    if min > max {
        return Err(Error::InvalidConfig(format!(
            "--alpha-min {min} exceeds --alpha-max {max}"
        )));
    }
    if steps == 1 {
        return Ok(vec![min]);
    }
    let h = (max - min) / (steps - 1) as f64;
    Ok((0..steps)
        .map(|k| {
            if k + 1 == steps {
                max
            } else {
                min + h * k as f64
            }
        })
        .collect())
}

#[derive(Debug, Serialize)]
struct SweepRow {
    alpha: f64,
    iterations: usize,
    estimated_rate: Option<f64>,
    predicted_rate: Option<f64>,
}

pub fn cmd_sweep(a: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let grid = alpha_grid(a.alpha_min, a.alpha_max, a.steps)?;
    let (p, v) = match &a.input {
        Some(path) => read_graph(path, &a.graph)?,
        None => {
            let (p, v) = random_instance(&RandomInstanceSpec::dense(a.n, a.seed))?;
            let v = match &a.graph.v_file {
                Some(vp) => read_personalization(vp, a.n)?,
                None => v,
            };
            (p, v)
        }
    };
    let n = p.n();

    let lambda2_p = if n <= DEFAULT_DENSE_CAP {
        // Dense P only depends on v through personalization-patched columns.
        let op = GoogleOperator::new(p.clone(), 0.5, v.clone())?;
        let spectrum = eigenvalues_dense(&op.dense_transition(DEFAULT_DENSE_CAP)?)?;
        spectrum
            .without_nearest(Complex64::new(1.0, 0.0))
            .moduli_desc()
            .first()
            .copied()
    } else {
        None
    };

    let cfg = SolverConfig {
        tol: a.tol,
        max_iters: a.max_iters as usize,
        ..SolverConfig::default()
    };
    let mut rows = Vec::with_capacity(grid.len());
    for &alpha in &grid {
        let op = GoogleOperator::new(p.clone(), alpha, v.clone())?;
        let r = power_method(&op, None, &cfg)?;
        if !r.converged {
            writeln!(
                err,
                "alpha {alpha}: not converged after {} iterations",
                r.iterations
            )?;
        }
        rows.push(SweepRow {
            alpha,
            iterations: r.iterations,
            estimated_rate: r.estimated_rate,
            predicted_rate: lambda2_p.map(|m| alpha * m),
        });
    }

    with_sink(&a.output, out, |w| {
        match a.format {
            OutputFormat::Json => {
                serde_json::to_writer_pretty(&mut *w, &rows).map_err(io::Error::from)?;
                writeln!(w)?;
            }
            OutputFormat::Csv | OutputFormat::Tsv => {
                let sep = if a.format == OutputFormat::Csv {
                    ","
                } else {
                    "\t"
                };
                writeln!(
                    w,
                    "{}",
                    ["alpha", "iterations", "estimated_rate", "predicted_rate"].join(sep)
                )?;
                for r in &rows {
                    writeln!(
                        w,
                        "{}",
                        [
                            fmt_float(r.alpha),
                            r.iterations.to_string(),
                            opt(r.estimated_rate),
                            opt(r.predicted_rate),
                        ]
                        .join(sep)
                    )?;
                }
            }
        }
        Ok(())
    })?;
    Ok(EXIT_OK)
}
