//! Batch front end for the gap-probability library: every subcommand prints
//! one machine-readable table whose metadata echoes the parsed configuration,
//! so an artifact can be reproduced from its own header.
//!
//! Exit codes: 0 success, 1 numerical failure, 2 a `--method both`
//! consistency check exceeded `--check-tol`, 64 usage or domain error.

mod table;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use edgegap::fredholm::{
    e1_hard, e2_hard, e4_hard, f1, f2, f4, transition_sweep, DEFAULT_HARD_RESOLUTION,
    DEFAULT_SOFT_RESOLUTION,
};
use edgegap::hypergeom::{hard_gap_hyper, hyp0f1_equal};
use edgegap::montecarlo::{
    group_average, haar_sample, poissonized_lis_cdf, GroupKind, RngSeed, Shape,
};
use edgegap::partitions::AlphaParam;
use edgegap::{Beta, GapValue};
use nalgebra::{Complex, DMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;
use std::path::PathBuf;
use std::time::Instant;
use table::{Cell, Meta, RunConfig, Table};

#[derive(Parser)]
#[command(
    name = "edgegap",
    version,
    about = "Random-matrix edge gap probabilities: hard-edge laws by determinant or \
             hypergeometric series, soft-edge laws, the hard-to-soft transition, and \
             Monte Carlo cross-checks",
    after_help = "Row sweeps run in parallel; set RAYON_NUM_THREADS to bound the worker \
                  pool (results do not depend on it).\n\
                  Exit codes: 0 success, 1 numerical failure, 2 consistency-check \
                  failure, 64 usage error."
)]
struct Cli {
    /// Output format for the emitted table.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,

    /// Write the artifact to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Hard-edge gap probability: the chance that (0, s) holds no eigenvalue.
    HardGap {
        /// Symmetry index of the ensemble: 1, 2, or 4.
        #[arg(long, value_parser = parse_beta)]
        beta: Beta,
        /// Gap endpoint: a number or an inclusive range lo:hi:step.
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Integer index of the gap law (beta = 1 requires it even).
        #[arg(long)]
        a: u32,
        /// Evaluation route; `both` also emits the discrepancy column.
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        /// Quadrature resolution for the determinant route.
        #[arg(long, default_value_t = DEFAULT_HARD_RESOLUTION)]
        m: usize,
        /// With --method both: largest tolerated |determinant - series|.
        #[arg(long, default_value_t = 1e-6)]
        check_tol: f64,
    },
    /// Soft-edge gap probability F_beta(s) (the limit law CDF).
    SoftGap {
        /// Symmetry index of the ensemble: 1, 2, or 4.
        #[arg(long, value_parser = parse_beta)]
        beta: Beta,
        /// Evaluation point: a number or an inclusive range lo:hi:step.
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Quadrature resolution.
        #[arg(long, default_value_t = DEFAULT_SOFT_RESOLUTION)]
        m: usize,
    },
    /// Hard-edge gaps at the turning-point scaling next to their soft-edge limits.
    Transition {
        /// Symmetry index: 1 or 2.
        #[arg(long, value_parser = parse_beta)]
        beta: Beta,
        /// Soft-edge coordinate(s): a number or an inclusive range lo:hi:step.
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Comma-separated hard-edge indices, e.g. 8,32,128 (even for beta 1).
        #[arg(long)]
        a: String,
        /// Quadrature resolution.
        #[arg(long, default_value_t = DEFAULT_SOFT_RESOLUTION)]
        m: usize,
    },
    /// Poissonized longest-chain Monte Carlo next to its exact gap value.
    Lis {
        /// Point-process geometry.
        #[arg(long, value_enum)]
        shape: ShapeArg,
        /// Poisson intensity parameter (the square's expected point count).
        #[arg(long)]
        t: f64,
        /// Chain-length threshold: estimates Pr(chain length <= l).
        #[arg(long)]
        l: usize,
        /// Monte Carlo sample count.
        #[arg(long, default_value_t = 200_000)]
        trials: u64,
        /// RNG seed; the same seed reproduces every column bit-for-bit.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Haar-measure average of exp(sqrt(t) * trace statistic) next to its series value.
    GroupAverage {
        /// Compact group family: u (unitary), o (orthogonal), sp (symplectic).
        #[arg(long, value_enum)]
        group: GroupArg,
        /// Matrix size parameter n.
        #[arg(long)]
        n: usize,
        /// Weight parameter, 0 <= t <= 4.
        #[arg(long)]
        t: f64,
        /// Monte Carlo sample count.
        #[arg(long, default_value_t = 200_000)]
        trials: u64,
        /// RNG seed; the same seed reproduces every column bit-for-bit.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Draw one sample and report its worst defect against the defining
        /// group structure (unitarity / orthogonality / the symplectic form)
        /// as a metadata line.
        #[arg(long)]
        structure_check: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    fn name(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Det,
    Hyper,
    Both,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Det => "det",
            Method::Hyper => "hyper",
            Method::Both => "both",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Square,
    Antidiag,
    Diag,
}

impl ShapeArg {
    fn name(self) -> &'static str {
        match self {
            ShapeArg::Square => "square",
            ShapeArg::Antidiag => "antidiag",
            ShapeArg::Diag => "diag",
        }
    }

    fn to_shape(self) -> Shape {
        match self {
            ShapeArg::Square => Shape::Square,
            ShapeArg::Antidiag => Shape::AntiDiagonal,
            ShapeArg::Diag => Shape::Diagonal,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    U,
    O,
    Sp,
}

impl GroupArg {
    fn name(self) -> &'static str {
        match self {
            GroupArg::U => "u",
            GroupArg::O => "o",
            GroupArg::Sp => "sp",
        }
    }

    fn to_kind(self) -> GroupKind {
        match self {
            GroupArg::U => GroupKind::Unitary,
            GroupArg::O => GroupKind::Orthogonal,
            GroupArg::Sp => GroupKind::Symplectic,
        }
    }
}

fn parse_beta(v: &str) -> Result<Beta, String> {
    match v {
        "1" => Ok(Beta::One),
        "2" => Ok(Beta::Two),
        "4" => Ok(Beta::Four),
        _ => Err("beta must be 1, 2, or 4".into()),
    }
}

fn beta_number(beta: Beta) -> u64 {
    match beta {
        Beta::One => 1,
        Beta::Two => 2,
        Beta::Four => 4,
    }
}

/// A failed run, tagged with its process exit code.
enum Failure {
    /// Exit 64: arguments failed parsing, validation, or a domain precondition.
    Usage(String),
    /// Exit 1: the computation itself broke down.
    Numerical(String),
    /// Exit 2: a --method both discrepancy exceeded --check-tol.
    Consistency(String),
    /// Exit 1: the artifact could not be written.
    Io(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 64,
            Failure::Consistency(_) => 2,
            Failure::Numerical(_) | Failure::Io(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m)
            | Failure::Numerical(m)
            | Failure::Consistency(m)
            | Failure::Io(m) => m,
        }
    }

    fn from_lib(err: edgegap::Error) -> Self {
        match err {
            edgegap::Error::Domain(_) | edgegap::Error::SizeLimit { .. } => {
                Failure::Usage(err.to_string())
            }
            _ => Failure::Numerical(err.to_string()),
        }
    }
}

/// Everything a finished command hands back for emission. `deferred` carries
/// a consistency failure that must still be reported (exit 2) after the
/// table — the rows are evidence, so they are emitted either way.
struct Emission {
    config: RunConfig,
    table: Table,
    structure_residual: Option<f64>,
    deferred: Option<Failure>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    if let Err(failure) = run(cli) {
        eprintln!("error: {}", failure.message());
        std::process::exit(failure.code());
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let start = Instant::now();
    let format = cli.format;
    let emission = dispatch(cli.command, format)?;
    let meta = Meta {
        library_version: env!("CARGO_PKG_VERSION").to_string(),
        config: emission.config,
        wall_clock_secs: start.elapsed().as_secs_f64(),
        structure_residual: emission.structure_residual,
    };
    let rendered = match format {
        OutputFormat::Csv => table::render_csv(&meta, &emission.table),
        OutputFormat::Json => table::render_json(&meta, &emission.table),
    };
    match cli.out {
        Some(path) => std::fs::write(&path, rendered)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{rendered}"),
    }
    match emission.deferred {
        Some(failure) => Err(failure),
        None => Ok(()),
    }
}

fn dispatch(command: Cmd, format: OutputFormat) -> Result<Emission, Failure> {
    match command {
        Cmd::HardGap {
            beta,
            s,
            a,
            method,
            m,
            check_tol,
        } => hard_gap(beta, &s, a, method, m, check_tol, format),
        Cmd::SoftGap { beta, s, m } => soft_gap(beta, &s, m, format),
        Cmd::Transition { beta, s, a, m } => transition(beta, &s, &a, m, format),
        Cmd::Lis {
            shape,
            t,
            l,
            trials,
            seed,
        } => lis(shape, t, l, trials, seed, format),
        Cmd::GroupAverage {
            group,
            n,
            t,
            trials,
            seed,
            structure_check,
        } => group_avg(group, n, t, trials, seed, structure_check, format),
    }
}

#[allow(clippy::too_many_arguments)]
fn hard_gap(
    beta: Beta,
    s_spec: &str,
    a: u32,
    method: Method,
    m: usize,
    check_tol: f64,
    format: OutputFormat,
) -> Result<Emission, Failure> {
    let s_values = table::parse_reals(s_spec).map_err(Failure::Usage)?;
    if beta == Beta::One && a % 2 != 0 {
        return Err(Failure::Usage(format!(
            "beta 1 gaps are indexed by even a (both routes work with a/2); got a = {a}"
        )));
    }
    if beta == Beta::Four && a < 2 && method != Method::Hyper {
        return Err(Failure::Usage(format!(
            "the beta 4 determinant route starts at index a = 2 (got a = {a}); \
             use --method hyper"
        )));
    }

    let det = |s: f64| -> edgegap::Result<GapValue> {
        match beta {
            Beta::One => e1_hard(s, (a / 2) as f64, m),
            Beta::Two => e2_hard(s, a, m),
            Beta::Four => e4_hard(s, a - 1, m),
        }
    };
    let hyper = |s: f64| -> edgegap::Result<GapValue> {
        let index = if beta == Beta::One { a / 2 } else { a };
        hard_gap_hyper(beta, s, index)
    };

    let (columns, rows, worst): (Vec<&'static str>, Vec<Vec<Cell>>, f64) = match method {
        Method::Det | Method::Hyper => {
            let values: edgegap::Result<Vec<f64>> = s_values
                .par_iter()
                .map(|&s| {
                    let gap = if method == Method::Det { det(s) } else { hyper(s) };
                    gap.map(|g| g.value)
                })
                .collect();
            let values = values.map_err(Failure::from_lib)?;
            let rows = s_values
                .iter()
                .zip(values)
                .map(|(&s, v)| vec![Cell::Float(s), Cell::Float(v)])
                .collect();
            (vec!["s", "value"], rows, 0.0)
        }
        Method::Both => {
            let pairs: edgegap::Result<Vec<(f64, f64)>> = s_values
                .par_iter()
                .map(|&s| Ok((det(s)?.value, hyper(s)?.value)))
                .collect();
            let pairs = pairs.map_err(Failure::from_lib)?;
            let mut worst = 0.0f64;
            let rows = s_values
                .iter()
                .zip(pairs)
                .map(|(&s, (d, h))| {
                    let gap = (d - h).abs();
                    worst = worst.max(gap);
                    vec![
                        Cell::Float(s),
                        Cell::Float(d),
                        Cell::Float(h),
                        Cell::Float(gap),
                    ]
                })
                .collect();
            (
                vec!["s", "det_value", "hyper_value", "discrepancy"],
                rows,
                worst,
            )
        }
    };

    let deferred = (method == Method::Both && worst > check_tol).then(|| {
        Failure::Consistency(format!(
            "max |determinant - series| = {:.3e} exceeds --check-tol {check_tol:.1e}",
            worst
        ))
    });

    let mut parameters = serde_json::Map::new();
    parameters.insert("beta".into(), json!(beta_number(beta)));
    parameters.insert("s".into(), json!(s_spec));
    parameters.insert("a".into(), json!(a));
    parameters.insert("method".into(), json!(method.name()));
    parameters.insert("m".into(), json!(m));
    parameters.insert("check_tol".into(), json!(check_tol));
    Ok(Emission {
        config: RunConfig {
            command: "hard-gap".into(),
            parameters,
            output_format: format.name().into(),
            seed: None,
            resolution: Some(m),
            rel_tol: Some(check_tol),
        },
        table: Table { columns, rows },
        structure_residual: None,
        deferred,
    })
}

fn soft_gap(beta: Beta, s_spec: &str, m: usize, format: OutputFormat) -> Result<Emission, Failure> {
    let s_values = table::parse_reals(s_spec).map_err(Failure::Usage)?;
    let values: edgegap::Result<Vec<f64>> = s_values
        .par_iter()
        .map(|&s| {
            let gap = match beta {
                Beta::One => f1(s, m),
                Beta::Two => f2(s, m),
                Beta::Four => f4(s, m),
            };
            gap.map(|g| g.value)
        })
        .collect();
    let values = values.map_err(Failure::from_lib)?;
    let rows = s_values
        .iter()
        .zip(values)
        .map(|(&s, v)| vec![Cell::Float(s), Cell::Float(v)])
        .collect();

    let mut parameters = serde_json::Map::new();
    parameters.insert("beta".into(), json!(beta_number(beta)));
    parameters.insert("s".into(), json!(s_spec));
    parameters.insert("m".into(), json!(m));
    Ok(Emission {
        config: RunConfig {
            command: "soft-gap".into(),
            parameters,
            output_format: format.name().into(),
            seed: None,
            resolution: Some(m),
            rel_tol: None,
        },
        table: Table {
            columns: vec!["s", "value"],
            rows,
        },
        structure_residual: None,
        deferred: None,
    })
}

fn transition(
    beta: Beta,
    s_spec: &str,
    a_spec: &str,
    m: usize,
    format: OutputFormat,
) -> Result<Emission, Failure> {
    if beta == Beta::Four {
        return Err(Failure::Usage(
            "the transition table supports beta 1 and 2".into(),
        ));
    }
    let s_values = table::parse_reals(s_spec).map_err(Failure::Usage)?;
    let a_values = table::parse_u32_list(a_spec).map_err(Failure::Usage)?;
    let sweep = transition_sweep(beta, &s_values, &a_values, m).map_err(Failure::from_lib)?;
    let rows = sweep
        .iter()
        .map(|row| {
            vec![
                Cell::Int(row.a as u64),
                Cell::Float(row.s),
                Cell::Float(row.hard_value),
                Cell::Float(row.soft_value),
                Cell::Float(row.abs_error),
            ]
        })
        .collect();

    let mut parameters = serde_json::Map::new();
    parameters.insert("beta".into(), json!(beta_number(beta)));
    parameters.insert("s".into(), json!(s_spec));
    parameters.insert("a".into(), json!(a_spec));
    parameters.insert("m".into(), json!(m));
    Ok(Emission {
        config: RunConfig {
            command: "transition".into(),
            parameters,
            output_format: format.name().into(),
            seed: None,
            resolution: Some(m),
            rel_tol: None,
        },
        table: Table {
            columns: vec!["a", "s", "hard", "soft", "error"],
            rows,
        },
        structure_residual: None,
        deferred: None,
    })
}

fn lis(
    shape: ShapeArg,
    t: f64,
    l: usize,
    trials: u64,
    seed: u64,
    format: OutputFormat,
) -> Result<Emission, Failure> {
    let estimate = poissonized_lis_cdf(shape.to_shape(), t, l, trials, RngSeed::new(seed))
        .map_err(Failure::from_lib)?;
    // The chain-length CDF equals a hard-edge gap at argument 4t with the
    // same index; anti-diagonal chains are almost surely even, so an odd
    // threshold carries the same probability as the even one below it.
    let index = |v: usize| -> Result<u32, Failure> {
        u32::try_from(v).map_err(|_| Failure::Usage(format!("threshold {v} is out of range")))
    };
    let reference = match shape.to_shape() {
        Shape::Square => hard_gap_hyper(Beta::Two, 4.0 * t, index(l)?),
        Shape::AntiDiagonal => hard_gap_hyper(Beta::One, 4.0 * t, index(l / 2)?),
        Shape::Diagonal => hard_gap_hyper(Beta::Four, 4.0 * t, index(l)?),
    }
    .map_err(Failure::from_lib)?
    .value;
    let row = vec![
        Cell::Float(estimate.mean),
        Cell::Float(estimate.std_error),
        Cell::Float(reference),
        Cell::Float(estimate.sigmas_from(reference)),
    ];

    let mut parameters = serde_json::Map::new();
    parameters.insert("shape".into(), json!(shape.name()));
    parameters.insert("t".into(), json!(t));
    parameters.insert("l".into(), json!(l));
    parameters.insert("trials".into(), json!(trials));
    parameters.insert("seed".into(), json!(seed));
    Ok(Emission {
        config: RunConfig {
            command: "lis".into(),
            parameters,
            output_format: format.name().into(),
            seed: Some(seed),
            resolution: None,
            rel_tol: None,
        },
        table: Table {
            columns: vec!["mc_mean", "std_err", "exact_value", "sigmas"],
            rows: vec![row],
        },
        structure_residual: None,
        deferred: None,
    })
}

fn group_avg(
    group: GroupArg,
    n: usize,
    t: f64,
    trials: u64,
    seed: u64,
    structure_check: bool,
    format: OutputFormat,
) -> Result<Emission, Failure> {
    let kind = group.to_kind();
    let estimate =
        group_average(kind, n, t, trials, RngSeed::new(seed)).map_err(Failure::from_lib)?;
    let alpha = |a: f64| AlphaParam::new(a).map_err(Failure::from_lib);
    let series = match kind {
        GroupKind::Unitary => hyp0f1_equal(alpha(1.0)?, n as f64, n as u32, t, 1e-13),
        GroupKind::Symplectic => {
            hyp0f1_equal(alpha(0.5)?, 2.0 * n as f64, n as u32, t, 1e-13)
        }
        GroupKind::Orthogonal => {
            hyp0f1_equal(alpha(2.0)?, n as f64 / 2.0, n as u32, t / 4.0, 1e-13)
        }
    }
    .map_err(Failure::from_lib)?
    .value;
    let row = vec![
        Cell::Float(estimate.mean),
        Cell::Float(estimate.std_error),
        Cell::Float(series),
        Cell::Float(estimate.sigmas_from(series)),
    ];

    let structure_residual = structure_check.then(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sample = haar_sample(kind, n, &mut rng);
        structure_defect(kind, n, &sample)
    });

    let mut parameters = serde_json::Map::new();
    parameters.insert("group".into(), json!(group.name()));
    parameters.insert("n".into(), json!(n));
    parameters.insert("t".into(), json!(t));
    parameters.insert("trials".into(), json!(trials));
    parameters.insert("seed".into(), json!(seed));
    parameters.insert("structure_check".into(), json!(structure_check));
    Ok(Emission {
        config: RunConfig {
            command: "group-average".into(),
            parameters,
            output_format: format.name().into(),
            seed: Some(seed),
            resolution: None,
            rel_tol: None,
        },
        table: Table {
            columns: vec!["mc_mean", "std_err", "series_value", "sigmas"],
            rows: vec![row],
        },
        structure_residual,
        deferred: None,
    })
}

/// Largest entry of the defining-structure defect of one sampled matrix:
/// U*U - I for the unitary group, O^T O - I for the orthogonal group (over
/// the complexes, so stray imaginary parts would show), and S^T J S - J for
/// the symplectic group.
fn structure_defect(kind: GroupKind, n: usize, sample: &DMatrix<Complex<f64>>) -> f64 {
    let dim = sample.nrows();
    let defect = match kind {
        GroupKind::Unitary => sample.adjoint() * sample - DMatrix::identity(dim, dim),
        GroupKind::Orthogonal => sample.transpose() * sample - DMatrix::identity(dim, dim),
        GroupKind::Symplectic => {
            let j = DMatrix::from_fn(dim, dim, |r, c| {
                if c == r + n {
                    Complex::new(1.0, 0.0)
                } else if r == c + n {
                    Complex::new(-1.0, 0.0)
                } else {
                    Complex::new(0.0, 0.0)
                }
            });
            sample.transpose() * &j * sample - j
        }
    };
    defect.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
