//! The `qdiscord` command-line front end.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 invariant failure,
//! 3 internal error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

mod commands;
mod format;
mod spec;

pub use commands::{
    compute, landscape_rows, sweep_rows, verify, write_landscape_csv, write_sweep_csv,
    ComputeReport, LandscapeRow, OracleReport, SuiteSummary, SweepRow, VerifyFailure,
    VerifyOptions, VerifyReport, LANDSCAPE_HEADER, SWEEP_HEADER,
};
pub use format::{fmt_g, fmt_g_digits};
pub use spec::{EnsembleSpec, PurePairSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Largest accepted `--steps` / `--delta-steps`.
pub const MAX_STEPS: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Invariant(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Invariant(_) => EXIT_INVARIANT,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Internal(format!("i/o: {e}"))
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "qdiscord",
    version,
    about = "Quantum and geometric discord of two-state qubit ensembles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Every measure for a single ensemble.
    Compute(ComputeArgs),
    /// D and D_G of the symmetric pure pair over a θ range, as CSV.
    Sweep(SweepArgs),
    /// Unoptimized discord over θ and the axis angle δ, as CSV.
    Landscape(LandscapeArgs),
    /// Randomized invariant suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Write to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ComputeArgs {
    /// Ensemble document, inline JSON or a file path.
    #[arg(long, value_name = "PATH|JSON", conflicts_with = "theta")]
    spec: Option<String>,
    /// Symmetric pure pair angle, instead of --spec.
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    /// Prior of the first state of the pure pair.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    lambda0: f64,
    /// Angles are in degrees.
    #[arg(long)]
    degrees: bool,
    /// Cross-check with the sphere oracle on a grid of this many points.
    #[arg(long, value_name = "N")]
    verify: Option<usize>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct RangeArgs {
    #[arg(long, allow_negative_numbers = true)]
    start: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    stop: Option<f64>,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    lambda0: f64,
    #[arg(long)]
    degrees: bool,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Number of θ values, endpoints included.
    #[arg(long, default_value_t = 91)]
    steps: usize,
    #[command(flatten)]
    range: RangeArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct LandscapeArgs {
    /// A single θ, instead of the --start/--stop/--steps range.
    #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["start", "stop", "steps"])]
    theta: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    #[command(flatten)]
    range: RangeArgs,
    /// Number of δ values, endpoints included.
    #[arg(long, default_value_t = 361)]
    delta_steps: usize,
    #[arg(long, allow_negative_numbers = true)]
    delta_start: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    delta_stop: Option<f64>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    /// Oracle grid size.
    #[arg(long, default_value_t = 10_000)]
    grid: usize,
    /// Multiplier applied to every suite tolerance.
    #[arg(long, default_value_t = 1.0)]
    tol: f64,
    #[command(flatten)]
    out: OutputArgs,
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qdiscord: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Compute(a) => run_compute(a),
        Command::Sweep(a) => run_sweep(a),
        Command::Landscape(a) => run_landscape(a),
        Command::Verify(a) => run_verify(a),
    }
}

fn open_output(out: &OutputArgs) -> Result<Box<dyn Write>, CliError> {
    Ok(match &out.output {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| {
            CliError::Internal(format!("cannot create {}: {e}", path.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn angle(x: f64, degrees: bool) -> f64 {
    if degrees {
        x.to_radians()
    } else {
        x
    }
}

fn check_steps(name: &str, steps: usize) -> Result<usize, CliError> {
    if (2..=MAX_STEPS).contains(&steps) {
        Ok(steps)
    } else {
        Err(CliError::Usage(format!(
            "{name} must lie in 2..={MAX_STEPS}, got {steps}"
        )))
    }
}

fn check_finite(name: &str, x: f64) -> Result<f64, CliError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::Usage(format!("{name} must be finite, got {x}")))
    }
}

/// Reads `--spec` as inline JSON when it looks like an object, else as a path.
fn load_spec(arg: &str) -> Result<EnsembleSpec, CliError> {
    if arg.trim_start().starts_with('{') {
        return EnsembleSpec::parse(arg);
    }
    let text = std::fs::read_to_string(arg)
        .map_err(|e| CliError::Usage(format!("cannot read spec file {arg}: {e}")))?;
    EnsembleSpec::parse(&text)
}

fn run_compute(a: ComputeArgs) -> Result<i32, CliError> {
    let spec = match (&a.spec, a.theta) {
        (Some(s), _) => load_spec(s)?.in_radians(a.degrees),
        (None, Some(t)) => EnsembleSpec::pure_pair(angle(t, a.degrees), a.lambda0),
        (None, None) => return Err(CliError::Usage("compute needs --spec or --theta".into())),
    };
    if let Some(n) = a.verify {
        if n < 2 {
            return Err(CliError::Usage(format!(
                "--verify needs at least 2 grid points, got {n}"
            )));
        }
    }
    let report = compute(&spec, a.verify)?;
    let mut w = open_output(&a.out)?;
    serde_json::to_writer_pretty(&mut w, &report)
        .map_err(|e| CliError::Internal(format!("serialization: {e}")))?;
    writeln!(w)?;
    w.flush()?;
    Ok(EXIT_OK)
}

fn theta_range(r: &RangeArgs) -> Result<(f64, f64), CliError> {
    let start = r.start.map_or(0.0, |x| angle(x, r.degrees));
    let stop = r
        .stop
        .map_or(std::f64::consts::FRAC_PI_2, |x| angle(x, r.degrees));
    let (start, stop) = (
        check_finite("--start", start)?,
        check_finite("--stop", stop)?,
    );
    Ok((start, stop))
}

fn run_sweep(a: SweepArgs) -> Result<i32, CliError> {
    let steps = check_steps("--steps", a.steps)?;
    let (start, stop) = theta_range(&a.range)?;
    let mut w = open_output(&a.out)?;
    write_sweep_csv(&mut w, start, stop, steps, a.range.lambda0)?;
    w.flush()?;
    Ok(EXIT_OK)
}

fn run_landscape(a: LandscapeArgs) -> Result<i32, CliError> {
    let thetas: Vec<f64> = match a.theta {
        Some(t) => vec![check_finite("--theta", angle(t, a.range.degrees))?],
        None => {
            let steps = check_steps("--steps", a.steps.unwrap_or(19))?;
            let (start, stop) = theta_range(&a.range)?;
            commands::linspace(start, stop, steps)
        }
    };
    let delta_steps = check_steps("--delta-steps", a.delta_steps)?;
    let d0 = check_finite(
        "--delta-start",
        a.delta_start.map_or(0.0, |x| angle(x, a.range.degrees)),
    )?;
    let d1 = check_finite(
        "--delta-stop",
        a.delta_stop
            .map_or(std::f64::consts::TAU, |x| angle(x, a.range.degrees)),
    )?;
    let deltas = commands::linspace(d0, d1, delta_steps);
    let mut w = open_output(&a.out)?;
    write_landscape_csv(&mut w, &thetas, &deltas, a.range.lambda0)?;
    w.flush()?;
    Ok(EXIT_OK)
}

fn run_verify(a: VerifyArgs) -> Result<i32, CliError> {
    if a.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    if a.grid < 2 {
        return Err(CliError::Usage(format!(
            "--grid needs at least 2 points, got {}",
            a.grid
        )));
    }
    if !(a.tol.is_finite() && a.tol >= 0.0) {
        return Err(CliError::Usage(format!(
            "--tol must be a finite non-negative multiplier, got {}",
            a.tol
        )));
    }
    let report = verify(&VerifyOptions {
        seed: a.seed,
        trials: a.trials,
        grid: a.grid,
        tol_scale: a.tol,
    })?;
    let mut w = open_output(&a.out)?;
    serde_json::to_writer_pretty(&mut w, &report)
        .map_err(|e| CliError::Internal(format!("serialization: {e}")))?;
    writeln!(w)?;
    w.flush()?;
    Ok(if report.passed {
        EXIT_OK
    } else {
        EXIT_INVARIANT
    })
}
