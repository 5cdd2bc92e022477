//! Command-line front end: run experiments from config documents and check
//! the reference table.
//!
//! Exit codes: 0 success, 1 usage, configuration or I/O error, 2 simulation failure,
//! 3 a verification check failed.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use geomgate::config::parse_config;
use geomgate::experiments::{
    manifest, run_experiment, ExperimentOutput, ExperimentSpec, RunOptions,
};
use geomgate::output::emit_outputs;
use geomgate::verify::{run_suite, Suite};
use geomgate::Error;

#[derive(Parser)]
#[command(
    name = "geomgate",
    version,
    about = "Pulse-level simulator for geometric transmon gates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a trajectory experiment and write its time series.
    Simulate(RunArgs),
    /// Run a parameter sweep and write one row per grid point.
    Sweep(RunArgs),
    /// Run a named check suite and print one line per check.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, env = "GEOMGATE_WORKERS", default_value_t = 0)]
        workers: usize,
    },
}

#[derive(Args)]
struct RunArgs {
    /// JSON config document or a previous run's manifest.
    #[arg(long)]
    config: PathBuf,
    /// Directory receiving `<id>.csv` and `<id>.manifest.json`.
    #[arg(long)]
    out: PathBuf,
    /// Worker threads; 0 uses every core.
    #[arg(long, env = "GEOMGATE_WORKERS", default_value_t = 0)]
    workers: usize,
    /// Integration step override in picoseconds.
    #[arg(long)]
    dt_ps: Option<f64>,
    /// Trajectory recording stride override.
    #[arg(long)]
    record_stride: Option<usize>,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Error(Error),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn load(path: &Path, args: &RunArgs) -> Result<ExperimentSpec, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::config(format!("cannot read config `{}`: {e}", path.display())))?;
    let mut spec = parse_config(&text)?;
    if let Some(dt) = args.dt_ps {
        spec.integrator.dt_ps = Some(dt);
    }
    if let Some(stride) = args.record_stride {
        spec.output.record_stride = Some(stride);
    }
    spec.validate()?;
    Ok(spec)
}

fn run(args: &RunArgs, want_sweep: bool) -> Result<(), Failure> {
    let spec = load(&args.config, args)?;
    let is_sweep = !spec.experiment.is_trajectory();
    if is_sweep != want_sweep {
        let (this, other) = if is_sweep {
            ("a sweep", "sweep")
        } else {
            ("a trajectory", "simulate")
        };
        return Err(Error::config(format!(
            "{} is {this} experiment; run it with `{other}`",
            spec.experiment
        ))
        .into());
    }
    let output = run_experiment(
        &spec,
        &RunOptions {
            workers: args.workers,
        },
    )?;
    let manifest = manifest(&spec, &output)?;
    let (csv, json) = emit_outputs(
        &args.out,
        spec.experiment.as_str(),
        &output.to_table(),
        &manifest,
    )?;
    let rows = match &output {
        ExperimentOutput::Sweep(s) => s.values.len(),
        ExperimentOutput::Trajectory(t) => t.trajectory.times.len(),
    };
    println!(
        "{}: {rows} rows -> {} ({})",
        spec.experiment,
        csv.display(),
        json.display()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors are configuration errors; help and version are not errors
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.command {
        Command::Simulate(args) => run(args, false),
        Command::Sweep(args) => run(args, true),
        Command::Verify { suite, workers } => {
            match run_suite(*suite, &RunOptions { workers: *workers }) {
                Ok(report) => {
                    println!("{report}");
                    if report.passed() {
                        Ok(())
                    } else {
                        Err(Failure::Checks)
                    }
                }
                Err(e) => Err(e.into()),
            }
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(3),
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Config(_) | Error::Io(_) | Error::Json(_) => 1,
                _ => 2,
            })
        }
    }
}
