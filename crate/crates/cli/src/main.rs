//! `curvecount`: batch frontend for lattice, orbit and moduli-space counts.
//!
//! Exit status is 0 on success, 2 for configuration and input errors, and 3
//! for numeric diagnostics such as an exceeded depth cap or a degenerate
//! sampler.

mod commands;
mod config;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::config::{Flags, RunConfig};

#[derive(Debug, Parser)]
#[command(
    name = "curvecount",
    version,
    about = "Count simple closed curves and multicurves on hyperbolic surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Simple closed geodesics and multicurves on a torus chart, as CSV `L,N_simple,N_multi`.
    Count,
    /// Lattice measure series lambda_t and its extrapolated limit.
    Measure,
    /// Mapping class orbit density mu_t against lambda_t.
    Orbit,
    /// Monte-Carlo average of the simple-curve count over moduli space.
    Unfold,
    /// Power-law fit of a CSV whose first column is L.
    Fit {
        /// CSV file with a header row.
        input: std::path::PathBuf,
        /// Count column; defaults to the second column.
        #[arg(long)]
        column: Option<String>,
    },
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Core(curvecount::Error),
    Io(std::io::Error),
}

impl From<curvecount::Error> for CliError {
    fn from(e: curvecount::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) => f.write_str(msg),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_numeric() => 3,
            CliError::Config(_) | CliError::Core(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(cli.flags)?;
    let output = with_threads(cfg.threads, || commands::dispatch(&cli.command, &cfg))??;
    match &cfg.out {
        Some(path) => std::fs::write(path, output)?,
        None => std::io::stdout().lock().write_all(output.as_bytes())?,
    }
    Ok(())
}

#[cfg(feature = "parallel")]
fn with_threads<R: Send>(
    threads: Option<usize>,
    f: impl FnOnce() -> R + Send,
) -> Result<R, CliError> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Config(format!("cannot start {n} threads: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

#[cfg(not(feature = "parallel"))]
fn with_threads<R: Send>(
    _threads: Option<usize>,
    f: impl FnOnce() -> R + Send,
) -> Result<R, CliError> {
    Ok(f())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
