//! Command-line interface. [`run`] parses arguments and returns the process
//! exit code: 0 on success, 1 for invalid arguments, configuration or input
//! validation errors, 2 for runtime and data errors.

mod consensus;
mod evaluate;
mod simulate;
mod stats;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::error::{Error, Result};

pub use consensus::ConsensusArgs;
pub use evaluate::EvaluateArgs;
pub use simulate::{draw_rng, SimulateArgs, SimulateConfig, WORKERS_ENV};
pub use stats::{Alternative, StatsArgs};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "cavity-sim",
    version,
    about = "Synthetic resection cavities and segmentation agreement statistics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate resection cavities on images with parcellations.
    Simulate(Box<SimulateArgs>),
    /// Dice between label files paired by name across two directories.
    Evaluate(EvaluateArgs),
    /// Shape-based averaging consensus of binary masks.
    Consensus(ConsensusArgs),
    /// One-tailed Mann-Whitney U test between two CSV columns.
    Stats(StatsArgs),
}

/// Exit code for an error.
pub fn exit_code(err: &Error) -> i32 {
    if err.is_validation() {
        EXIT_VALIDATION
    } else {
        EXIT_RUNTIME
    }
}

/// Parses `args` (including the program name) and runs the subcommand,
/// printing reports to stdout and errors to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_output(args, &mut std::io::stdout().lock())
}

/// Like [`run`], with reports written to `out`.
pub fn run_with_output<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_VALIDATION
            } else {
                EXIT_OK
            };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Simulate(a) => simulate::run(*a, out),
        Command::Evaluate(a) => evaluate::run(a, out),
        Command::Consensus(a) => consensus::run(a, out),
        Command::Stats(a) => stats::run(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// File name without `.nii.gz` / `.nii`.
pub(crate) fn volume_stem(path: &Path) -> String {
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    for ext in [".nii.gz", ".nii"] {
        if let Some(s) = name.strip_suffix(ext) {
            return s.to_string();
        }
    }
    name
}

pub(crate) fn is_volume_file(path: &Path) -> bool {
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    path.is_file() && (name.ends_with(".nii") || name.ends_with(".nii.gz"))
}

pub(crate) fn require_file(path: &Path, what: &str) -> Result<()> {
    if path.is_file() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "{what} {} does not exist",
            path.display()
        )))
    }
}

pub(crate) fn ensure_dir(path: &PathBuf) -> Result<()> {
    std::fs::create_dir_all(path).map_err(|e| Error::io(path, e))
}

pub(crate) fn report(out: &mut dyn Write, text: std::fmt::Arguments<'_>) -> Result<()> {
    out.write_fmt(text)
        .and_then(|_| out.write_all(b"\n"))
        .map_err(|e| Error::io("<stdout>", e))
}
