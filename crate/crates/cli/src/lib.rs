//! Command-line front end: configuration, file formats and subcommands.

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod io;

use clap::{Parser, Subcommand};
use config::{Flags, RunConfig};
use error::{CliError, CliResult};
use std::ffi::OsString;

#[derive(Debug, Parser)]
#[command(name = "slepian", version, about = "Slepian concentration on the ball")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Assemble the concentration kernel (or its radial/angular factors)
    Kernel(Flags),
    /// Solve the concentration problem: eigenvalues, eigenvectors, Shannon number
    Eigen(Flags),
    /// Shannon number from the trace integral
    Shannon(Flags),
    /// Project a signal onto the Slepian basis: decay curves and Q(J)
    Project(Flags),
    /// Write a synthetic signal concentrated in the region
    Synth(Flags),
}

fn init_threads() -> CliResult<()> {
    let Ok(v) = std::env::var("SLEPIAN_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| CliError::Config { field: "SLEPIAN_THREADS".into(), msg: format!("'{v}' is not a positive integer") })?;
    // A pool may already exist when run() is called twice in one process.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn execute(command: &Command) -> CliResult<()> {
    init_threads()?;
    let report = |files: commands::Written| {
        for f in files {
            println!("wrote {}", f.display());
        }
    };
    match command {
        Command::Kernel(f) => report(commands::kernel(&RunConfig::resolve(f)?)?),
        Command::Eigen(f) => report(commands::eigen(&RunConfig::resolve(f)?)?),
        Command::Shannon(f) => {
            let (value, _) = commands::shannon(&RunConfig::resolve(f)?)?;
            println!("{value}");
        }
        Command::Project(f) => report(commands::project(&RunConfig::resolve(f)?)?),
        Command::Synth(f) => report(commands::synth(&RunConfig::resolve(f)?)?),
    }
    Ok(())
}

/// Parse arguments and run; returns the process exit code (0 ok, 2 validation, 1 numerical).
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
