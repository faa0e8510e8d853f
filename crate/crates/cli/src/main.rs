//! `signotope`: counting, enumeration and bijections for co-signotopes.
//!
//! Exit codes: 0 success, 1 usage or malformed input, 2 guarded refusal or
//! partial failure, 3 internal invariant violation (including disagreeing
//! count methods).

mod cache;
mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::{
    AppendixArgs, ConjectureArgs, CountArgs, FerrersArgs, HasseArgs, MapArgs, Output, TableArgs,
    VerifyArgs,
};

#[derive(Debug, Parser)]
#[command(
    name = "signotope",
    version,
    about = "Exact counting in truncated higher Bruhat orders"
)]
struct Cli {
    /// Write a JSON run manifest (command, parameters, version, output digest).
    #[arg(long, global = true, value_name = "PATH")]
    manifest: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print P_{d,p} by formula, enumeration, or all methods.
    Count(CountArgs),
    /// Emit the table of P_{d,p}.
    Table(TableArgs),
    /// Apply phi to each record of an NDJSON stream.
    Map(MapArgs),
    /// Report validity and component structure of each NDJSON record.
    Verify(VerifyArgs),
    /// Enumerate or count (d,i)-Ferrers diagrams of size p.
    Ferrers(FerrersArgs),
    /// Export the truncated Hasse diagram.
    Hasse(HasseArgs),
    /// Check P_{d,3} = P_{d-1,3} + P_{d-1,2} + P_{d-1,1} + 3.
    Conjecture(ConjectureArgs),
    /// Compare rank-1 and rank-2 signotope counts up to two plus-signs.
    Appendix(AppendixArgs),
}

#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Refused(String),
    #[error("{0}")]
    Partial(String),
    #[error("{0}")]
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Refused(_) | Failure::Partial(_) => 2,
            Failure::Internal(_) => 3,
        }
    }
}

impl From<signotope_core::Error> for Failure {
    fn from(e: signotope_core::Error) -> Self {
        use signotope_core::Error as E;
        let msg = e.to_string();
        match e {
            E::BeyondTightness { .. }
            | E::GuardExceeded { .. }
            | E::Overflow(_)
            | E::OutOfTheory { .. } => Failure::Refused(msg),
            E::Internal(_) => Failure::Internal(msg),
            _ => Failure::Usage(msg),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let (name, params, result) = match &cli.command {
        Command::Count(a) => ("count", manifest::params(a), commands::count(a)),
        Command::Table(a) => ("table", manifest::params(a), commands::table(a)),
        Command::Map(a) => ("map", manifest::params(a), commands::map(a)),
        Command::Verify(a) => ("verify", manifest::params(a), commands::verify(a)),
        Command::Ferrers(a) => ("ferrers", manifest::params(a), commands::ferrers(a)),
        Command::Hasse(a) => ("hasse", manifest::params(a), commands::hasse(a)),
        Command::Conjecture(a) => ("conjecture", manifest::params(a), commands::conjecture(a)),
        Command::Appendix(a) => ("appendix", manifest::params(a), commands::appendix(a)),
    };
    // Partial results are still written before the failure is reported.
    let (output, failure): (Output, Option<Failure>) = match result {
        Ok(out) => (out, None),
        Err((Some(out), f)) => (out, Some(f)),
        Err((None, f)) => return Err(f),
    };
    output.emit()?;
    if let Some(path) = &cli.manifest {
        manifest::RunManifest::new(name, params, output.bytes()).write(path)?;
    }
    failure.map_or(Ok(()), Err)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
