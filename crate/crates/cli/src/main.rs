//! `gammakit`: command-line front end.
//!
//! Results go to stdout as one JSON document; diagnostics go to stderr.
//! Exit codes: 0 verified, 1 verification failed or fit rejected,
//! 2 invalid input.

mod args;
mod commands;
mod input;

use std::process::ExitCode;

use clap::Parser;

use gammakit_core::Error;

#[derive(Debug)]
pub enum CliError {
    /// Bad flag combination.
    Usage(String),
    /// Unreadable or inconsistent input.
    Invalid(String),
    /// A check ran and failed, or a fit was rejected.
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) | CliError::Invalid(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Invalid(m) => write!(f, "invalid input: {m}"),
            CliError::Failed(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotASolution { .. } | Error::UnderDetermined { .. } | Error::DegenerateBasis => {
                CliError::Failed(e.to_string())
            }
            other => CliError::Invalid(other.to_string()),
        }
    }
}

/// Outcome of a command that printed its result.
pub enum Verdict {
    Passed,
    Failed(&'static str),
}

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    match commands::run(cli.command) {
        Ok(Verdict::Passed) => ExitCode::SUCCESS,
        Ok(Verdict::Failed(what)) => {
            eprintln!("verification failed: {what}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("gammakit: {e}");
            ExitCode::from(e.code())
        }
    }
}
