//! Command-line driver: argument handling, pipelines, and report formats.

pub mod args;
pub mod report;
pub mod run;

use std::fs;
use std::process::ExitCode;

use anyhow::{Context, Result};

use args::{Cli, Command};

/// Runs one command, writing its output to `--output` or stdout. Exit code 2
/// signals a "no" answer; errors are left to the caller.
pub fn execute(cli: &Cli) -> Result<ExitCode> {
    let (outcome, output) = match &cli.command {
        Command::Solve(a) => (run::solve(a)?, &a.output),
        Command::Estimate(a) => (run::estimate(a)?, &a.output),
        Command::Bench(a) => (run::bench(a)?, &a.output),
    };
    match output {
        Some(path) => {
            fs::write(path, &outcome.text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{}", outcome.text),
    }
    if outcome.infeasible {
        eprintln!("infeasible");
        Ok(ExitCode::from(2))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}
