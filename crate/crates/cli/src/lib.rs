//! Command-line front end for the `ncdchain` library.

pub mod args;
pub mod commands;
pub mod output;
pub mod reproduce;

use std::fmt;

use args::{Cli, Command};
use output::{render, write_output};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FIXTURE_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Runs one invocation and returns the process exit status.
pub fn run(cli: &Cli) -> i32 {
    let result = match &cli.command {
        Command::ReproducePaper(a) => Ok(reproduce::reproduce(a.seed)),
        Command::ExpectedRate(a) => commands::expected_rate_cmd(a).map(|d| (d, true)),
        Command::Inequality(a) => commands::inequality_cmd(a).map(|d| (d, true)),
        Command::Simulate(a) => commands::simulate_cmd(a).map(|d| (d, true)),
        Command::Ncd(a) => commands::ncd_cmd(a).map(|d| (d, true)),
    };
    let (doc, ok) = match result {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return match e {
                CliError::Usage(_) => EXIT_USAGE,
                CliError::Io(_) => EXIT_FIXTURE_FAILURE,
            };
        }
    };
    if let Err(e) = write_output(&render(&doc, cli.format), cli.out.as_deref()) {
        eprintln!("error: cannot write output: {e}");
        return EXIT_FIXTURE_FAILURE;
    }
    if ok {
        EXIT_OK
    } else {
        EXIT_FIXTURE_FAILURE
    }
}
