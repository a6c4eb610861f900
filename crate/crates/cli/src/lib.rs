//! Library surface of the batch front-end: scenario ingestion, job
//! dispatch, report and CSV emission. The binary in `main.rs` is a thin
//! wrapper so that everything here stays testable in-process.

use std::fmt;

pub mod report;
pub mod run;
pub mod scenario;

/// Exit status 2 material: bad input, bad schema, domain errors, IO.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "input error: {msg}"),
            CliError::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<sphlevy_core::Error> for CliError {
    fn from(err: sphlevy_core::Error) -> Self {
        CliError::Input(err.to_string())
    }
}
