//! Deterministic scenario runner for the seamlab toolkit.

pub mod config;
pub mod report;
pub mod scenario;

pub use config::{schema_json, Scenario, ScenarioConfig};
pub use report::{emit_report, RunReport};
pub use scenario::run_scenario;

use thiserror::Error;

/// Output format of data files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("I/O failure: {0}")]
    Io(String),
}

impl CliError {
    /// 1 for invalid input, 2 for numerical or I/O failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 1,
            CliError::Numerical(_) | CliError::Io(_) => 2,
        }
    }
}

impl From<seamlab::Error> for CliError {
    fn from(e: seamlab::Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Config(e.to_string())
        }
    }
}

/// Exit code of a finished run whose checks did not all pass.
pub const EXIT_CHECK_FAILURE: u8 = 3;
