//! Run reports.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use seamlab::checks::Check;

use crate::config::ScenarioConfig;
use crate::CliError;

/// Report format version.
pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub version: u32,
    pub tool_version: String,
    pub config: ScenarioConfig,
    pub pass: bool,
    pub checks: Vec<Check>,
    /// Scalar outputs without a threshold.
    pub measurements: BTreeMap<String, f64>,
    pub labels: BTreeMap<String, String>,
    /// Data files written next to the report, relative to the output directory.
    pub files: Vec<String>,
    pub wall_time_s: f64,
}

impl RunReport {
    pub fn new(config: ScenarioConfig) -> Self {
        Self {
            version: REPORT_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").into(),
            config,
            pass: true,
            checks: Vec::new(),
            measurements: BTreeMap::new(),
            labels: BTreeMap::new(),
            files: Vec::new(),
            wall_time_s: 0.0,
        }
    }

    pub fn push(&mut self, c: Check) {
        self.pass &= c.pass;
        self.checks.push(c);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }
}

pub fn emit_report(r: &RunReport, path: &Path) -> Result<(), CliError> {
    std::fs::write(path, r.to_json()).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}
