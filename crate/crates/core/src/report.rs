//! JSON report document.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampling::GENERATOR;
use crate::verifier::{CheckReport, Tolerances};

/// Crate version and generator identifier.
pub fn version() -> String {
    format!("braided-rmatrix {} (rng {GENERATOR})", env!("CARGO_PKG_VERSION"))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub results: Vec<CheckReport>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(seed: u64, tolerances: Tolerances) -> Self {
        Self { version: version(), seed, tolerances, results: Vec::new(), warnings: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }
}

pub fn write_report(report: &Report, path: &Path) -> Result<()> {
    fs::write(path, report.to_json()?).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
