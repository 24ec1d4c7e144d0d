//! Verification reports. Every exhaustive check returns one of these; a
//! failure always carries a reproducible counterexample, and the
//! counterexample is deterministic (the lexicographically first offending
//! pair) regardless of how the underlying sweep was sharded.

use serde::Serialize;

/// Outcome of an exhaustive check.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
#[serde(tag = "status")]
pub enum Outcome {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail {
        /// Offending pair, rendered in the word text format.
        x: String,
        y: String,
        details: String,
    },
}

/// Report for one exhaustive check over one parameter grid.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: serde_json::Value,
    pub pairs_examined: u64,
    pub result: Outcome,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        matches!(self.result, Outcome::Pass)
    }

    /// One-line human summary (the JSON body is the machine interface).
    pub fn summary(&self) -> String {
        match &self.result {
            Outcome::Pass => format!(
                "{}: pass ({} pairs examined)",
                self.check, self.pairs_examined
            ),
            Outcome::Fail { x, y, details } => format!(
                "{}: FAIL at pair ({x}, {y}): {details} ({} pairs examined)",
                self.check, self.pairs_examined
            ),
        }
    }
}
