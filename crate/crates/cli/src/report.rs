//! Versioned suite reports.

use std::io::Write;

use hermite_riesz::constants::{special_heat_cd, CONSTANTS_VERSION, HECKE_BOCHNER_CD};
use serde::{Deserialize, Serialize};

use crate::config::{SuiteConfig, SuiteName};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// One gated comparison: passes iff `residual <= tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// Mathematical statement the check certifies.
    pub anchor: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    /// Non-finite residuals are recorded as `f64::MAX` and fail.
    pub fn new(name: impl Into<String>, anchor: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        let residual = if residual.is_finite() { residual } else { f64::MAX };
        Self { name: name.into(), anchor: anchor.into(), residual, tolerance, pass: residual <= tolerance }
    }
}

/// Measured quantity recorded without a pass/fail verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Observation {
    pub name: String,
    pub anchor: String,
    pub value: f64,
    pub note: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    pub version: String,
    pub hecke_bochner_cd: f64,
    /// Closed-form prefactor of the special Hermite heat kernel for d = 1, 2.
    pub special_heat_cd: [f64; 2],
}

impl Default for Constants {
    fn default() -> Self {
        Self { version: CONSTANTS_VERSION.into(), hecke_bochner_cd: HECKE_BOCHNER_CD, special_heat_cd: [special_heat_cd(1), special_heat_cd(2)] }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub suite: SuiteName,
    pub config: SuiteConfig,
    pub constants: Constants,
    pub checks: Vec<Check>,
    pub observations: Vec<Observation>,
    pub summary: Summary,
    /// Seconds since the Unix epoch; absent unless requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl Report {
    pub fn new(config: SuiteConfig, checks: Vec<Check>, observations: Vec<Observation>) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        Self {
            schema_version: REPORT_SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").into(),
            suite: config.suite,
            config,
            constants: Constants::default(),
            summary: Summary { total: checks.len(), passed, failed: checks.len() - passed },
            checks,
            observations,
            timestamp: None,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn observation(&self, name: &str) -> Option<&Observation> {
        self.observations.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Check table as CSV.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for c in &self.checks {
            w.serialize(c)?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_and_round_trip() {
        let checks = vec![Check::new("a", "x", 1e-12, 1e-8), Check::new("b", "y", f64::NAN, 1e-8)];
        let rep = Report::new(SuiteConfig::new(SuiteName::Kernels), checks, vec![]);
        assert_eq!(rep.summary, Summary { total: 2, passed: 1, failed: 1 });
        assert_eq!(rep.check("b").unwrap().residual, f64::MAX);
        let back = Report::from_json(&rep.to_json().unwrap()).unwrap();
        assert_eq!(back, rep);
        let mut buf = Vec::new();
        rep.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next(), Some("name,anchor,residual,tolerance,pass"));
        assert_eq!(text.lines().count(), 3);
    }
}
