//! Result types for the verification suite, serializable to a stable JSON
//! shape and printable one line per check.

use serde::Serialize;
use std::fmt;

/// Outcome of a single named check. `residual` is the largest deviation the
/// check observed (0.0 for exact integer checks that passed).
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub params: serde_json::Value,
    pub residual: f64,
    pub pass: bool,
}

impl CheckResult {
    pub fn new(
        name: impl Into<String>,
        params: serde_json::Value,
        residual: f64,
        pass: bool,
    ) -> Self {
        Self {
            name: name.into(),
            params,
            residual,
            pass,
        }
    }

    /// A check whose residual is compared against a tolerance.
    pub fn from_residual(
        name: impl Into<String>,
        params: serde_json::Value,
        residual: f64,
        eps: f64,
    ) -> Self {
        Self::new(name, params, residual, residual <= eps)
    }

    /// An exact check: passes iff `pass`, residual 0.0 or 1.0.
    pub fn exact(name: impl Into<String>, params: serde_json::Value, pass: bool) -> Self {
        Self::new(name, params, if pass { 0.0 } else { 1.0 }, pass)
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<28} residual {:9.3e}  {}",
            self.name,
            self.residual,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

/// A full verification run over one schedule.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schedule: String,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

impl Report {
    pub fn new(schedule: String, checks: Vec<CheckResult>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Self {
            schedule,
            checks,
            pass,
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "schedule {}", self.schedule)?;
        for check in &self.checks {
            writeln!(f, "  {check}")?;
        }
        write!(f, "overall: {}", if self.pass { "PASS" } else { "FAIL" })
    }
}
