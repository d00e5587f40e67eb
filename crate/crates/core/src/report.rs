use std::fmt;

use serde::Serialize;

/// Outcome of one named verification.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    /// A zero-tolerance verdict.
    pub fn exact(name: impl Into<String>, pass: bool) -> Self {
        Check { name: name.into(), pass, witness: Vec::new(), residual: None, tolerance: None, detail: None }
    }

    /// Passes iff `residual <= tolerance` (a NaN residual fails).
    pub fn numeric(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            pass: residual <= tolerance,
            witness: Vec::new(),
            residual: Some(residual),
            tolerance: Some(tolerance),
            detail: None,
        }
    }

    pub fn with_witness<I, S>(mut self, witness: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: fmt::Display,
    {
        self.witness = witness.into_iter().map(|w| w.to_string()).collect();
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", if self.pass { "pass" } else { "FAIL" }, self.name)?;
        if let (Some(r), Some(t)) = (self.residual, self.tolerance) {
            write!(f, " (residual {r:.3e}, tolerance {t:.0e})")?;
        }
        if !self.witness.is_empty() {
            write!(f, " witness: {}", self.witness.join(", "))?;
        }
        if let Some(d) = &self.detail {
            write!(f, " -- {d}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    /// Adds `other` with every check name prefixed by `prefix`.
    pub fn extend_prefixed(&mut self, prefix: &str, other: VerificationReport) {
        self.checks.extend(other.checks.into_iter().map(|mut c| {
            c.name = format!("{prefix}.{}", c.name);
            c
        }));
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Largest residual among numeric checks.
    pub fn max_residual(&self) -> f64 {
        self.checks.iter().filter_map(|c| c.residual).fold(0.0, f64::max)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}
