//! Structured pass/fail records produced by the verification suites.

use serde::Serialize;

/// Outcome of one identity check.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    /// Stable identifier, e.g. `"a4-orthonormality"`.
    pub identity_id: String,
    /// Short equation tag the identity is measured from, e.g. `"a4"`.
    pub paper_anchor: String,
    pub algebra: String,
    /// Max residual observed (relative to the identity's scale).
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Number of index tuples / probes the residual was maximised over.
    pub samples: u64,
}

/// A batch of identity checks from one suite run.
#[derive(Debug, Clone, Default, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<IdentityCheck>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Record a residual-style check.
    pub fn push(
        &mut self,
        id: impl Into<String>,
        anchor: impl Into<String>,
        algebra: impl Into<String>,
        residual: f64,
        tolerance: f64,
        samples: u64,
    ) {
        self.checks.push(IdentityCheck {
            identity_id: id.into(),
            paper_anchor: anchor.into(),
            algebra: algebra.into(),
            residual,
            tolerance,
            passed: residual.is_finite() && residual <= tolerance,
            samples,
        });
    }

    /// Record an exact (boolean) check; failures carry residual 1.
    pub fn push_exact(
        &mut self,
        id: impl Into<String>,
        anchor: impl Into<String>,
        algebra: impl Into<String>,
        ok: bool,
    ) {
        self.checks.push(IdentityCheck {
            identity_id: id.into(),
            paper_anchor: anchor.into(),
            algebra: algebra.into(),
            residual: if ok { 0.0 } else { 1.0 },
            tolerance: 0.0,
            passed: ok,
            samples: 1,
        });
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Apply a blanket tolerance to every recorded check (CLI override).
    pub fn with_tolerance(mut self, tol: f64) -> Self {
        for c in &mut self.checks {
            c.tolerance = tol;
            c.passed = c.residual.is_finite() && c.residual <= tol;
        }
        self
    }
}
