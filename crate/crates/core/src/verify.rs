//! Verification reports for the theorem and lemma checks.

use std::time::Duration;

use serde::{Deserialize, Serialize};

/// Counterexamples kept per report.
pub const COUNTEREXAMPLE_CAP: usize = 16;

/// Outcome of one claim check over a tested range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: String,
    pub tested_range: String,
    pub conventions: Vec<String>,
    pub passed: bool,
    /// Number of individual assertions evaluated.
    pub checked: u64,
    /// Number of failed assertions; `counterexamples` holds at most
    /// [`COUNTEREXAMPLE_CAP`] of them.
    pub failures: u64,
    pub counterexamples: Vec<String>,
    pub elapsed_ms: f64,
}

impl VerificationReport {
    pub fn with_elapsed(mut self, elapsed: Duration) -> Self {
        self.elapsed_ms = elapsed.as_secs_f64() * 1e3;
        self
    }

    /// A failed report carrying an error instead of counterexamples, used
    /// when a claim could not be evaluated (e.g. a resource cap refusal).
    pub fn errored(claim: impl Into<String>, range: impl Into<String>, err: impl ToString) -> Self {
        VerificationReport {
            claim: claim.into(),
            tested_range: range.into(),
            conventions: Vec::new(),
            passed: false,
            checked: 0,
            failures: 1,
            counterexamples: vec![format!("error: {}", err.to_string())],
            elapsed_ms: 0.0,
        }
    }
}

/// Accumulates assertions into a [`VerificationReport`].
#[derive(Debug)]
pub struct ReportBuilder {
    report: VerificationReport,
}

impl ReportBuilder {
    pub fn new(claim: impl Into<String>, tested_range: impl Into<String>) -> Self {
        ReportBuilder {
            report: VerificationReport {
                claim: claim.into(),
                tested_range: tested_range.into(),
                conventions: Vec::new(),
                passed: true,
                checked: 0,
                failures: 0,
                counterexamples: Vec::new(),
                elapsed_ms: 0.0,
            },
        }
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.report.conventions.push(note.into());
        self
    }

    /// Record one assertion; the counterexample text is only built on failure.
    pub fn check(&mut self, ok: bool, counterexample: impl FnOnce() -> String) -> bool {
        self.report.checked += 1;
        if !ok {
            self.fail(counterexample());
        }
        ok
    }

    pub fn fail(&mut self, counterexample: String) {
        self.report.passed = false;
        self.report.failures += 1;
        if self.report.counterexamples.len() < COUNTEREXAMPLE_CAP {
            self.report.counterexamples.push(counterexample);
        }
    }

    pub fn finish(self) -> VerificationReport {
        let r = self.report;
        debug_assert!(r.passed || !r.counterexamples.is_empty());
        r
    }
}
