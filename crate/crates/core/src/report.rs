//! Machine-readable reports produced by the bounded verification checks.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Number of violation and finding entries kept verbatim; the counters keep
/// counting past it.
pub const MAX_LISTED: usize = 50;

/// One offending (or noteworthy) instance of a check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub subject: String,
    pub detail: String,
}

/// Outcome of one check at one set of bounds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub bound: u64,
    #[serde(default)]
    pub parameters: BTreeMap<String, Value>,
    /// Number of instances examined.
    pub checked: u64,
    pub violation_count: u64,
    pub violations: Vec<Entry>,
    pub finding_count: u64,
    pub findings: Vec<Entry>,
    /// Cap hits and other errors; a report with errors does not pass.
    pub errors: Vec<String>,
    /// Assumptions the check rests on.
    pub notes: Vec<String>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn new(check: impl Into<String>, bound: u64) -> Report {
        Report {
            check: check.into(),
            bound,
            parameters: BTreeMap::new(),
            checked: 0,
            violation_count: 0,
            violations: Vec::new(),
            finding_count: 0,
            findings: Vec::new(),
            errors: Vec::new(),
            notes: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Report {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn violation(&mut self, subject: impl Into<String>, detail: impl Into<String>) {
        self.violation_count += 1;
        if self.violations.len() < MAX_LISTED {
            self.violations.push(Entry { subject: subject.into(), detail: detail.into() });
        }
    }

    pub fn finding(&mut self, subject: impl Into<String>, detail: impl Into<String>) {
        self.finding_count += 1;
        if self.findings.len() < MAX_LISTED {
            self.findings.push(Entry { subject: subject.into(), detail: detail.into() });
        }
    }

    pub fn error(&mut self, message: impl Into<String>) {
        self.errors.push(message.into());
    }

    pub fn note(&mut self, message: impl Into<String>) {
        self.notes.push(message.into());
    }

    pub fn finish(mut self, started: Instant) -> Report {
        self.elapsed_ms = started.elapsed().as_millis() as u64;
        self
    }

    /// No violations and no errors. Findings do not affect this.
    pub fn passed(&self) -> bool {
        self.violation_count == 0 && self.errors.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

/// Several reports run under one suite name.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    #[serde(default)]
    pub parameters: BTreeMap<String, Value>,
    pub passed: bool,
    pub check_count: u64,
    pub violation_count: u64,
    pub finding_count: u64,
    pub error_count: u64,
    pub checks: Vec<Report>,
    pub elapsed_ms: u64,
}

impl SuiteReport {
    /// Aggregates `checks`. With `strict`, findings also fail the suite.
    pub fn new(
        suite: impl Into<String>,
        parameters: BTreeMap<String, Value>,
        checks: Vec<Report>,
        strict: bool,
    ) -> SuiteReport {
        let violation_count = checks.iter().map(|r| r.violation_count).sum();
        let finding_count = checks.iter().map(|r| r.finding_count).sum();
        let error_count = checks.iter().map(|r| r.errors.len() as u64).sum();
        SuiteReport {
            suite: suite.into(),
            parameters,
            passed: violation_count == 0 && error_count == 0 && (!strict || finding_count == 0),
            check_count: checks.len() as u64,
            violation_count,
            finding_count,
            error_count,
            elapsed_ms: checks.iter().map(|r| r.elapsed_ms).sum(),
            checks,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_is_byte_identical() {
        let mut r = Report::new("demo", 4).param("exp", vec![-2, 2]).param("monoid", "M");
        r.checked = 10;
        r.violation("ab vs ba", "unequal");
        r.finding("xy=yx", "no witness");
        r.note("bounded");
        let text = r.to_json();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), text);
        assert!(!back.passed());
    }

    #[test]
    fn suite_counts_and_strictness() {
        let mut a = Report::new("a", 1);
        a.finding("x", "miss");
        let b = Report::new("b", 1);
        let lenient = SuiteReport::new("s", BTreeMap::new(), vec![a.clone(), b.clone()], false);
        assert!(lenient.passed);
        assert_eq!((lenient.check_count, lenient.finding_count), (2, 1));
        assert!(!SuiteReport::new("s", BTreeMap::new(), vec![a.clone(), b], true).passed);
        a.error("cap");
        let failed = SuiteReport::new("s", BTreeMap::new(), vec![a], false);
        assert!(!failed.passed);
        let text = failed.to_json();
        let back: SuiteReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn listing_is_truncated_but_counted() {
        let mut r = Report::new("demo", 1);
        for i in 0..(MAX_LISTED + 5) {
            r.violation(i.to_string(), "");
        }
        assert_eq!(r.violations.len(), MAX_LISTED);
        assert_eq!(r.violation_count, (MAX_LISTED + 5) as u64);
    }
}
