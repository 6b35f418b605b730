//! Structured verification outcomes.
//!
//! A [`DualityReport`] is a flat list of keyed checks. Merging is associative
//! and commutative up to ordering; the suite sorts by check id before
//! serialization so a fixed seed yields byte-identical output.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub check_id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct DualityReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub checks: Vec<Check>,
}

impl DualityReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        match check.status {
            Status::Pass => self.passed += 1,
            Status::Fail => self.failed += 1,
            Status::Skipped => self.skipped += 1,
        }
        self.checks.push(check);
    }

    pub fn pass(&mut self, id: impl Into<String>) {
        self.push(Check { check_id: id.into(), status: Status::Pass, witness: None });
    }

    pub fn fail(&mut self, id: impl Into<String>, witness: impl Into<String>) {
        self.push(Check { check_id: id.into(), status: Status::Fail, witness: Some(witness.into()) });
    }

    pub fn skip(&mut self, id: impl Into<String>, note: impl Into<String>) {
        self.push(Check { check_id: id.into(), status: Status::Skipped, witness: Some(note.into()) });
    }

    /// Record a boolean outcome under `id`, with `witness` kept on failure.
    pub fn record(&mut self, id: impl Into<String>, ok: bool, witness: impl Into<String>) {
        if ok {
            self.pass(id);
        } else {
            self.fail(id, witness);
        }
    }

    pub fn merge(&mut self, other: DualityReport) {
        for check in other.checks {
            self.push(check);
        }
    }

    pub fn has_failures(&self) -> bool {
        self.failed > 0
    }

    /// Checks sorted by id; report aggregation is keyed, not sequenced.
    pub fn sorted(mut self) -> Self {
        self.checks.sort_by(|a, b| a.check_id.cmp(&b.check_id));
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_track_pushes() {
        let mut report = DualityReport::new();
        report.pass("a");
        report.fail("b", "why");
        report.skip("c", "later");
        report.record("d", true, "unused");
        assert_eq!((report.passed, report.failed, report.skipped), (2, 1, 1));
        assert!(report.has_failures());

        let mut other = DualityReport::new();
        other.pass("e");
        report.merge(other);
        assert_eq!(report.passed, 3);
    }

    #[test]
    fn sorting_is_stable_and_serialization_deterministic() {
        let mut report = DualityReport::new();
        report.pass("z");
        report.pass("a");
        report.fail("a", "first");
        report.fail("a", "second");
        let sorted = report.sorted();
        let ids: Vec<&str> = sorted.checks.iter().map(|c| c.check_id.as_str()).collect();
        assert_eq!(ids, vec!["a", "a", "a", "z"]);
        let witnesses: Vec<Option<&str>> =
            sorted.checks.iter().map(|c| c.witness.as_deref()).collect();
        assert_eq!(witnesses, vec![None, Some("first"), Some("second"), None]);
        assert_eq!(sorted.to_json(), sorted.clone().to_json());
    }
}
