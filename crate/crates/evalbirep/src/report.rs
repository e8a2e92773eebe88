//! Verification reports: one line per check, serialized deterministically.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub params: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(id: impl Into<String>, params: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            id: id.into(),
            params: params.into(),
            pass,
            detail: detail.into(),
        }
    }

    /// A failed check carrying an error message.
    pub fn error(id: impl Into<String>, params: impl Into<String>, e: &Error) -> Self {
        Check::new(id, params, false, format!("error: {e}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub suite: String,
    pub d: usize,
    pub r: i32,
    pub s: i32,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: &str, d: usize, r: i32, s: i32, seed: u64) -> Self {
        Report {
            schema: SCHEMA,
            suite: suite.into(),
            d,
            r,
            s,
            seed,
            passed: 0,
            failed: 0,
            checks: vec![],
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = Check>) {
        self.checks.extend(cs);
    }

    /// Records a result, turning an error into a failed check.
    pub fn record(&mut self, id: &str, params: &str, r: Result<(bool, String)>) {
        match r {
            Ok((pass, detail)) => self.push(Check::new(id, params, pass, detail)),
            Err(e) => self.push(Check::error(id, params, &e)),
        }
    }

    /// Sorts checks by id and parameters and fills in the totals.
    pub fn finish(mut self) -> Self {
        self.checks
            .sort_by(|a, b| (&a.id, &a.params).cmp(&(&b.id, &b.params)));
        self.passed = self.checks.iter().filter(|c| c.pass).count();
        self.failed = self.checks.len() - self.passed;
        self
    }

    pub fn all_pass(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Plain-text table.
    pub fn summary(&self) -> String {
        let mut out = format!(
            "{} d={} r={} s={}: {} passed, {} failed\n",
            self.suite, self.d, self.r, self.s, self.passed, self.failed
        );
        for c in &self.checks {
            let v = if c.pass { "pass" } else { "FAIL" };
            out.push_str(&format!("  {v}  {:<32} {:<24} {}\n", c.id, c.params, c.detail));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finish_sorts_and_counts() {
        let mut r = Report::new("x", 3, 1, -1, 7);
        r.push(Check::new("b", "", true, ""));
        r.push(Check::new("a", "i=2", false, "no"));
        r.push(Check::new("a", "i=1", true, ""));
        let r = r.finish();
        let ids: Vec<_> = r.checks.iter().map(|c| (c.id.as_str(), c.params.as_str())).collect();
        assert_eq!(ids, vec![("a", "i=1"), ("a", "i=2"), ("b", "")]);
        assert_eq!((r.passed, r.failed), (2, 1));
        assert!(!r.all_pass());
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }
}
