//! Verification reports shared by every suite.

use std::fmt;
use std::time::Instant;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: String,
    #[serde(skip)]
    pub description: String,
    pub anchor: String,
    pub status: Status,
    /// First failing index or value.
    pub witness: Option<String>,
}

impl Check {
    pub fn new(
        id: impl Into<String>,
        description: impl Into<String>,
        anchor: impl Into<String>,
        outcome: std::result::Result<(), String>,
    ) -> Self {
        let (status, witness) = match outcome {
            Ok(()) => (Status::Pass, None),
            Err(w) => (Status::Fail, Some(w)),
        };
        Check {
            id: id.into(),
            description: description.into(),
            anchor: anchor.into(),
            status,
            witness,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub status: Status,
    pub checks: Vec<Check>,
    pub ms: u64,
}

impl Report {
    pub fn new(suite: impl Into<String>, checks: Vec<Check>, ms: u64) -> Self {
        let status = if checks.iter().all(Check::passed) {
            Status::Pass
        } else {
            Status::Fail
        };
        Report {
            suite: suite.into(),
            status,
            checks,
            ms,
        }
    }

    /// Run `f` and time it.
    pub fn timed(suite: &str, f: impl FnOnce() -> Vec<Check>) -> Self {
        let start = Instant::now();
        let checks = f();
        Report::new(suite, checks, start.elapsed().as_millis() as u64)
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn merge(suite: &str, parts: Vec<Report>) -> Self {
        let ms = parts.iter().map(|r| r.ms).sum();
        let checks = parts.into_iter().flat_map(|r| r.checks).collect();
        Report::new(suite, checks, ms)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "[{}] {:<28} {}", c.status, c.id, c.description)?;
            if let Some(w) = &c.witness {
                write!(f, "  -- {w}")?;
            }
            writeln!(f)?;
        }
        let passed = self.checks.iter().filter(|c| c.passed()).count();
        writeln!(
            f,
            "{}: {} ({}/{} checks, {} ms)",
            self.suite,
            self.status,
            passed,
            self.checks.len(),
            self.ms
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_suite_passes() {
        let r = Report::new("empty", vec![], 0);
        assert!(r.passed());
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["checks"], serde_json::json!([]));
        assert_eq!(json["status"], "pass");
    }

    #[test]
    fn one_failure_fails() {
        let r = Report::new(
            "x",
            vec![
                Check::new("a", "", "", Ok(())),
                Check::new("b", "", "", Err("q^3: 1 vs 0".into())),
            ],
            5,
        );
        assert!(!r.passed());
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["checks"][1]["witness"], "q^3: 1 vs 0");
        assert!(json["checks"][0]["witness"].is_null());
        assert!(json["checks"][0].get("description").is_none());
    }
}
