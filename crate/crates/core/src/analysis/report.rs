//! Check outcomes and their markdown / JSON renderings.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// Strength of the evidence behind a check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Grade {
    /// Full interpolation from computed counts.
    Derived,
    /// Equality at the sampled primes only.
    Sampled,
    /// Transcribed tables checked against themselves or combinatorics.
    Data,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub grade: Grade,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    pub paper_ref: String,
}

impl Check {
    /// Passes iff the renderings agree.
    pub fn compare(
        id: impl Into<String>,
        grade: Grade,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
        reference: &str,
    ) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let status = if expected == actual { Status::Pass } else { Status::Fail };
        Self { id: id.into(), grade, status, expected, actual, paper_ref: reference.to_string() }
    }

    pub fn holds(id: impl Into<String>, grade: Grade, ok: bool, detail: impl fmt::Display, reference: &str) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        Self {
            id: id.into(),
            grade,
            status,
            expected: "true".into(),
            actual: if ok { "true".into() } else { format!("false: {detail}") },
            paper_ref: reference.to_string(),
        }
    }

    pub fn skipped(id: impl Into<String>, grade: Grade, reason: &str, reference: &str) -> Self {
        Self {
            id: id.into(),
            grade,
            status: Status::Skipped,
            expected: String::new(),
            actual: reason.to_string(),
            paper_ref: reference.to_string(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
    /// Solved unipotent traces, keyed `type/q<q>/class/variant`, then by character.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub green_traces: BTreeMap<String, BTreeMap<String, String>>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_markdown(&self) -> String {
        let cell = |s: &str| s.replace('|', "\\|").replace('\n', " ");
        let mut out = format!(
            "# Verification report\n\n{} checks: {} pass, {} fail, {} skipped\n\n",
            self.checks.len(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped)
        );
        out.push_str("| id | grade | status | expected | actual | reference |\n|---|---|---|---|---|---|\n");
        for c in &self.checks {
            let grade = serde_json::to_value(c.grade).expect("enum serializes");
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} |\n",
                cell(&c.id),
                grade.as_str().unwrap_or_default(),
                c.status,
                cell(&c.expected),
                cell(&c.actual),
                cell(&c.paper_ref)
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape_and_markdown_agree() {
        let r = Report {
            checks: vec![
                Check::compare("a/1", Grade::Derived, "u^2", "u^2", "table"),
                Check::compare("a/2", Grade::Sampled, 1, 2, "table"),
                Check::skipped("a/3", Grade::Data, "not transcribed", "map"),
            ],
            ..Report::default()
        };
        let v: serde_json::Value = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        let first = &v["checks"][0];
        let mut keys: Vec<&str> = first.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort();
        assert_eq!(keys, ["actual", "expected", "grade", "id", "paper_ref", "status"]);
        assert_eq!(first["grade"], "derived");
        assert_eq!(v["checks"][1]["status"], "fail");
        assert!(!r.passed());
        let md = r.to_markdown();
        assert!(md.contains("| a/2 | sampled | fail | 1 | 2 | table |"));
        assert!(md.contains("| a/3 | data | skipped |"));
        assert_eq!(Report::from_json(&r.to_json().unwrap()).unwrap(), r);
    }
}
