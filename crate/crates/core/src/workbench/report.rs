//! Run reports: one entry per check, plus a summary.
//!
//! Reports serialize deterministically (fixed field order, no maps with
//! unstable iteration), so running the same scenario twice produces
//! byte-identical JSON.

use super::scenario::ParseError;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

pub const REPORT_SCHEMA: &str = "divisor-workbench-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub index: usize,
    pub name: String,
    pub op: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub computed: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
    pub total: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn new(checks: Vec<CheckResult>) -> Report {
        let mut summary = Summary {
            pass: 0,
            fail: 0,
            error: 0,
            total: checks.len(),
        };
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Error => summary.error += 1,
            }
        }
        Report {
            schema: REPORT_SCHEMA.to_string(),
            checks,
            summary,
        }
    }

    /// True when every check passed (no failures, no errors).
    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0 && self.summary.error == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization is infallible");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Report, ParseError> {
        let report: Report = serde_json::from_str(text)
            .map_err(|e| ParseError::new("$", format!("invalid report JSON: {e}")))?;
        if report.schema != REPORT_SCHEMA {
            return Err(ParseError::new(
                "$.schema",
                format!(
                    "unsupported report schema {:?} (expected {REPORT_SCHEMA:?})",
                    report.schema
                ),
            ));
        }
        Ok(report)
    }

    /// Human-readable rendering: one line per check, mismatch details
    /// indented underneath, summary line last.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "[PASS]",
                Status::Fail => "[FAIL]",
                Status::Error => "[ERROR]",
            };
            let _ = writeln!(out, "{tag} #{:03} {} ({})", c.index, c.name, c.op);
            if c.status != Status::Pass {
                if let Some(computed) = &c.computed {
                    let _ = writeln!(out, "        computed: {computed}");
                }
                if let Some(expected) = &c.expected {
                    let _ = writeln!(out, "        expected: {expected}");
                }
                if let Some(detail) = &c.detail {
                    let _ = writeln!(out, "        detail:   {detail}");
                }
            }
        }
        let _ = writeln!(
            out,
            "summary: {} passed, {} failed, {} errors, {} total",
            self.summary.pass, self.summary.fail, self.summary.error, self.summary.total
        );
        out
    }
}
