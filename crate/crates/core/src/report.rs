//! Structured command reports and the exit-code contract.

use serde::Serialize;
use serde_json::Value;

use crate::error::{AlgebraError, Error};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl Status {
    fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        }
    }
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct ReportCheck {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub detail: Value,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub checks: Vec<ReportCheck>,
    pub exit_code: i32,
}

/// Exit code for an error that aborted a command.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Internal(_) => EXIT_INTERNAL,
        Error::Scalar(_)
        | Error::Json(_)
        | Error::Schema(_)
        | Error::UnknownEntry(_)
        | Error::Inadmissible { .. }
        | Error::UnknownKind(_)
        | Error::MissingParameter(_)
        | Error::Linalg(_) => EXIT_PARSE,
        Error::Algebra(
            AlgebraError::UnknownLabel(_)
            | AlgebraError::DuplicateLabel(_)
            | AlgebraError::DuplicateBracket { .. }
            | AlgebraError::OrderViolation { .. }
            | AlgebraError::WrongLength { .. },
        ) => EXIT_PARSE,
        _ => EXIT_CHECK_FAILED,
    }
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report { command, checks: Vec::new(), exit_code: EXIT_PASS }
    }

    fn push(&mut self, name: impl Into<String>, status: Status, detail: Value) {
        if status == Status::Fail && self.exit_code == EXIT_PASS {
            self.exit_code = EXIT_CHECK_FAILED;
        }
        self.checks.push(ReportCheck { name: name.into(), status, detail });
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: Value) {
        self.push(name, if passed { Status::Pass } else { Status::Fail }, detail);
    }

    pub fn info(&mut self, name: impl Into<String>, detail: Value) {
        self.push(name, Status::Info, detail);
    }

    /// Records an aborting error as a failed check and sets the exit code.
    pub fn error(&mut self, name: impl Into<String>, err: &Error) {
        self.checks.push(ReportCheck {
            name: name.into(),
            status: Status::Fail,
            detail: Value::String(err.to_string()),
        });
        self.exit_code = self.exit_code.max(exit_code_for(err));
    }

    pub fn passed(&self) -> bool {
        self.exit_code == EXIT_PASS
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command.join(" "));
        for c in &self.checks {
            out.push_str(&format!("[{}] {}", c.status.tag(), c.name));
            match &c.detail {
                Value::Null => {}
                Value::String(s) => out.push_str(&format!(": {s}")),
                other => out.push_str(&format!(": {other}")),
            }
            out.push('\n');
        }
        out.push_str(&format!("exit code: {}\n", self.exit_code));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn exit_codes_follow_worst_outcome() {
        let mut r = Report::new(vec!["check".into()]);
        r.check("a", true, Value::Null);
        r.info("b", json!(3));
        assert!(r.passed());
        r.check("c", false, json!("bad"));
        assert_eq!(r.exit_code, EXIT_CHECK_FAILED);
        r.error("d", &Error::Internal("x".into()));
        assert_eq!(r.exit_code, EXIT_INTERNAL);
        let text = r.to_text();
        assert!(text.contains("[FAIL] c: bad"));
        assert!(text.ends_with("exit code: 3\n"));
    }

    #[test]
    fn parse_errors_map_to_two() {
        assert_eq!(exit_code_for(&Error::Schema("x".into())), EXIT_PARSE);
        assert_eq!(exit_code_for(&Error::Algebra(AlgebraError::UnknownLabel("Q".into()))), EXIT_PARSE);
        assert_eq!(exit_code_for(&Error::NotFiliform), EXIT_CHECK_FAILED);
    }

    #[test]
    fn json_field_order_is_stable() {
        let mut r = Report::new(vec!["x".into()]);
        r.check("a", true, Value::Null);
        let j = r.to_json();
        let (c, k, e) =
            (j.find("\"command\"").unwrap(), j.find("\"checks\"").unwrap(), j.find("\"exit_code\"").unwrap());
        assert!(c < k && k < e);
    }
}
