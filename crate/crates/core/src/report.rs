//! Machine-readable run reports shared by the CLI subcommands.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::io::ComplexDocument;
use crate::verify::{PredicateReport, Verdict, Witness};

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Undecided,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub details: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct BudgetUse {
    pub limit: u64,
    pub used: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    pub checks: Vec<CheckEntry>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<BudgetUse>,
    /// The only field that varies between identical runs.
    pub wall_time_ms: u64,
}

/// SHA-256 of the canonical file rendering of a document.
pub fn digest(doc: &ComplexDocument) -> String {
    hex::encode(Sha256::digest(doc.to_json_string().as_bytes()))
}

impl RunReport {
    pub fn new(command: &str, input: Option<&ComplexDocument>) -> Self {
        RunReport {
            schema: REPORT_SCHEMA,
            command: command.into(),
            input_digest: input.map(digest),
            checks: Vec::new(),
            result: Value::Null,
            budget: None,
            wall_time_ms: 0,
        }
    }

    pub fn add_predicate(&mut self, r: PredicateReport) {
        let status = match r.verdict {
            Verdict::Pass => Status::Pass,
            Verdict::Fail => Status::Fail,
        };
        self.checks.push(CheckEntry { name: r.predicate, status, witness: r.witness, details: r.details });
    }

    pub fn add(&mut self, name: &str, status: Status, details: Value) {
        self.checks.push(CheckEntry { name: name.into(), status, witness: None, details });
    }

    pub fn status(&self) -> Status {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if self.checks.iter().any(|c| c.status == Status::Undecided) {
            Status::Undecided
        } else {
            Status::Pass
        }
    }

    /// 0 all pass, 1 some check failed, 3 undecided.
    pub fn exit_code(&self) -> i32 {
        match self.status() {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Undecided => 3,
        }
    }

    pub fn finish(&mut self, started: std::time::Instant) {
        self.wall_time_ms = started.elapsed().as_millis() as u64;
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let mut r = RunReport::new("verify", None);
        assert_eq!(r.exit_code(), 0);
        r.add("search", Status::Undecided, Value::Null);
        assert_eq!(r.exit_code(), 3);
        r.add("sphere", Status::Fail, Value::Null);
        assert_eq!(r.exit_code(), 1);
    }
}
