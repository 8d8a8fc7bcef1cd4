use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    HypothesisNotMet,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
    fn word(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::HypothesisNotMet => "hypothesis-not-met",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModulusInfo {
    pub q: u32,
    pub p: u32,
    pub s: u32,
    pub delta: u32,
}

impl ModulusInfo {
    pub fn of(md: qcentral::zq::Modulus) -> Self {
        ModulusInfo {
            q: md.q(),
            p: md.p(),
            s: md.s(),
            delta: md.delta(),
        }
    }
}

/// The deterministic part of a command's output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub arguments: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub modulus: Option<ModulusInfo>,
    pub checks: Vec<Check>,
    /// Matrices, bases and orders behind the checks.
    pub data: BTreeMap<String, Value>,
}

/// A report together with wall-clock timings, which are kept apart so that
/// the report itself is byte-for-byte reproducible.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Output {
    pub report: Report,
    pub timing_ms: BTreeMap<String, u128>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            arguments: BTreeMap::new(),
            modulus: None,
            checks: Vec::new(),
            data: BTreeMap::new(),
        }
    }

    pub fn arg(&mut self, key: &str, value: impl ToString) {
        self.arguments.insert(key.to_string(), value.to_string());
    }

    pub fn check(&mut self, name: impl Into<String>, status: Status, details: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            status,
            details: details.into(),
        });
    }

    pub fn data(&mut self, key: impl Into<String>, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("report data serializes");
        self.data.insert(key.into(), v);
    }

    /// 1 on any failure, 3 when the only non-passing records are unmet
    /// hypotheses, 0 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            1
        } else if self.checks.iter().any(|c| c.status == Status::HypothesisNotMet) {
            3
        } else {
            0
        }
    }

    pub fn markdown(&self, timing: &BTreeMap<String, u128>) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# qcentral {}\n", self.command);
        if !self.arguments.is_empty() {
            for (k, v) in &self.arguments {
                let _ = writeln!(s, "- {k}: `{v}`");
            }
            s.push('\n');
        }
        if let Some(m) = &self.modulus {
            let _ = writeln!(s, "q = {} (p = {}, s = {}, delta = {})\n", m.q, m.p, m.s, m.delta);
        }
        let _ = writeln!(s, "| check | status | details | ms |");
        let _ = writeln!(s, "|---|---|---|---|");
        for c in &self.checks {
            let ms = timing.get(&c.name).map(|t| t.to_string()).unwrap_or_default();
            let _ = writeln!(s, "| {} | {} | {} | {} |", c.name, c.status.word(), c.details.replace('|', "\\|"), ms);
        }
        if !self.data.is_empty() {
            s.push_str("\n## data\n\n```json\n");
            s.push_str(&serde_json::to_string_pretty(&self.data).expect("data serializes"));
            s.push_str("\n```\n");
        }
        s
    }
}
