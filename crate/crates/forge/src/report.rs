//! Run reports: named clauses with pass/fail, values and a plain-language anchor.

use std::fmt::Display;
use std::time::Instant;

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

/// Exact integers travel as decimal strings so no JSON reader rounds them.
pub fn exact(v: impl Display) -> Value {
    Value::String(v.to_string())
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InputHash {
    pub name: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClauseResult {
    pub name: String,
    /// The statement this clause checks, in words.
    pub anchor: String,
    pub passed: bool,
    pub values: Map<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timing {
    pub stage: String,
    pub seconds: f64,
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<InputHash>,
    pub clauses: Vec<ClauseResult>,
    pub timings: Vec<Timing>,
    started: Instant,
}

#[derive(Serialize)]
struct Body<'a> {
    command: &'a str,
    inputs: &'a [InputHash],
    clauses: &'a [ClauseResult],
    passed: bool,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        Self { command: command.into(), inputs: Vec::new(), clauses: Vec::new(), timings: Vec::new(), started: Instant::now() }
    }

    pub fn input(&mut self, name: impl Into<String>, bytes: &[u8]) {
        self.inputs.push(InputHash { name: name.into(), sha256: sha256_hex(bytes) });
    }

    /// Records a clause. `values` must be a JSON object.
    pub fn check(&mut self, name: &str, anchor: &str, passed: bool, values: Value) -> bool {
        let values = match values {
            Value::Object(m) => m,
            Value::Null => Map::new(),
            other => Map::from_iter([("value".to_string(), other)]),
        };
        log::info!("{} {name}", if passed { "pass" } else { "FAIL" });
        self.clauses.push(ClauseResult { name: name.into(), anchor: anchor.into(), passed, values });
        passed
    }

    /// Records a clause whose computation failed outright.
    pub fn error(&mut self, name: &str, anchor: &str, err: impl Display) {
        self.check(name, anchor, false, serde_json::json!({ "error": err.to_string() }));
    }

    /// Marks the end of a stage; elapsed time since the previous mark.
    pub fn lap(&mut self, stage: &str) {
        let now = Instant::now();
        self.timings.push(Timing { stage: stage.into(), seconds: now.duration_since(self.started).as_secs_f64() });
        self.started = now;
    }

    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn clause(&self, name: &str) -> Option<&ClauseResult> {
        self.clauses.iter().find(|c| c.name == name)
    }

    pub fn failed_clauses(&self) -> Vec<&str> {
        self.clauses.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }

    fn body(&self) -> Body<'_> {
        Body { command: &self.command, inputs: &self.inputs, clauses: &self.clauses, passed: self.passed() }
    }

    /// Hash of everything except timings.
    pub fn digest(&self) -> String {
        sha256_hex(serde_json::to_string(&self.body()).expect("report serializes").as_bytes())
    }

    /// Pretty JSON; timings only when asked for, so default output is byte-stable.
    pub fn to_json(&self, with_timings: bool) -> String {
        let mut v = serde_json::to_value(self.body()).expect("report serializes");
        let obj = v.as_object_mut().expect("object");
        obj.insert("digest".into(), Value::String(self.digest()));
        if with_timings {
            obj.insert("timings".into(), serde_json::to_value(&self.timings).expect("timings serialize"));
        }
        let mut s = serde_json::to_string_pretty(&v).expect("report serializes");
        s.push('\n');
        s
    }
}
