use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

/// Summary of one command run, serialized as JSON.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    #[serde(rename = "type")]
    pub ty: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<i32>,
    pub counts: BTreeMap<String, u128>,
    pub expected: BTreeMap<String, u128>,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub wall_time_s: f64,
    #[serde(skip)]
    started: Option<Instant>,
}

impl RunReport {
    pub fn new(ty: &str, m: Option<i32>) -> Self {
        let command = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
        Self {
            command,
            ty: ty.to_string(),
            m,
            counts: BTreeMap::new(),
            expected: BTreeMap::new(),
            checks: Vec::new(),
            pass: true,
            wall_time_s: 0.0,
            started: Some(Instant::now()),
        }
    }

    /// Records a count next to its expected value and checks them.
    pub fn count(&mut self, name: &str, actual: u128, expected: u128) {
        self.counts.insert(name.to_string(), actual);
        self.expected.insert(name.to_string(), expected);
        let detail = (actual != expected).then(|| format!("found {actual}, expected {expected}"));
        self.push(Check { name: format!("count {name}"), pass: actual == expected, detail, counterexample: None });
    }

    pub fn ok(&mut self, name: &str) {
        self.push(Check { name: name.to_string(), pass: true, detail: None, counterexample: None });
    }

    pub fn fail(&mut self, name: &str, detail: String, counterexample: Option<Value>) {
        self.push(Check { name: name.to_string(), pass: false, detail: Some(detail), counterexample });
    }

    /// Records the outcome of a check that yields its first failure.
    pub fn outcome(&mut self, name: &str, result: Result<(), (String, Value)>) {
        match result {
            Ok(()) => self.ok(name),
            Err((detail, ce)) => self.fail(name, detail, Some(ce)),
        }
    }

    fn push(&mut self, c: Check) {
        self.pass &= c.pass;
        self.checks.push(c);
    }

    pub fn finish(mut self) -> Self {
        if let Some(t) = self.started.take() {
            self.wall_time_s = t.elapsed().as_secs_f64();
        }
        self
    }
}
