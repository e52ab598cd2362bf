//! Reports: one verdict per named check plus a result payload.
//!
//! Keys are sorted and nothing time-dependent is included, so identical
//! inputs and seed give byte-identical output. Timing goes to stderr.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub checks: Vec<Check>,
    pub result: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report { command: command.to_string(), inputs: Vec::new(), checks: Vec::new(), result: Map::new() }
    }

    pub fn input(&mut self, label: &str, bytes: &[u8]) {
        let digest = Sha256::digest(bytes);
        self.inputs.push((label.to_string(), format!("{digest:x}")));
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: Value) -> bool {
        self.checks.push(Check { name: name.into(), pass, detail });
        pass
    }

    pub fn set(&mut self, key: &str, v: Value) {
        self.result.insert(key.to_string(), v);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn to_json(&self) -> Value {
        let inputs: Vec<Value> = self.inputs.iter().map(|(l, h)| json!({ "source": l, "sha256": h })).collect();
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut o = Map::new();
                o.insert("name".into(), json!(c.name));
                o.insert("pass".into(), json!(c.pass));
                if !c.detail.is_null() {
                    o.insert(if c.pass { "detail" } else { "counterexample" }.into(), c.detail.clone());
                }
                Value::Object(o)
            })
            .collect();
        json!({
            "command": self.command,
            "inputs": inputs,
            "checks": checks,
            "verdict": if self.passed() { "pass" } else { "fail" },
            "result": Value::Object(self.result.clone()),
        })
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("json");
        s.push('\n');
        s
    }
}
