use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub property: String,
    pub pass: bool,
    pub witness: Value,
}

impl Verdict {
    pub fn new(property: impl Into<String>, pass: bool) -> Self {
        Verdict { property: property.into(), pass, witness: Value::Null }
    }

    pub fn with_witness(property: impl Into<String>, pass: bool, witness: Value) -> Self {
        Verdict { property: property.into(), pass, witness }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    /// Input role to `sha256:<hex>` of the file bytes.
    pub inputs: BTreeMap<String, String>,
    pub results: Value,
    pub verdicts: Vec<Verdict>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), inputs: BTreeMap::new(), results: Value::Null, verdicts: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is serializable");
        s.push('\n');
        s
    }
}

/// Tallies one property over many cases, keeping the first counterexample.
#[derive(Debug, Clone)]
pub struct Tally {
    pub property: String,
    pub cases: usize,
    pub failures: usize,
    pub first_counterexample: Option<Value>,
}

impl Tally {
    pub fn new(property: impl Into<String>) -> Self {
        Tally { property: property.into(), cases: 0, failures: 0, first_counterexample: None }
    }

    pub fn record(&mut self, ok: bool, counterexample: impl FnOnce() -> Value) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_counterexample.is_none() {
                self.first_counterexample = Some(counterexample());
            }
        }
    }

    pub fn summary(&self) -> Value {
        serde_json::json!({
            "property": self.property,
            "cases": self.cases,
            "failures": self.failures,
        })
    }

    pub fn verdict(&self) -> Verdict {
        Verdict::with_witness(
            self.property.clone(),
            self.failures == 0,
            self.first_counterexample.clone().unwrap_or(Value::Null),
        )
    }
}
