//! The common envelope every subcommand prints.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    /// Whether a failure should turn the exit code nonzero.
    pub enforced: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub input_digest: Option<String>,
    pub parameters: BTreeMap<String, String>,
    pub results: BTreeMap<String, Value>,
    pub assertions: Vec<Assertion>,
    pub wall_time_ms: u128,
    #[serde(skip)]
    started: Option<Instant>,
}

pub fn digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            input_digest: None,
            parameters: BTreeMap::new(),
            results: BTreeMap::new(),
            assertions: Vec::new(),
            wall_time_ms: 0,
            started: Some(Instant::now()),
        }
    }

    pub fn input(mut self, bytes: &[u8]) -> Self {
        self.input_digest = Some(digest(bytes));
        self
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.to_string(), value.to_string());
    }

    pub fn result(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("report values serialize");
        self.results.insert(key.to_string(), v);
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.assertions.push(Assertion { name: name.to_string(), passed, enforced: true, detail: detail.into() });
    }

    /// Records an assertion that is reported but never fails the run.
    pub fn note(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.assertions.push(Assertion { name: name.to_string(), passed, enforced: false, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed || !a.enforced)
    }

    pub fn failures(&self) -> Vec<&Assertion> {
        self.assertions.iter().filter(|a| a.enforced && !a.passed).collect()
    }

    pub fn finish(mut self) -> Self {
        if let Some(t) = self.started.take() {
            self.wall_time_ms = t.elapsed().as_millis();
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Aligned two-column text.
    pub fn to_text(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![("command".into(), self.command.clone())];
        if let Some(d) = &self.input_digest {
            rows.push(("input".into(), d.clone()));
        }
        for (k, v) in &self.parameters {
            rows.push((format!("param.{k}"), v.clone()));
        }
        for (k, v) in &self.results {
            rows.push((k.clone(), render(v)));
        }
        for a in &self.assertions {
            let tag = match (a.passed, a.enforced) {
                (true, _) => "PASS",
                (false, true) => "FAIL",
                (false, false) => "NOTE",
            };
            rows.push((format!("{tag} {}", a.name), a.detail.clone()));
        }
        rows.push(("wall_time_ms".into(), self.wall_time_ms.to_string()));
        let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
    }
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            items.iter().map(render).collect::<Vec<_>>().join(" ")
        }
        other => other.to_string(),
    }
}
