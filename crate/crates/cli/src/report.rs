use std::fmt::Write as _;

use dukan_core::linalg::IntMatrix;
use dukan_core::objects::Failure;
use dukan_core::Error;
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

/// Everything that ends a run early, mapped onto the exit-code contract.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable input, malformed JSON, wrong object kind, bad flags.
    Input(String),
    /// The input parsed but is mathematically unusable.
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Math(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Math(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => CliError::Input(m),
            other => CliError::Math(other.to_string()),
        }
    }
}

pub fn mat(m: &IntMatrix) -> Value {
    serde_json::to_value(m).expect("matrices serialize")
}

pub fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn failure(identity: impl Into<String>, lhs: &IntMatrix, rhs: &IntMatrix) -> Value {
    json!({ "identity": identity.into(), "lhs": mat(lhs), "rhs": mat(rhs) })
}

pub fn failures(list: &[Failure]) -> Vec<Value> {
    list.iter().map(|f| failure(f.identity.clone(), &f.lhs, &f.rhs)).collect()
}

#[derive(Debug, Default)]
pub struct Report {
    pub command: Vec<String>,
    pub input_digest: Option<String>,
    pub summary: Map<String, Value>,
    pub degrees: Vec<Value>,
    pub failures: Vec<Value>,
    /// An object produced by the command, emitted under `"object"`.
    pub object: Option<Value>,
    pub error: Option<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.error.is_none()
    }

    pub fn note(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.insert(key.into(), value.into());
    }

    pub fn to_value(&self) -> Value {
        let mut v = json!({
            "command": self.command,
            "input_digest": self.input_digest,
            "status": if self.passed() { "ok" } else { "fail" },
            "summary": self.summary,
            "degrees": self.degrees,
            "failures": self.failures,
        });
        if let Some(o) = &self.object {
            v["object"] = o.clone();
        }
        if let Some(e) = &self.error {
            v["error"] = Value::String(e.clone());
        }
        v
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command.join(" "));
        if let Some(d) = &self.input_digest {
            let _ = writeln!(out, "input: {d}");
        }
        for (k, v) in &self.summary {
            let _ = writeln!(out, "{k}: {}", compact(v));
        }
        for d in &self.degrees {
            let _ = writeln!(out, "{}", degree_line(d));
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error: {e}");
        }
        for f in &self.failures {
            let _ = writeln!(out, "FAILED {}", f["identity"].as_str().unwrap_or("?"));
            for side in ["lhs", "rhs"] {
                if let Some(m) = f.get(side) {
                    let _ = writeln!(out, "  {side} = {}", compact(m));
                }
            }
        }
        let _ = writeln!(out, "status: {}", if self.passed() { "ok" } else { "fail" });
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(compact).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

fn degree_line(d: &Value) -> String {
    let Some(obj) = d.as_object() else {
        return compact(d);
    };
    let mut parts = Vec::new();
    for (k, v) in obj {
        if k == "degree" {
            continue;
        }
        parts.push(format!("{k}={}", compact(v)));
    }
    format!("degree {}: {}", obj.get("degree").map(compact).unwrap_or_default(), parts.join(" "))
}

/// Largest bit length among integer strings in `v`.
pub fn max_entry_bits(v: &Value) -> u64 {
    match v {
        Value::String(s) => s.parse::<BigInt>().map(|x| x.bits()).unwrap_or(0),
        Value::Array(items) => items.iter().map(max_entry_bits).max().unwrap_or(0),
        Value::Object(map) => map.values().map(max_entry_bits).max().unwrap_or(0),
        _ => 0,
    }
}
