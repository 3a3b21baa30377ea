use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use qdist::distinguish::OptimizationResult;

use crate::fixture::{vector_to_data, VectorData};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    pub value: f64,
    /// Counts render without decimals.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub integer: bool,
}

/// Machine-readable record of one invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs_digest: String,
    pub seed: u64,
    pub values: Vec<NamedValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound_kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probe: Option<VectorData>,
    /// Free-form structured details (restart statistics, hit lists, suite checks).
    pub diagnostics: Map<String, Value>,
    /// Lines printed in text mode after the values.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub messages: Vec<String>,
    pub wall_time_s: f64,
}

/// SHA-256 over the command name and every input, each length-prefixed.
pub fn digest(command: &str, inputs: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    h.update((command.len() as u64).to_le_bytes());
    h.update(command.as_bytes());
    for input in inputs {
        h.update((input.len() as u64).to_le_bytes());
        h.update(input);
    }
    h.finalize().iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// JSON number, or null for values JSON cannot carry.
pub fn number(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

impl RunReport {
    pub fn new(command: &str, inputs_digest: String, seed: u64) -> Self {
        Self {
            command: command.to_string(),
            inputs_digest,
            seed,
            values: Vec::new(),
            bound_kind: None,
            probe: None,
            diagnostics: Map::new(),
            messages: Vec::new(),
            wall_time_s: 0.0,
        }
    }

    pub fn value(mut self, name: &str, value: f64) -> Self {
        self.values.push(NamedValue {
            name: name.to_string(),
            value,
            integer: false,
        });
        self
    }

    pub fn count(mut self, name: &str, n: u64) -> Self {
        self.values.push(NamedValue {
            name: name.to_string(),
            value: n as f64,
            integer: true,
        });
        self
    }

    pub fn bound(mut self, kind: &str) -> Self {
        self.bound_kind = Some(kind.to_string());
        self
    }

    pub fn diag(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.diagnostics.insert(key.to_string(), value.into());
        self
    }

    pub fn message(mut self, line: impl Into<String>) -> Self {
        self.messages.push(line.into());
        self
    }

    /// Records an optimizer result: its value, bound kind, probe and restart statistics.
    pub fn with_search(self, name: &str, r: &OptimizationResult) -> Self {
        let values: Vec<Value> = r.per_restart_values.iter().map(|&v| number(v)).collect();
        let mut out = self
            .value(name, r.value)
            .bound(r.bound.as_str())
            .diag("restarts_run", r.restarts_run)
            .diag("converged", r.converged)
            .diag("converged_restarts", r.converged_restarts)
            .diag("total_iterations", r.total_iterations)
            .diag("per_restart_values", values);
        if let Some(p) = &r.prior {
            let w: Vec<Value> = p.weights().iter().map(|&x| number(x)).collect();
            out = out.diag("prior", w);
        }
        out.probe = Some(vector_to_data(r.probe.amplitudes()));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable rendering with values to 6 decimals.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for v in &self.values {
            if v.integer {
                let _ = writeln!(s, "{}: {}", v.name, v.value);
            } else {
                let _ = writeln!(s, "{}: {:.6}", v.name, v.value);
            }
        }
        if let Some(b) = &self.bound_kind {
            let _ = writeln!(s, "bound: {b}");
        }
        for m in &self.messages {
            let _ = writeln!(s, "{m}");
        }
        for key in ["restarts_run", "converged_restarts", "converged"] {
            if let Some(v) = self.diagnostics.get(key) {
                let _ = writeln!(s, "{key}: {v}");
            }
        }
        s
    }
}
