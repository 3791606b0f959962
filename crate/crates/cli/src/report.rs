//! Machine-readable command reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: &str = "hardytree/1";

/// A number as JSON; non-finite values become the strings `"inf"`, `"-inf"`, `"nan"`.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
    } else if x.is_nan() {
        Value::String("nan".into())
    } else if x > 0.0 {
        Value::String("inf".into())
    } else {
        Value::String("-inf".into())
    }
}

pub fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Quantity {
    pub value: Value,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Settings {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    pub seed: u64,
    pub tol: f64,
    pub starts: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub input_digest: String,
    pub settings: Settings,
    pub quantities: BTreeMap<String, Quantity>,
    /// Structured outputs that are not single numbers.
    pub details: BTreeMap<String, Value>,
    /// Tree files produced by the command, keyed by name.
    pub trees: BTreeMap<String, String>,
    pub warnings: Vec<String>,
    /// False when some iterative computation stopped before its tolerance.
    pub converged: bool,
}

impl Report {
    pub fn new(command: &str, input_digest: String, settings: Settings) -> Self {
        Report {
            schema: SCHEMA,
            command: command.to_string(),
            input_digest,
            settings,
            quantities: BTreeMap::new(),
            details: BTreeMap::new(),
            trees: BTreeMap::new(),
            warnings: Vec::new(),
            converged: true,
        }
    }

    pub fn quantity(&mut self, name: &str, value: f64, method: &str) {
        self.quantity_with(name, value, method, None);
    }

    pub fn quantity_with(&mut self, name: &str, value: f64, method: &str, witness: Option<Value>) {
        self.quantities.insert(
            name.to_string(),
            Quantity {
                value: num(value),
                method: method.to_string(),
                witness,
            },
        );
    }

    pub fn detail(&mut self, name: &str, value: Value) {
        self.details.insert(name.to_string(), value);
    }

    pub fn warn(&mut self, msg: impl Into<String>) {
        self.warnings.push(msg.into());
    }

    /// The numeric value of a quantity, `inf` included.
    pub fn value(&self, name: &str) -> Option<f64> {
        match &self.quantities.get(name)?.value {
            Value::Number(n) => n.as_f64(),
            Value::String(s) if s == "inf" => Some(f64::INFINITY),
            Value::String(s) if s == "-inf" => Some(f64::NEG_INFINITY),
            _ => None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Human-readable table.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let s = &self.settings;
        let _ = write!(out, "{}", self.command);
        if let (Some(p), Some(q)) = (&s.p, &s.q) {
            let _ = write!(out, "  p={p} q={q}");
        }
        let _ = writeln!(out, "  seed={} tol={:e} input={}", s.seed, s.tol, self.input_digest);
        let width = self.quantities.keys().map(String::len).max().unwrap_or(0);
        for (name, q) in &self.quantities {
            let v = match &q.value {
                Value::Number(n) => format!("{:.10}", n.as_f64().unwrap_or(f64::NAN)),
                other => other.as_str().unwrap_or("?").to_string(),
            };
            let _ = writeln!(out, "  {name:<width$}  {v:>20}  {}", q.method);
        }
        for (name, v) in &self.details {
            let _ = writeln!(out, "  {name}: {v}");
        }
        for (name, text) in &self.trees {
            let _ = writeln!(out, "--- {name}");
            out += text;
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        if !self.converged {
            let _ = writeln!(out, "warning: some estimates did not converge");
        }
        out
    }
}
