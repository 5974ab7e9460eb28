//! The run report envelope and its text rendering.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use trivext_core::corpus::CorpusReport;
use trivext_core::criteria::Verdict;
use trivext_core::hochschild::HHReport;
use trivext_core::report::{AlgebraSummary, CartanSummary, TrivialExtensionSummary, SCHEMA};

#[derive(Debug, Serialize)]
pub struct Input {
    pub name: String,
    pub sha256: String,
    pub bytes: usize,
}

impl Input {
    pub fn new(name: &str, text: &str) -> Self {
        Input {
            name: name.to_string(),
            sha256: hex::encode(Sha256::digest(text.as_bytes()).as_slice()),
            bytes: text.len(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CartanSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra: Option<CartanSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra_note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trivial_extension: Option<CartanSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trivial_extension_note: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Corroboration {
    pub n: usize,
    pub dim: usize,
    pub nonzero: bool,
}

#[derive(Debug, Serialize)]
pub struct HHCheck {
    pub report: HHReport,
    pub degrees: Vec<Corroboration>,
    /// Every computed degree `1..=n` is nonzero, or the verdict is Unknown.
    pub consistent: bool,
}

#[derive(Debug, Serialize)]
pub struct StageTime {
    pub stage: &'static str,
    pub millis: f64,
}

#[derive(Debug, Default, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub options: serde_json::Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<Input>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trivial_extension: Option<TrivialExtensionSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate_verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cartan: Option<CartanSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hh: Option<HHReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hh_check: Option<HHCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corpus: Option<CorpusReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Vec<StageTime>>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            schema: SCHEMA,
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            ..Default::default()
        }
    }

    pub fn option(&mut self, key: &str, value: impl Into<Value>) {
        self.options.insert(key.to_string(), value.into());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut out = String::new();
        render(&value, 0, &mut out);
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Object(m) if m.is_empty() => Some("-".into()),
        Value::Bool(b) => Some(if *b { "yes" } else { "no" }.into()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => Some(format!(
            "[{}]",
            a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")
        )),
        _ => None,
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = k.replace('_', " ");
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{key}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}[{i}]\n"));
                        render(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
