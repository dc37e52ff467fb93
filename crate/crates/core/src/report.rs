use serde::Serialize;
use serde_json::{Map, Value};

/// Outcome of a named verification.
///
/// JSON: `{"check": name, "params": {...}, "pass": bool, "witness": ...}`.
/// The witness lists the individual items, each with the first mismatching
/// entry when it failed.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: Map<String, Value>,
    pub pass: bool,
    pub witness: Option<Value>,
    #[serde(skip)]
    pub items: Vec<CheckItem>,
}

/// One relation or identity inside a report.
#[derive(Clone, Debug, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<Mismatch>,
}

/// First entry where two matrices differ, and the difference there.
#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub row: usize,
    pub col: usize,
    pub diff: Value,
}

impl CheckItem {
    pub fn new(name: impl Into<String>, mismatch: Option<Mismatch>) -> Self {
        CheckItem {
            name: name.into(),
            pass: mismatch.is_none(),
            mismatch,
        }
    }

    pub fn flag(name: impl Into<String>, pass: bool) -> Self {
        CheckItem {
            name: name.into(),
            pass,
            mismatch: None,
        }
    }
}

impl CheckReport {
    pub fn from_items(check: &str, params: Value, items: Vec<CheckItem>) -> Self {
        let pass = items.iter().all(|i| i.pass);
        CheckReport {
            check: check.to_string(),
            params: match params {
                Value::Object(m) => m,
                _ => Map::new(),
            },
            pass,
            witness: Some(serde_json::to_value(&items).expect("items serialize")),
            items,
        }
    }

    pub fn failures(&self) -> Vec<String> {
        self.items.iter().filter(|i| !i.pass).map(|i| i.name.clone()).collect()
    }
}
