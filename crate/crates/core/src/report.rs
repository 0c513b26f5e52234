//! Serializable experiment reports.
//!
//! Reports are plain data with a fixed field set so that identical runs
//! produce byte-identical JSON. serde_json maps are BTree-backed, so
//! object keys inside `params` and `statistics` always serialize in
//! sorted order. Timestamps never enter the payload.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct BoundInfo {
    pub formula: String,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// The bound does not constrain anything at these parameters.
    Vacuous,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail => write!(f, "fail"),
            Verdict::Vacuous => write!(f, "vacuous"),
        }
    }
}

/// One experiment run: parameters in, measurements and verdict out.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub schema: u32,
    pub experiment: String,
    pub params: Value,
    pub seed: u64,
    pub trials: u64,
    pub statistics: Value,
    pub bound: Option<BoundInfo>,
    pub verdict: Verdict,
}

impl ExperimentReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One-row CSV flattening: nested keys joined with '.', columns in
    /// lexicographic order.
    pub fn to_csv(&self) -> String {
        value_to_csv(&serde_json::to_value(self).expect("report serializes"))
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }
}

/// Flatten any JSON value to a header + single data row.
pub fn value_to_csv(value: &Value) -> String {
    let mut cells = BTreeMap::new();
    flatten_value("", value, &mut cells);
    let header: Vec<&str> = cells.keys().map(String::as_str).collect();
    let row: Vec<String> = cells.values().map(|v| csv_escape(v)).collect();
    format!("{}\n{}\n", header.join(","), row.join(","))
}

fn flatten_value(prefix: &str, value: &Value, out: &mut BTreeMap<String, String>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten_value(&key, v, out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten_value(&format!("{prefix}.{i}"), v, out);
            }
        }
        Value::Null => {
            out.insert(prefix.to_string(), String::new());
        }
        Value::Bool(b) => {
            out.insert(prefix.to_string(), b.to_string());
        }
        Value::Number(x) => {
            out.insert(prefix.to_string(), x.to_string());
        }
        Value::String(s) => {
            out.insert(prefix.to_string(), s.clone());
        }
    }
}

fn csv_escape(cell: &str) -> String {
    if cell.contains(',') || cell.contains('"') || cell.contains('\n') {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> ExperimentReport {
        ExperimentReport {
            schema: REPORT_SCHEMA_VERSION,
            experiment: "demo".to_string(),
            params: json!({"n": 4, "m": 2}),
            seed: 7,
            trials: 100,
            statistics: json!({"hits": 3, "freq": 0.03, "hist": [[0, 9], [1, 91]]}),
            bound: Some(BoundInfo {
                formula: "x".to_string(),
                value: 0.5,
            }),
            verdict: Verdict::Pass,
        }
    }

    #[test]
    fn json_is_stable() {
        let a = sample().to_json();
        let b = sample().to_json();
        assert_eq!(a, b);
        assert!(a.contains("\"verdict\": \"pass\""));
    }

    #[test]
    fn csv_columns_sorted() {
        let csv = sample().to_csv();
        let header = csv.lines().next().unwrap();
        let cols: Vec<&str> = header.split(',').collect();
        let mut sorted = cols.clone();
        sorted.sort_unstable();
        assert_eq!(cols, sorted);
        assert!(header.contains("statistics.hist.0.0"));
    }
}
