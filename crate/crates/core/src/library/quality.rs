use serde::{Deserialize, Serialize};

use crate::script::is_identifier;
use crate::value::Value;

/// Rejection threshold: a result fails when strictly more than this share of
/// its leaves are empty.
pub const EMPTY_RATIO_LIMIT: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QualityFinding {
    pub total_leaves: usize,
    pub empty_leaves: usize,
    pub ratio: f64,
    pub flagged_paths: Vec<String>,
    pub passed: bool,
}

/// Whether a scalar leaf is a default-ish sentinel: null, the number 0, or
/// the strings "unknown"/"none" in any case.
pub fn is_empty_leaf(value: &Value) -> bool {
    match value {
        Value::Null => true,
        Value::Number(n) => *n == 0.0,
        Value::Str(s) => s.eq_ignore_ascii_case("unknown") || s.eq_ignore_ascii_case("none"),
        Value::Bool(_) => false,
        Value::List(items) => items.is_empty(),
        Value::Record(map) => map.is_empty(),
    }
}

/// Flattens `value` to its leaves and reports the share of empty ones.
/// Empty containers count as one empty leaf.
pub fn quality_check(value: &Value) -> QualityFinding {
    let mut total = 0;
    let mut flagged = Vec::new();
    walk(value, "$".to_string(), &mut total, &mut flagged);
    let empty = flagged.len();
    let ratio = if total == 0 { 0.0 } else { empty as f64 / total as f64 };
    QualityFinding { total_leaves: total, empty_leaves: empty, ratio, flagged_paths: flagged, passed: ratio <= EMPTY_RATIO_LIMIT }
}

fn walk(value: &Value, path: String, total: &mut usize, flagged: &mut Vec<String>) {
    match value {
        Value::List(items) if !items.is_empty() => {
            for (i, item) in items.iter().enumerate() {
                walk(item, format!("{path}[{i}]"), total, flagged);
            }
        }
        Value::Record(map) if !map.is_empty() => {
            for (key, item) in map {
                let child = if is_identifier(key) {
                    format!("{path}.{key}")
                } else {
                    format!("{path}[{}]", serde_json::to_string(key).expect("string serializes"))
                };
                walk(item, child, total, flagged);
            }
        }
        leaf => {
            *total += 1;
            if is_empty_leaf(leaf) {
                flagged.push(path);
            }
        }
    }
}
