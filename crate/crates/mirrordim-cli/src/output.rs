//! Result envelope and serialization: JSON by default, flattened CSV on
//! request. Exact rationals are always rendered as `p/q` strings and every
//! float carries its radius, so output is loss-free and byte-stable.

use mirrordim::real::{format_rational, PrecisionReal};
use mirrordim::LogLinearValue;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

pub fn rational_json(r: &BigRational) -> Value {
    Value::String(format_rational(r))
}

pub fn precision_json(p: &PrecisionReal) -> Value {
    json!({ "value": p.value, "radius": p.radius })
}

pub fn log_linear_json(v: &LogLinearValue, q: Option<&mirrordim::Base>) -> Value {
    let (terms, q_coeff) = v.terms();
    let term_values: Vec<Value> = terms
        .iter()
        .map(|(p, c)| json!({ "log": p, "coeff": format_rational(c) }))
        .collect();
    let mut obj = Map::new();
    obj.insert("expression".into(), Value::String(v.to_string()));
    obj.insert("terms".into(), Value::Array(term_values));
    obj.insert("q_coeff".into(), Value::String(format_rational(&q_coeff)));
    if let Some(q) = q {
        obj.insert("float".into(), precision_json(&v.eval(q)));
    }
    Value::Object(obj)
}

pub fn signed_digits_string(digits: &[i32]) -> String {
    digits
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// The stable output envelope shared by every subcommand.
pub fn envelope(command: &str, payload: Value, provenance: Value, tolerance: f64) -> Value {
    json!({
        "status": "ok",
        "command": command,
        "payload": payload,
        "provenance": provenance,
        "precision": { "tolerance": tolerance },
    })
}

pub fn error_envelope(command: &str, kind: &str, message: &str) -> Value {
    json!({
        "status": "error",
        "command": command,
        "kind": kind,
        "message": message,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("serializable"),
        Format::Csv => {
            let mut rows = Vec::new();
            flatten("", value, &mut rows);
            let mut out = String::from("key,value");
            for (k, v) in rows {
                out.push('\n');
                out.push_str(&csv_escape(&k));
                out.push(',');
                out.push_str(&csv_escape(&v));
            }
            out
        }
    }
}

fn flatten(prefix: &str, value: &Value, rows: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, v, rows);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), v, rows);
            }
        }
        Value::Null => rows.push((prefix.to_string(), String::new())),
        Value::Bool(b) => rows.push((prefix.to_string(), b.to_string())),
        Value::Number(n) => rows.push((prefix.to_string(), n.to_string())),
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
