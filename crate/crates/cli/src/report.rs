//! Report envelope and output formats.

use mahler_core::numerics::BigComplex;
use mahler_core::Error;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Ball as JSON: decimal centre parts plus the binary exponent of the radius.
pub fn ball(v: &BigComplex) -> Value {
    let digits = v.significant_decimals().clamp(1, 2000);
    let err = v.err_log2();
    json!({
        "re": v.re_decimal(digits),
        "im": v.im_decimal(digits),
        "err_exponent": if err.is_finite() { Some(err.ceil() as i64) } else { None },
    })
}

/// Top-level report: the run's identity first, then the result's fields.
pub fn envelope(command: &str, config: Value, seed: u64, bits: u32, result: Value) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), command.into());
    m.insert("config".into(), config);
    m.insert("seed".into(), seed.into());
    m.insert("bits".into(), bits.into());
    m.insert("version".into(), mahler_core::VERSION.into());
    match result {
        Value::Object(fields) => {
            for (k, v) in fields {
                // a suite's own bits/seed (e.g. 0 for exact suites) must not mask the run's
                let k = if m.contains_key(&k) { format!("result_{k}") } else { k };
                m.insert(k, v);
            }
        }
        other => {
            m.insert("result".into(), other);
        }
    }
    m
}

pub fn error_object(e: &Error) -> Value {
    let debug = format!("{e:?}");
    let kind = debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string();
    json!({ "kind": kind, "message": e.to_string(), "computational": e.is_computational() })
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Rows are the report's `items` when present, else one row of its fields.
fn to_csv(report: &Map<String, Value>) -> String {
    let rows: Vec<Map<String, Value>> = match report.get("items") {
        Some(Value::Array(items)) => items.iter().filter_map(|i| i.as_object().cloned()).collect(),
        _ => vec![report.clone()],
    };
    let mut header: Vec<String> = Vec::new();
    for r in &rows {
        for k in r.keys() {
            if !header.contains(k) {
                header.push(k.clone());
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).expect("in-memory write");
    for r in &rows {
        w.write_record(header.iter().map(|k| r.get(k).map_or(String::new(), cell))).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

fn to_text(report: &Map<String, Value>) -> String {
    let mut out = String::new();
    for (k, v) in report {
        match v {
            Value::Array(items) if k == "items" => {
                out.push_str("items:\n");
                for i in items {
                    out.push_str(&format!("  {i}\n"));
                }
            }
            other => out.push_str(&format!("{k}: {}\n", cell(other))),
        }
    }
    out
}

pub fn render(report: &Map<String, Value>, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => to_csv(report),
        Format::Text => to_text(report),
    }
}
