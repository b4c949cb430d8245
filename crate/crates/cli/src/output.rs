//! Output documents and their tree (JSON) and CSV renderings.
//!
//! Every float is printed with 6 decimal places. Rust's fixed-precision
//! formatting rounds the exact binary value, ties to even.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::Path;
use std::str::FromStr;

use clap::ValueEnum;
use serde_json::{Map, Number, Value};

pub const TOOL: &str = "ncdchain";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tree,
    Csv,
}

/// `x` rounded to 6 decimals, as a JSON number that keeps its textual form.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let text = format!("{x:.6}");
    // -0.000000 prints the same as 0.000000 in every document.
    let text = if text == "-0.000000" { "0.000000".to_string() } else { text };
    Value::Number(Number::from_str(&text).expect("formatted float parses"))
}

/// Rewrites every non-integer number in `v` with 6-decimal formatting.
pub fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => num(n.as_f64().unwrap()),
        Value::Array(items) => Value::Array(items.into_iter().map(round_floats).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_floats(v))).collect()),
        other => other,
    }
}

/// Top-level fields shared by every document.
pub fn header(command: &str) -> Map<String, Value> {
    let mut doc = Map::new();
    doc.insert("tool".into(), TOOL.into());
    doc.insert("version".into(), VERSION.into());
    doc.insert("command".into(), command.into());
    doc.insert("rng_id".into(), ncdchain::rng::RNG_ID.into());
    doc
}

pub fn render(doc: &Map<String, Value>, format: Format) -> String {
    match format {
        Format::Tree => {
            let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
            s.push('\n');
            s
        }
        Format::Csv => render_csv(doc),
    }
}

/// A document with a `rows` array renders as a table, with the other scalar
/// fields as leading `# key=value` comments. Anything else flattens into
/// `field,value` lines with dotted paths.
fn render_csv(doc: &Map<String, Value>) -> String {
    let mut out = String::new();
    if let Some(Value::Array(rows)) = doc.get("rows") {
        let mut meta = Vec::new();
        for (k, v) in doc.iter().filter(|(k, _)| *k != "rows") {
            flatten(k, v, &mut meta);
        }
        for (k, v) in meta {
            let _ = writeln!(out, "# {k}={v}");
        }
        let columns: Vec<String> = match rows.first() {
            Some(Value::Object(first)) => first.keys().cloned().collect(),
            _ => Vec::new(),
        };
        let _ = writeln!(out, "{}", columns.join(","));
        for row in rows {
            let cells: Vec<String> = columns.iter().map(|c| csv_cell(row.get(c).unwrap_or(&Value::Null))).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
    } else {
        let mut flat = Vec::new();
        for (k, v) in doc {
            flatten(k, v, &mut flat);
        }
        out.push_str("field,value\n");
        for (k, v) in flat {
            let _ = writeln!(out, "{},{}", k, escape(&v));
        }
    }
    out
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                flatten(&format!("{prefix}.{k}"), child, out);
            }
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), child, out);
            }
        }
        scalar => out.push((prefix.to_string(), scalar_text(scalar))),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_cell(v: &Value) -> String {
    escape(&scalar_text(v))
}

fn escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn write_output(text: &str, out: Option<&Path>) -> io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}
