//! Report rendering. Every report is built once as a JSON value; the text
//! form is a flattening of that value, so both formats carry the same data.

use serde_json::{Map, Value};
use std::fmt::Write as _;

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Wraps `body` (an object) with the schema version and command name.
pub fn document(command: &str, body: Value) -> Value {
    let mut doc = Map::new();
    doc.insert("schema_version".into(), SCHEMA_VERSION.into());
    doc.insert("command".into(), command.into());
    if let Value::Object(fields) = body {
        doc.extend(fields);
    }
    Value::Object(doc)
}

pub fn render(doc: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("reports are plain JSON");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            let mut tables = Vec::new();
            if let Value::Object(fields) = doc {
                write_fields(&mut out, &mut tables, "", fields);
            }
            for (name, rows) in tables {
                write_table(&mut out, &name, rows);
            }
            out
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) if items.is_empty() => "-".into(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(","),
        Value::Object(_) => serde_json::to_string(v).unwrap_or_default(),
        other => other.to_string(),
    }
}

fn is_table(v: &Value) -> bool {
    matches!(v, Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object))
}

fn write_fields<'a>(
    out: &mut String,
    tables: &mut Vec<(String, &'a [Value])>,
    prefix: &str,
    fields: &'a Map<String, Value>,
) {
    for (k, v) in fields {
        if prefix.is_empty() && k == "schema_version" {
            continue;
        }
        let key = format!("{prefix}{k}");
        match v {
            Value::Object(inner) => write_fields(out, tables, &format!("{key}."), inner),
            Value::Array(items) if is_table(v) => tables.push((key, items)),
            _ => writeln!(out, "{key}: {}", scalar(v)).unwrap(),
        }
    }
}

fn write_table(out: &mut String, name: &str, rows: &[Value]) {
    let mut columns: Vec<String> = Vec::new();
    for row in rows {
        if let Value::Object(fields) = row {
            for k in fields.keys() {
                if !columns.contains(k) {
                    columns.push(k.clone());
                }
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|row| {
            columns
                .iter()
                .map(|c| scalar(row.get(c).unwrap_or(&Value::Null)))
                .collect()
        })
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| {
            cells
                .iter()
                .map(|r| r[i].len())
                .chain([c.len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |out: &mut String, items: &[String]| {
        let padded: Vec<String> = items
            .iter()
            .zip(&widths)
            .map(|(s, &w)| format!("{s:<w$}"))
            .collect();
        writeln!(out, "{}", padded.join("  ").trim_end()).unwrap();
    };
    writeln!(out, "\n{name}:").unwrap();
    line(out, &columns);
    for r in &cells {
        line(out, r);
    }
}
