//! Format-independent output: JSON is canonical, text and CSV are derived.

use serde::Serialize;
use serde_json::Value;

use crate::args::Format;
use crate::Failure;

pub fn to_value<T: Serialize>(v: &T) -> Result<Value, Failure> {
    serde_json::to_value(v).map_err(|e| Failure::Usage(format!("serialization failed: {e}")))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// `key: value` lines; nested values as compact JSON.
pub fn text(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
            map.iter().map(|(k, v)| format!("{k:<width$}  {}\n", scalar(v))).collect()
        }
        other => format!("{}\n", scalar(other)),
    }
}

/// Header plus rows for an object or an array of objects.
pub fn csv(v: &Value) -> Result<String, Failure> {
    let rows: Vec<&serde_json::Map<String, Value>> = match v {
        Value::Object(map) => vec![map],
        Value::Array(items) => items
            .iter()
            .map(|i| i.as_object().ok_or_else(|| Failure::Usage("csv output needs records".into())))
            .collect::<Result<_, _>>()?,
        _ => return Err(Failure::Usage("csv output needs records".into())),
    };
    let Some(first) = rows.first() else { return Ok(String::new()) };
    let header: Vec<&String> = first.keys().collect();
    let mut out = header.iter().map(|h| csv_field(h)).collect::<Vec<_>>().join(",");
    out.push('\n');
    for row in rows {
        let line: Vec<String> =
            header.iter().map(|h| csv_field(&row.get(*h).map(scalar).unwrap_or_default())).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    Ok(out)
}

pub fn render(v: &Value, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => serde_json::to_string_pretty(v).map_err(|e| Failure::Usage(e.to_string())),
        Format::Text => Ok(text(v)),
        Format::Csv => csv(v),
    }
}
