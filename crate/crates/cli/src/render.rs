use std::fmt::Write;

use cremona::MonomialSet;
use serde_json::Value;

use crate::{AnalysisReport, Format};

/// Renders a report. JSON is pretty-printed with the report's key order;
/// text prints `key: value` lines, except that `export-dot` and `generate`
/// print their DOT or monomial text verbatim so it can be piped on.
pub fn render(report: &AnalysisReport, format: Format) -> String {
    match format {
        Format::Json => {
            let value = serde_json::to_value(report).expect("reports serialize");
            let mut out = String::new();
            write_json(&mut out, &value, 0);
            out.push('\n');
            out
        }
        Format::Text => render_text(report),
    }
}

/// Indented JSON where arrays of scalars stay on one line.
fn write_json(out: &mut String, value: &Value, indent: usize) {
    let pad = |level: usize| "  ".repeat(level);
    match value {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (k, (key, v)) in map.iter().enumerate() {
                let _ = write!(out, "{}{}: ", pad(indent + 1), Value::String(key.clone()));
                write_json(out, v, indent + 1);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}}}", pad(indent));
        }
        Value::Array(items) if items.iter().any(|v| v.is_array() || v.is_object()) => {
            out.push_str("[\n");
            for (k, v) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_json(out, v, indent + 1);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}]", pad(indent));
        }
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(Value::to_string).collect();
            let _ = write!(out, "[{}]", inner.join(", "));
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

fn render_text(report: &AnalysisReport) -> String {
    let verbatim = match report.command {
        "export-dot" => report.payload.get("dot"),
        "generate" => report.payload.get("text"),
        _ => None,
    };
    if let Some(Value::String(text)) = verbatim {
        return text.clone();
    }

    let mut out = String::new();
    let _ = writeln!(out, "command: {}", report.command);
    if let Some(input) = &report.input {
        let shown = serde_json::from_value(input.clone())
            .ok()
            .and_then(|raw| MonomialSet::from_json_value(raw).ok())
            .map_or_else(|| input.to_string(), |set| set.to_string());
        let _ = writeln!(out, "input: {shown}");
    }
    for (key, value) in &report.payload {
        match value {
            Value::String(s) => {
                let _ = writeln!(out, "{key}: {s}");
            }
            other => {
                let _ = writeln!(out, "{key}: {other}");
            }
        }
    }
    for warning in &report.warnings {
        let _ = writeln!(out, "warning: {warning}");
    }
    out
}
