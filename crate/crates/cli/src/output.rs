//! Rendering of command results. Every format starts with the resolved
//! configuration: a `config` field in JSON, a `# config:` line otherwise.

use serde_json::{json, Value};

use crate::cli::Format;

pub fn render(format: Format, config: &Value, result: &Value) -> anyhow::Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(
            &json!({ "config": config, "result": result }),
        )? + "\n"),
        Format::Csv => render_csv(config, result),
        Format::Plain => Ok(render_plain(config, result)),
    }
}

/// Flattens nested objects into dotted keys. Arrays of scalars are joined
/// with spaces; other arrays are indexed like objects.
pub fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(items) if items.iter().all(is_scalar) => {
            let joined: Vec<String> = items.iter().map(scalar_text).collect();
            out.push((prefix.to_string(), joined.join(" ")));
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), v, out);
            }
        }
        scalar => out.push((prefix.to_string(), scalar_text(scalar))),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Rows of a result: each element of a top-level array of objects, or the
/// result itself.
fn rows(result: &Value) -> Vec<Vec<(String, String)>> {
    let items: Vec<&Value> = match result {
        Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
            items.iter().collect()
        }
        other => vec![other],
    };
    items
        .into_iter()
        .map(|item| {
            let mut cells = Vec::new();
            flatten("", item, &mut cells);
            cells
        })
        .collect()
}

fn columns(rows: &[Vec<(String, String)>]) -> Vec<String> {
    let mut cols: Vec<String> = Vec::new();
    for row in rows {
        for (k, _) in row {
            if !cols.contains(k) {
                cols.push(k.clone());
            }
        }
    }
    cols
}

fn cell<'a>(row: &'a [(String, String)], col: &str) -> &'a str {
    row.iter()
        .find(|(k, _)| k == col)
        .map_or("", |(_, v)| v.as_str())
}

fn render_csv(config: &Value, result: &Value) -> anyhow::Result<String> {
    let rows = rows(result);
    let cols = columns(&rows);
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(&cols)?;
    for row in &rows {
        writer.write_record(cols.iter().map(|c| cell(row, c)))?;
    }
    let body = String::from_utf8(writer.into_inner()?)?;
    Ok(format!("# config: {config}\n{body}"))
}

fn render_plain(config: &Value, result: &Value) -> String {
    let mut out = format!("# config: {config}\n");
    let rows = rows(result);
    if let [single] = rows.as_slice() {
        for (k, v) in single {
            if k.is_empty() {
                out.push_str(&format!("{v}\n"));
            } else {
                out.push_str(&format!("{k}: {v}\n"));
            }
        }
        return out;
    }
    let cols = columns(&rows);
    let widths: Vec<usize> = cols
        .iter()
        .map(|c| {
            rows.iter()
                .map(|r| cell(r, c).len())
                .max()
                .unwrap_or(0)
                .max(c.len())
        })
        .collect();
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    out.push_str(&line(cols.iter().map(String::as_str).collect()));
    for row in &rows {
        out.push_str(&line(cols.iter().map(|c| cell(row, c)).collect()));
    }
    out
}
