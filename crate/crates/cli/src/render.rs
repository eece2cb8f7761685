//! Text and CSV renderings of the JSON reports. Both are derived from the same
//! `serde_json::Value`, so every format carries the same numbers.

use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            text(value, 0, &mut out);
            out
        }
        Format::Csv => csv(value),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn is_scalar_row(v: &Value) -> bool {
    matches!(v, Value::Array(items) if items.iter().all(is_scalar))
}

fn is_matrix(v: &Value) -> bool {
    matches!(v, Value::Array(rows) if !rows.is_empty() && rows.iter().all(|r| matches!(r, Value::Array(x) if !x.is_empty())) && rows.iter().all(is_scalar_row))
}

fn inline(items: &[Value]) -> String {
    let parts: Vec<String> = items.iter().map(scalar).collect();
    format!("[{}]", parts.join(", "))
}

fn matrix_lines(rows: &[Value], indent: usize, out: &mut String) {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.as_array().expect("row").iter().map(scalar).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
    for row in cells {
        let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(&" ".repeat(indent));
        out.push_str(&padded.join(" "));
        out.push('\n');
    }
}

fn text(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_scalar(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar(x)));
                } else if is_matrix(x) {
                    out.push_str(&format!("{pad}{k}:\n"));
                    matrix_lines(x.as_array().expect("array"), indent + 2, out);
                } else if is_scalar_row(x) {
                    out.push_str(&format!(
                        "{pad}{k}: {}\n",
                        inline(x.as_array().expect("array"))
                    ));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    text(x, indent + 2, out);
                }
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                if is_scalar(x) {
                    out.push_str(&format!("{pad}- {}\n", scalar(x)));
                } else if is_scalar_row(x) {
                    out.push_str(&format!(
                        "{pad}- {}\n",
                        inline(x.as_array().expect("array"))
                    ));
                } else {
                    out.push_str(&format!("{pad}- [{i}]\n"));
                    text(x, indent + 2, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

/// Scalars and scalar lists go to a `summary` section keyed by dotted path; every
/// matrix gets a section of its own.
fn csv(v: &Value) -> String {
    let mut summary: Vec<Vec<String>> = Vec::new();
    let mut matrices: Vec<(String, Vec<Vec<String>>)> = Vec::new();
    flatten(v, String::new(), &mut summary, &mut matrices);

    let mut out = String::new();
    out.push_str("# summary\n");
    out.push_str(&records(&summary));
    for (name, rows) in matrices {
        out.push_str(&format!("# matrix {name}\n"));
        out.push_str(&records(&rows));
    }
    out
}

fn records(rows: &[Vec<String>]) -> String {
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(Vec::new());
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn flatten(
    v: &Value,
    path: String,
    summary: &mut Vec<Vec<String>>,
    matrices: &mut Vec<(String, Vec<Vec<String>>)>,
) {
    let join = |k: &str| {
        if path.is_empty() {
            k.to_string()
        } else {
            format!("{path}.{k}")
        }
    };
    if is_scalar(v) {
        summary.push(vec![path, scalar(v)]);
    } else if is_matrix(v) {
        let rows = v
            .as_array()
            .expect("array")
            .iter()
            .map(|r| r.as_array().expect("row").iter().map(scalar).collect())
            .collect();
        matrices.push((path, rows));
    } else if is_scalar_row(v) {
        let mut row = vec![path];
        row.extend(v.as_array().expect("array").iter().map(scalar));
        summary.push(row);
    } else if let Value::Array(items) = v {
        for (i, x) in items.iter().enumerate() {
            flatten(x, join(&i.to_string()), summary, matrices);
        }
    } else if let Value::Object(map) = v {
        for (k, x) in map {
            flatten(x, join(k), summary, matrices);
        }
    }
}
