use serde_json::Value;

use crate::Format;

pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("reports serialize"),
        Format::Table => table(report),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|x| !x.is_object()) => {
            format!("[{}]", items.iter().map(scalar).collect::<Vec<_>>().join(", "))
        }
        other => other.to_string(),
    }
}

fn is_record_list(v: &Value) -> bool {
    matches!(v, Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object))
}

/// Scalars as `key  value` lines; nested objects indented under their key;
/// lists of objects as aligned tables.
fn table(report: &Value) -> String {
    let mut out = String::new();
    emit(report, 0, &mut out);
    out.truncate(out.trim_end().len());
    out
}

fn emit(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            for (k, x) in map {
                if x.is_object() || is_record_list(x) {
                    out.push_str(&format!("{pad}{k}\n"));
                    emit(x, depth + 1, out);
                } else {
                    out.push_str(&format!("{pad}{k:width$}  {}\n", scalar(x)));
                }
            }
        }
        Value::Array(rows) if is_record_list(v) => {
            let mut cols: Vec<&String> = Vec::new();
            for row in rows {
                for k in row.as_object().unwrap().keys() {
                    if !cols.contains(&k) {
                        cols.push(k);
                    }
                }
            }
            let cells: Vec<Vec<String>> =
                rows.iter().map(|r| cols.iter().map(|c| r.get(c.as_str()).map_or(String::new(), scalar)).collect()).collect();
            let widths: Vec<usize> =
                cols.iter().enumerate().map(|(j, c)| cells.iter().map(|r| r[j].len()).chain([c.len()]).max().unwrap()).collect();
            let line = |items: Vec<&str>| {
                let s: Vec<String> = items.iter().zip(&widths).map(|(x, w)| format!("{x:w$}")).collect();
                format!("{pad}{}\n", s.join("  ").trim_end())
            };
            out.push_str(&line(cols.iter().map(|c| c.as_str()).collect()));
            for r in &cells {
                out.push_str(&line(r.iter().map(String::as_str).collect()));
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn table_aligns_records() {
        let v = json!({ "rows": [{ "a": 1, "bb": "x" }, { "a": 10, "bb": "yy" }], "z": [1, 2] });
        assert_eq!(table(&v), "rows\n  a   bb\n  1   x\n  10  yy\nz     [1, 2]");
    }
}
