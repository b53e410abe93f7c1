//! Plain-text rendering of command results.

use serde_json::{Map, Value};

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(cell).collect::<Vec<_>>().join(",")),
        Value::Object(map) => map.iter().map(|(k, v)| format!("{k}={}", cell(v))).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn is_table(v: &Value) -> bool {
    matches!(v, Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object))
}

fn table(rows: &[Value], columns: Option<&[&str]>, out: &mut String) {
    let cols: Vec<String> = match columns {
        Some(c) => c.iter().map(|s| s.to_string()).collect(),
        None => {
            let mut keys: Vec<String> = Vec::new();
            for r in rows {
                for k in r.as_object().unwrap().keys() {
                    if !keys.contains(k) {
                        keys.push(k.clone());
                    }
                }
            }
            keys
        }
    };
    let cells: Vec<Vec<String>> =
        rows.iter().map(|r| cols.iter().map(|c| cell(r.get(c).unwrap_or(&Value::Null))).collect()).collect();
    let widths: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].chars().count()).chain([c.len()]).max().unwrap())
        .collect();
    let line = |items: &[String]| {
        let padded: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}", w = *w)).collect();
        padded.join("  ").trim_end().to_string()
    };
    out.push_str(&line(&cols));
    out.push('\n');
    out.push_str(&line(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>()));
    out.push('\n');
    for r in &cells {
        out.push_str(&line(r));
        out.push('\n');
    }
}

/// Scalars as aligned `key  value` lines, then one table per list of records.
/// `columns` fixes the column order of tables (by table key).
pub fn render(result: &Value, columns: &[(&str, &[&str])]) -> String {
    let mut out = String::new();
    let Value::Object(map) = result else {
        return format!("{}\n", cell(result));
    };
    let mut scalars: Vec<(String, String)> = Vec::new();
    flatten("", map, &mut scalars);
    let width = scalars.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in &scalars {
        out.push_str(format!("{k:<width$}  {v}").trim_end());
        out.push('\n');
    }
    for (k, v) in map {
        if is_table(v) {
            if !out.is_empty() {
                out.push('\n');
            }
            let cols = columns.iter().find(|(name, _)| name == k).map(|(_, c)| *c);
            table(v.as_array().unwrap(), cols, &mut out);
        }
    }
    out
}

fn flatten(prefix: &str, map: &Map<String, Value>, out: &mut Vec<(String, String)>) {
    for (k, v) in map {
        let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
        match v {
            Value::Object(inner) if !inner.is_empty() => flatten(&key, inner, out),
            v if is_table(v) => {}
            v => out.push((key, cell(v))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn renders_scalars_and_tables() {
        let v = json!({"genus": 2, "name": "x", "rows": [{"a": 1, "b": [1, 2]}, {"a": 10, "b": []}]});
        let text = render(&v, &[]);
        assert_eq!(text, "genus  2\nname   x\n\na   b\n--  -----\n1   [1,2]\n10  []\n");
    }
}
