//! Plain-text rendering of a JSON report as aligned `key  value` rows.

use serde_json::Value;

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) => {
            let parts: Option<Vec<String>> = items
                .iter()
                .map(|x| match x {
                    Value::Array(_) | Value::Object(_) => None,
                    other => scalar(other),
                })
                .collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        Value::Object(_) => None,
    }
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    if let Some(s) = scalar(v) {
        rows.push((prefix.to_owned(), s));
        return;
    }
    let join = |k: &str| if prefix.is_empty() { k.to_owned() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => map.iter().for_each(|(k, x)| flatten(&join(k), x, rows)),
        Value::Array(items) => items.iter().enumerate().for_each(|(i, x)| flatten(&join(&i.to_string()), x, rows)),
        _ => unreachable!(),
    }
}

pub fn render(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    rows.iter().map(|(k, val)| format!("{k:<width$}  {val}")).collect::<Vec<_>>().join("\n")
}
