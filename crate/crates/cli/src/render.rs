use serde_json::Value;

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// Human summary: one `key: value` line per report field, certificate
/// summarized by size.
pub fn render_pretty(report: &Value) -> String {
    let mut out = String::new();
    let Some(obj) = report.as_object() else {
        return format!("{report}\n");
    };
    if let Some(cmd) = obj.get("command") {
        out.push_str(&format!("command: {}\n", scalar(cmd)));
    }
    for (k, v) in obj {
        if k == "command" || k == "certificate" {
            continue;
        }
        match v {
            Value::Array(items) if items.iter().all(|i| i.is_object()) && !items.is_empty() => {
                out.push_str(&format!("{k}:\n"));
                for i in items {
                    out.push_str(&format!("  {i}\n"));
                }
            }
            Value::Object(m) if !m.is_empty() => {
                out.push_str(&format!("{k}:\n"));
                for (kk, vv) in m {
                    out.push_str(&format!("  {kk}: {}\n", scalar(vv)));
                }
            }
            _ => out.push_str(&format!("{k}: {}\n", scalar(v))),
        }
    }
    if let Some(Value::Object(c)) = obj.get("certificate") {
        let keys: Vec<&str> = c.keys().map(String::as_str).collect();
        out.push_str(&format!("certificate: {{{}}} (full record with --json)\n", keys.join(", ")));
    }
    out
}
