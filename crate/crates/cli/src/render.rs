use serde_json::Value;

/// Indented `key: value` text for a JSON report, keys in sorted order.
pub fn text(report: &Value) -> String {
    let mut out = String::new();
    if let Some(criteria) = report.get("criteria").and_then(Value::as_array) {
        return verify_text(report, criteria);
    }
    write_value(&mut out, report, 0);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            Some(format!("[{}]", items.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(items) if items.iter().all(|i| i.as_array().is_some_and(|a| a.iter().all(|x| !x.is_object() && !x.is_array()))) => {
            Some(items.iter().filter_map(scalar).collect::<Vec<_>>().join(" "))
        }
        _ => None,
    }
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                match scalar(v) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write_value(out, v, depth + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        write_value(out, item, depth + 1);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

fn verify_text(report: &Value, criteria: &[Value]) -> String {
    let mut out = format!("spec: {}\n", report["spec"].as_str().unwrap_or(""));
    for c in criteria {
        let pass = c["pass"].as_bool().unwrap_or(false);
        out.push_str(&format!(
            "criterion {:>2}: {} {}\n",
            c["id"],
            if pass { "PASS" } else { "FAIL" },
            c["title"].as_str().unwrap_or("")
        ));
        for d in c["details"].as_array().into_iter().flatten() {
            out.push_str(&format!("    {}\n", d.as_str().unwrap_or("")));
        }
    }
    out.push_str(&format!("passed {} of {}\n", report["passed"], report["total"]));
    out
}
