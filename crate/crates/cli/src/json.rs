//! JSON renderings of core objects. Maps and keys come out sorted, so the
//! same value always serializes to the same bytes.

use lca_core::confalgebra::Witness;
use lca_core::dsl::Diagnostic;
use lca_core::{ConformalMap, Error, ModuleMap, Rational, SubmoduleBasis};
use serde_json::{json, Value};

/// Row-major matrix of rendered polynomials.
pub fn matrix(rows: Vec<Vec<String>>) -> Value {
    Value::Array(rows.into_iter().map(|r| json!(r)).collect())
}

pub fn conformal_map(m: &ConformalMap) -> Value {
    matrix(m.to_string_rows())
}

pub fn module_map(m: &ModuleMap) -> Value {
    matrix(m.to_string_rows())
}

/// Generators of a submodule, each rendered in the target's names.
pub fn submodule(s: &SubmoduleBasis, names: &[String]) -> Value {
    json!(s
        .columns()
        .iter()
        .map(|c| c.render(names))
        .collect::<Vec<_>>())
}

pub fn witness(w: &Witness<Rational>, names: &[String]) -> Value {
    json!({
        "generators": w.gens.iter().map(|&i| names[i].clone()).collect::<Vec<_>>(),
        "residual": w.residual.render(names),
    })
}

pub fn check(c: &Result<(), Witness<Rational>>, names: &[String]) -> Value {
    match c {
        Ok(()) => json!({ "ok": true }),
        Err(w) => json!({ "ok": false, "witness": witness(w, names) }),
    }
}

pub fn error(code: &str, message: &str) -> Value {
    json!({ "error": { "code": code, "message": message } })
}

pub fn core_error(e: &Error) -> Value {
    error(e.code(), &e.to_string())
}

pub fn diagnostic(d: &Diagnostic) -> Value {
    json!({
        "severity": d.severity.to_string(),
        "message": d.message,
        "line": d.line,
        "column": d.column,
        "snippet": d.snippet,
    })
}

/// Indented `key: value` text for `--format text`.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    write_text(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a)
            if a.iter()
                .all(|x| matches!(x, Value::String(_) | Value::Number(_) | Value::Bool(_))) =>
        {
            Some(format!(
                "[{}]",
                a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")
            ))
        }
        _ => None,
    }
}

fn write_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) if !s.contains('\n') => out.push_str(&format!("{pad}{k}: {s}\n")),
                    _ => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write_text(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x) {
                    Some(s) if !s.contains('\n') => out.push_str(&format!("{pad}- {s}\n")),
                    _ => {
                        out.push_str(&format!("{pad}-\n"));
                        write_text(x, indent + 1, out);
                    }
                }
            }
        }
        other => {
            for line in scalar(other).unwrap_or_default().lines() {
                out.push_str(&format!("{pad}{line}\n"));
            }
        }
    }
}
