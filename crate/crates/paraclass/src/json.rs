//! Canonical JSON encodings. Object keys come out sorted because
//! `serde_json::Map` is ordered by key.

use num_traits::ToPrimitive;
use paraclass_core::{GroupStructure, Int, Matrix};
use serde_json::{json, Value};

/// A JSON number when the value fits in `i64`, a decimal string otherwise.
pub fn int(x: &Int) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn ints(xs: &[Int]) -> Value {
    Value::Array(xs.iter().map(int).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| ints(r)).collect())
}

pub fn group(g: &GroupStructure) -> Value {
    json!({
        "free_rank": g.free_rank,
        "invariant_factors": ints(&g.invariant_factors),
        "order": g.order().map_or(Value::Null, |o| int(&o)),
        "text": g.to_string(),
    })
}

/// Inverse of [`int`].
pub fn parse_int(v: &Value) -> Option<Int> {
    match v {
        Value::Number(n) => n.as_i64().map(Int::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// `path: value` lines, one per leaf.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    flatten(v, "", &mut out);
    out
}

fn flatten(v: &Value, path: &str, out: &mut String) {
    let join = |k: &str| {
        if path.is_empty() {
            k.to_string()
        } else {
            format!("{path}.{k}")
        }
    };
    match v {
        Value::Object(m) if !m.is_empty() => m.iter().for_each(|(k, x)| flatten(x, &join(k), out)),
        Value::Array(a) if a.iter().any(|x| x.is_object()) => a
            .iter()
            .enumerate()
            .for_each(|(i, x)| flatten(x, &join(&i.to_string()), out)),
        Value::String(s) => out.push_str(&format!("{path}: {s}\n")),
        _ => out.push_str(&format!("{path}: {v}\n")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_integers_become_strings() {
        let big: Int = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(int(&big), json!("123456789012345678901234567890"));
        assert_eq!(int(&Int::from(-7)), json!(-7));
        assert_eq!(parse_int(&int(&big)), Some(big));
    }

    #[test]
    fn keys_are_sorted() {
        let v = json!({"b": 1, "a": {"d": 2, "c": 3}});
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"a":{"c":3,"d":2},"b":1}"#
        );
        assert_eq!(render_text(&v), "a.c: 3\na.d: 2\nb: 1\n");
    }
}
