//! JSON envelopes for command output.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Error;

pub const SCHEMA_VERSION: u32 = 1;

/// `{schema_version, command, result}`. Object keys come out sorted, so
/// equal inputs give byte-identical text.
pub fn envelope<T: Serialize>(command: &str, result: &T) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "result": serde_json::to_value(result).expect("serializable report"),
    })
}

pub fn error_envelope(command: &str, err: &Error) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "error": err.to_string(),
    })
}

pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_key_order() {
        let a = to_text(&envelope("x", &json!({"b": 1, "a": 2})));
        let b = to_text(&envelope("x", &json!({"a": 2, "b": 1})));
        assert_eq!(a, b);
        assert!(a.contains("\"schema_version\": 1"));
    }
}
