use ctlab_core::principles::{Outcome, PrincipleReport};
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// Exit codes: pass, violation found, input error or undetermined.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

pub fn exit_code(outcome: Outcome) -> i32 {
    match outcome {
        Outcome::Pass => EXIT_PASS,
        Outcome::Fail => EXIT_VIOLATION,
        Outcome::Undetermined => EXIT_ERROR,
    }
}

/// Wraps a command's payload with the schema version and command name.
pub fn envelope(command: &str, body: Value) -> Value {
    let mut out = Map::new();
    out.insert("schema_version".into(), json!(SCHEMA_VERSION));
    out.insert("command".into(), json!(command));
    if let Value::Object(m) = body {
        out.extend(m);
    } else {
        out.insert("result".into(), body);
    }
    Value::Object(out)
}

pub fn principle_json(r: &PrincipleReport) -> Value {
    json!({
        "principle": r.principle,
        "verdict": r.verdict().label(),
        "instances": r.instances,
        "undetermined": r.undetermined,
        "vacuous": r.vacuous,
        "violations": r.violations.iter().map(|v| json!({
            "family": v.family,
            "instance": v.instance,
            "explanation": v.explanation,
        })).collect::<Vec<_>>(),
        "notes": r.notes,
    })
}

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}
