use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn ctlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ctlab")).args(args).output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

fn fixture(name: &str, body: &str) -> String {
    let path: PathBuf = [env!("CARGO_TARGET_TMPDIR"), name].iter().collect();
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn eval_true_sentence() {
    let o = ctlab(&["eval", "E x0.(x0*x0)=S(S(S(S(0))))"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["verdict"], "true");
    assert_eq!(v["certificate"][0]["value"], "2");
}

#[test]
fn eval_out_of_budget_is_unknown() {
    let o = ctlab(&["--budget", "1", "eval", "E x0.(x0*x0)=S(S(S(S(S(S(S(S(S(0)))))))))"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["verdict"], "unknown");
}

#[test]
fn eval_rejects_open_formula() {
    let o = ctlab(&["eval", "x0=0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("free variables"));
}

#[test]
fn parse_and_encode() {
    let v = json(&ctlab(&["parse", "E x0.(x0+x1)=S(0)"]));
    assert_eq!(v["free_vars"], serde_json::json!(["x1"]));
    assert_eq!(v["ast"]["op"], "exists");

    let v = json(&ctlab(&["encode", "--term", "S(0)"]));
    assert_eq!(v["code"], "427");
    let v = json(&ctlab(&["encode", "--decode", "427"]));
    assert_eq!(v["kind"], "term");
    assert_eq!(v["printed"], "S(0)");
    assert_eq!(ctlab(&["encode", "--decode", "5"]).status.code(), Some(2));
}

#[test]
fn disj_build_kinds() {
    let v = json(&ctlab(&["disj", "build", "--kind", "left", "0=0", "S(0)=0", "0=S(0)"]));
    assert_eq!(v["sentence"], "((0=0|S(0)=0)|0=S(0))");
    let v = json(&ctlab(&["disj", "build", "--kind", "negconj", "0=0"]));
    assert_eq!(v["sentence"], "!!0=0");
}

#[test]
fn check_dcout_fault_exits_one() {
    let path = fixture(
        "dcout_fault.json",
        r#"{"schema_version": 1,
            "valuation": [
              {"sentence": "S(0)=0", "value": false},
              {"sentence": "0=S(0)", "value": false},
              {"sentence": "(S(0)=0|0=S(0))", "value": true}],
            "sequences": [["S(0)=0", "0=S(0)"]]}"#,
    );
    let o = ctlab(&["check", "--principle", "dcout", "--input", &path]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["verdict"], "fail");
    assert_eq!(v["violations"][0]["family"], "dcout");
}

#[test]
fn check_dc_from_roots_passes() {
    let path = fixture("dc_roots.json", r#"{"sequences": [["S(0)=0", "E x0.x0=S(0)"]]}"#);
    let o = ctlab(&["check", "--principle", "dc", "--input", &path]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["instances"], 1);
}

#[test]
fn check_seqind_on_sets() {
    let path = fixture("seqind.json", r#"{"set": [0, 1, 2], "sequences": [[0, 1, 2], [0, 5]]}"#);
    let o = ctlab(&["check", "--principle", "seqind", "--input", &path]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["vacuous"], 1);
}

#[test]
fn check_bad_input_exits_two() {
    let path = fixture("bad.json", r#"{"valuation": [{"sentence": "x0=0", "value": true}]}"#);
    let o = ctlab(&["check", "--principle", "qfc", "--input", &path]);
    assert_eq!(o.status.code(), Some(2));
    let o = ctlab(&["check", "--principle", "nonsense", "--input", &path]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ev_run_file_and_random() {
    let path = fixture(
        "ev.json",
        r#"{"targets": ["(x0=0|x0=S(0))"], "base": {"domain": [], "pairs": []}, "long_cut": 3}"#,
    );
    let o = ctlab(&["ev", "run", &path, "--audit", "full"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["verdict"], "pass");
    assert!(v["audits"].as_array().unwrap().iter().any(|a| a["principle"] == "regularity"));

    let path = fixture(
        "ev_domain.json",
        r#"{"targets": ["(x0=0|x0=S(0))"], "base": {"domain": ["x0=0"]}, "long_cut": 3, "max_value": 2}"#,
    );
    let o = ctlab(&["ev", "run", &path, "--audit", "full"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["verdict"], "pass");

    let o = ctlab(&["ev", "run", "--seed", "3", "--long-cut", "5"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn cutmodel_runs() {
    let o = ctlab(&["cutmodel", "run", "--which", "a", "--count", "40"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["construction"], "A");
    assert_eq!(v["audit"]["verdict"], "pass");

    let path = fixture("seqs.json", "[[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11]]");
    let o = ctlab(&["cutmodel", "run", "--which", "b", "--size", "20", "--cut", "10", "--seqs", &path, "--trace"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["steps"][0]["action"], "extend");
}

#[test]
fn yablo_run_items() {
    let o = ctlab(&["yablo", "run", "0=0", "S(0)=S(0)", "E x0.x0=S(0)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["verdict"], "pass");
}

#[test]
fn suite_subset_and_usage_errors() {
    let o = ctlab(&["suite", "--only", "ev-", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["checks"].as_array().unwrap().len(), 1);
    assert_eq!(v["checks"][0]["id"], "ev-construct");

    assert_eq!(ctlab(&["suite", "--only", "zz"]).status.code(), Some(2));
    assert_eq!(ctlab(&["bogus"]).status.code(), Some(2));
    assert_eq!(ctlab(&["--help"]).status.code(), Some(0));
}
