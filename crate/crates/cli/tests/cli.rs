use std::process::{Command, Output};

use serde_json::Value;

fn logdiff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logdiff")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn temp_file(name: &str, body: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("logdiff-{}-{name}", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn verify_all_passes_and_reports_dims() {
    let out = logdiff(&["verify", "--all", "--r-example", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["arrangement"]["r"], 3);
    let names: Vec<&str> = v["suites"].as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["base", "ore", "resolution", "hochschild", "gerstenhaber", "symmetry"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("dims [1, 5, 9, 5, 0]"));
}

#[test]
fn json_report_is_deterministic() {
    let args = ["verify", "--suite", "symmetry,ore", "--format", "json", "--seed", "11"];
    let a = logdiff(&args);
    let b = logdiff(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let names: Vec<String> =
        json(&a)["suites"].as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap().to_string()).collect();
    assert_eq!(names, ["ore", "symmetry"]);
}

#[test]
fn hh_dims_stabilize() {
    let four = json(&logdiff(&["hh-dims", "--window", "4", "--format", "json"]));
    let eight = json(&logdiff(&["hh-dims", "--window", "8", "--format", "json"]));
    assert_eq!(four["dims"], eight["dims"]);
    assert_eq!(four["dims"], serde_json::json!([1, 5, 9, 5, 0]));
    assert_eq!(eight["stable"], true);
}

#[test]
fn arrangement_from_file() {
    let path = temp_file("six.json", r#"{"forms": [[1,1,0,1],[0,1,1,1],[1,1,1,1],[1,1,-1,1],[1,1,-2,1],[2,1,-1,1]]}"#);
    let out = logdiff(&["hh-dims", "--arrangement", path.to_str().unwrap(), "--window", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["dims"], serde_json::json!([1, 6, 11, 6, 0]));
}

#[test]
fn malformed_arrangement_exits_two() {
    let path = temp_file("bad.json", r#"{"forms": [1, 2"#);
    let out = logdiff(&["verify", "--arrangement", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed arrangement JSON"));
}

#[test]
fn repeated_line_exits_two() {
    let path = temp_file("dup.json", r#"{"forms": [[1,1,0,1],[0,1,1,1],[2,1,0,1],[1,1,-1,1],[1,1,-2,1]]}"#);
    assert_eq!(logdiff(&["verify", "--arrangement", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn bad_flags_exit_two() {
    assert_eq!(logdiff(&["hh-dims", "--window", "1"]).status.code(), Some(2));
    assert_eq!(logdiff(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
}

#[test]
fn normal_check_accepts_and_rejects() {
    let ok = logdiff(&["normal-check", "3*x*y*(x-2*y)", "--format", "json"]);
    assert_eq!(ok.status.code(), Some(0));
    let v = json(&ok);
    assert_eq!(v["result"]["witness"]["exponents"], serde_json::json!([1, 1, 0, 1, 0]));
    assert_eq!(v["result"]["witness"]["lambda"], "3");

    let foreign = logdiff(&["normal-check", "x*(x+y)", "--format", "json"]);
    assert_eq!(foreign.status.code(), Some(1));
    assert_eq!(json(&foreign)["result"]["reason"], "foreign-line");

    let operator = logdiff(&["normal-check", "x + D", "--format", "json"]);
    assert_eq!(json(&operator)["result"]["reason"], "not-in-S");

    assert_eq!(logdiff(&["normal-check", "x +* y"]).status.code(), Some(2));
}

#[test]
fn calabi_yau_and_autos() {
    for cmd in ["verify-calabi-yau", "verify-autos"] {
        let out = logdiff(&[cmd, "--r-example", "4", "--format", "json"]);
        assert_eq!(out.status.code(), Some(0), "{cmd}");
        assert_eq!(json(&out)["pass"], true);
    }
}

#[test]
fn text_output_and_progress() {
    let out = logdiff(&["verify", "--suite", "base"]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("suite base: PASS"));
    assert!(stdout.ends_with("overall: PASS\n"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("running suite base"));
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("logdiff-{}-report.json", std::process::id()));
    let out = logdiff(&["verify", "--suite", "base", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["pass"], true);
}
