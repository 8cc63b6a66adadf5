use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn factorum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_factorum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn pres(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../presentations")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn catenary_of_abc() {
    let o = factorum(&["catenary", &pres("T.pres"), "--element", "a b c"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("value          1"), "{out}");
    assert!(out.contains("certification  exact"), "{out}");
}

#[test]
fn davenport_of_klein_group() {
    let o = factorum(&["--format", "json", "zss", "--group", "2,2", "davenport"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema"], "factorum/1");
    assert_eq!(v["value"], 3);
    assert_eq!(v["certification"], "exact");
}

#[test]
fn help_exits_zero() {
    let o = factorum(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("regression"));
}

#[test]
fn regression_case_passes() {
    let o = factorum(&["regression", "--case", "omega-differs"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn starved_regression_is_inconclusive_not_failed() {
    let o = factorum(&["--budget-len", "12", "regression", "--case", "weirdprimes"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(2), "{out}");
    assert!(out.contains("inconclusive"), "{out}");
    assert!(out.contains("lower-bound"), "{out}");
    assert!(!out.contains("fail"), "{out}");
}

#[test]
fn json_output_is_deterministic() {
    let args = [
        "--format",
        "json",
        "lengths",
        &pres("abc_de.pres"),
        "--element",
        "a b c a b c",
    ];
    let a = factorum(&args);
    let b = factorum(&args);
    assert_eq!(a.status.code(), Some(0));
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}

// a ball cap far below the class size must never come back as exact
#[test]
fn truncated_ball_is_lower_bound() {
    let o = factorum(&[
        "--budget-ball",
        "3",
        "--format",
        "json",
        "lengths",
        &pres("weirdprimes.pres"),
        "--element",
        "a b a a b a",
    ]);
    let v = json(&o);
    assert_eq!(v["certification"], "lower-bound", "{v}");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn presentation_from_temp_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.pres");
    std::fs::write(&path, "gens: a b\nrel: a b = b a\n").unwrap();
    let o = factorum(&[
        "--format",
        "json",
        "lengths",
        path.to_str().unwrap(),
        "--element",
        "a b a",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["value"]["lengths"], serde_json::json!([3]));
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.pres");
    std::fs::write(&path, "gens: a b\nrel: a b = b x\n").unwrap();
    let o = factorum(&["atoms", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));

    let missing = factorum(&["atoms", "/nonexistent/file.pres"]);
    assert_eq!(missing.status.code(), Some(1));

    let unknown = factorum(&["regression", "--case", "nope"]);
    assert_eq!(unknown.status.code(), Some(1));
}

#[test]
fn upper_triangular_atom() {
    let o = factorum(&["--format", "json", "tri", "--matrix", "1 5; 0 3", "atom"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["value"], true, "{v}");
    assert_eq!(v["witnesses"][0]["prime"], 3, "{v}");
}
