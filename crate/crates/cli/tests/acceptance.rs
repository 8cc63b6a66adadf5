//! One test per acceptance criterion. Each prints its check rows and the
//! verdict line, then asserts that every row passed.

use std::io::Write;
use std::time::Instant;

use factorum_cli::regression::{find, render_table, run_case, Options, Status};

fn criterion(id: &str) {
    let case = find(id).expect("known case");
    let start = Instant::now();
    let result = run_case(case, &Options::default());
    let verdict = match result.status() {
        Status::Pass => "PASS",
        Status::Inconclusive => "INCONCLUSIVE",
        Status::Fail => "FAIL",
    };
    let text = format!(
        "{}criterion {:>2} {:<14} {} ({:.1} s)\n",
        render_table(std::slice::from_ref(&result)),
        case.criterion,
        case.id,
        verdict,
        start.elapsed().as_secs_f64()
    );
    // bypass the test harness capture so the matrix shows up in every run
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    let bad: Vec<String> = result
        .rows
        .iter()
        .filter(|r| r.status != Status::Pass)
        .map(|r| {
            format!(
                "{}: expected {}, computed {} ({})",
                r.name,
                r.expected,
                r.computed,
                r.status.as_str()
            )
        })
        .collect();
    assert!(
        bad.is_empty(),
        "criterion {} ({}) failed:\n{}",
        case.criterion,
        id,
        bad.join("\n")
    );
}

#[test]
fn criterion_01_abc_cb() {
    criterion("abc-cb");
}

#[test]
fn criterion_02_aba_b() {
    criterion("aba-b");
}

#[test]
fn criterion_03_anbn() {
    criterion("anbn");
}

#[test]
fn criterion_04_omega_differs() {
    criterion("omega-differs");
}

#[test]
fn criterion_05_bac_n() {
    criterion("bac-n");
}

#[test]
fn criterion_06_amb() {
    criterion("amb");
}

#[test]
fn criterion_07_weirdprimes() {
    criterion("weirdprimes");
}

#[test]
fn criterion_08_aba_bab() {
    criterion("aba-bab");
}

#[test]
fn criterion_09_length() {
    criterion("length");
}

#[test]
fn criterion_10_abc_de() {
    criterion("abc-de");
}

#[test]
fn criterion_11_zero_sum() {
    criterion("zero-sum");
}

#[test]
fn criterion_12_triangular() {
    criterion("triangular");
}

#[test]
fn criterion_13_full_matrix() {
    criterion("full-matrix");
}

#[test]
fn criterion_14_properties() {
    criterion("properties");
}
