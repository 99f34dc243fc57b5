//! End-to-end tests of the `perpgf` binary: exact text output, JSON
//! envelopes, exit codes, and environment handling.

use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../golden")
}

fn workspace_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_perpgf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn code_of(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_str(&stdout_of(out)).expect("stdout parses as JSON")
}

/// Extracts the line starting with `prefix` from multi-line output.
fn line_with<'a>(text: &'a str, prefix: &str) -> &'a str {
    text.lines()
        .find(|l| l.starts_with(prefix))
        .unwrap_or_else(|| panic!("no line starting with {prefix:?} in {text:?}"))
}

#[test]
fn qbin_prints_coefficient_rows() {
    let out = run(&["qbin", "--m", "3", "--N", "3"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out), "1 1 2 3 3 3 3 2 1 1\n");

    let out = run(&["qbin", "--m", "4", "--N", "2"]);
    assert_eq!(stdout_of(&out), "1 1 2 2 3 2 2 1 1\n");

    let out = run(&["qbin", "--m", "0", "--N", "9"]);
    assert_eq!(stdout_of(&out), "1\n");
}

#[test]
fn perp_prints_series() {
    let out = run(&["perp", "--m", "1", "--A", "2", "--terms", "6"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert_eq!(line_with(&text, "series: "), "series: 0 0 0 0 1 1");
    assert!(text.contains("numerator: "));
    assert!(text.contains("denominator: (1-z)"));

    let out = run(&["perp", "--m", "4", "--A", "0", "--terms", "8"]);
    let text = stdout_of(&out);
    assert_eq!(line_with(&text, "series: "), "series: 1 1 3 5 8 12 18 24");
    assert_eq!(
        line_with(&text, "denominator: "),
        "denominator: (1-z)(1-z^2)^2(1-z^3)"
    );
}

#[test]
fn perp_negative_offset_odd_m_is_usage_error() {
    let out = run(&["perp", "--m", "5", "--A", "-1"]);
    assert_eq!(code_of(&out), 2);
    assert!(stdout_of(&out).is_empty());
    assert!(stderr_of(&out).contains("negative offset"));

    let out = run(&["perp", "--m", "5", "--A", "-1", "--format", "json"]);
    assert_eq!(code_of(&out), 2);
    let v = json_of(&out);
    assert_eq!(v["status"], "error");
    assert_eq!(v["result"], Value::Null);
    assert_eq!(v["command"], "perp");
    assert_eq!(v["parameters"]["A"], "-1");
    assert!(v["error_detail"].as_str().unwrap().contains("negative offset"));
}

#[test]
fn perp_negative_offset_even_m_reflects() {
    let out = run(&["perp", "--m", "4", "--A", "-3", "--terms", "10"]);
    assert_eq!(code_of(&out), 0);
    let reflected = run(&["perp", "--m", "4", "--A", "3", "--terms", "10"]);
    assert_eq!(stdout_of(&out), stdout_of(&reflected));
}

#[test]
fn json_envelope_stringifies_all_numbers() {
    let out = run(&["perp", "--m", "4", "--A", "0", "--terms", "5", "--format", "json"]);
    assert_eq!(code_of(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["command"], "perp");
    assert_eq!(v["parameters"]["m"], "4");
    let series: Vec<&str> = v["result"]["series"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().expect("series entries are strings"))
        .collect();
    assert_eq!(series, ["1", "1", "3", "5", "8"]);
    let dens = v["result"]["denominator_factors"].as_array().unwrap();
    assert_eq!(dens[0].as_array().unwrap()[0], "1");
    assert_eq!(dens[1].as_array().unwrap()[1], "2");
    // No bare numbers anywhere in the payload.
    fn no_numbers(v: &Value) {
        match v {
            Value::Number(n) => panic!("unexpected bare number {n}"),
            Value::Array(a) => a.iter().for_each(no_numbers),
            Value::Object(o) => o.values().for_each(no_numbers),
            _ => {}
        }
    }
    no_numbers(&v["result"]);
}

#[test]
fn expand_evaluates_explicit_rational_functions() {
    let out = run(&["expand", "--num", "1", "--den", "1:1,2:1,3:1", "--terms", "8"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out), "1 1 2 3 4 5 7 8\n");

    let out = run(&["expand", "--num", "1,-1", "--terms", "4"]);
    assert_eq!(stdout_of(&out), "1 -1 0 0\n");

    let out = run(&["expand", "--num", "1", "--den", "1:0", "--terms", "4"]);
    assert_eq!(code_of(&out), 2);
    assert!(stderr_of(&out).contains("expected k:mult"));
}

#[test]
fn verify_passes_against_oracle() {
    let out = run(&["verify", "--m", "2", "--max-N", "30", "--threads", "2"]);
    assert_eq!(code_of(&out), 0);
    assert!(stdout_of(&out).contains("ok ("));

    let out = run(&["verify", "--m", "3", "--max-N", "12", "--max-A", "5", "--format", "json"]);
    assert_eq!(code_of(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["result"]["passed"], true);
    assert_eq!(v["result"]["comparisons"], "78");
}

#[test]
fn identity_all_reports_each_catalog_entry() {
    let out = run(&["identity", "--max-N", "60"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 11);
    assert!(lines.iter().all(|l| l.contains(": pass (")));

    let out = run(&["identity", "--id", "m4-center", "--max-N", "80"]);
    assert_eq!(code_of(&out), 0);
    assert!(stdout_of(&out).starts_with("m4-center: pass ("));
}

#[test]
fn identity_unknown_id_is_usage_error() {
    let out = run(&["identity", "--id", "bogus"]);
    assert_eq!(code_of(&out), 2);
    assert!(stderr_of(&out).contains("unknown identity id: bogus"));
}

#[test]
fn congruence_scans_and_rejects_composites() {
    let out = run(&["congruence", "--prime", "5", "--max-N", "120"]);
    assert_eq!(code_of(&out), 0);
    assert!(stdout_of(&out).contains("pass ("));

    let out = run(&["congruence", "--prime", "6"]);
    assert_eq!(code_of(&out), 2);
    assert!(stderr_of(&out).contains("6 is not prime"));
}

#[test]
fn quasi_atmost_prints_constituents() {
    let out = run(&["quasi", "--m", "3", "--style", "atmost"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("period: 6"));
    assert!(text.contains("degree: 2"));
    assert_eq!(line_with(&text, "n = 6k + 0"), "n = 6k + 0: 3*k^2 + 3*k + 1");
}

#[test]
fn quasi_perp_json_roundtrip() {
    let out = run(&["quasi", "--m", "2", "--A", "3", "--format", "json"]);
    assert_eq!(code_of(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["result"]["style"], "perp");
    assert_eq!(v["result"]["period"], "2");
}

#[test]
fn golden_uses_env_override_and_default_path() {
    let dir = golden_dir();
    let out = Command::new(env!("CARGO_BIN_EXE_perpgf"))
        .args(["golden", "--which", "m6", "--max-a", "1"])
        .env("PERPGF_GOLDEN_DIR", &dir)
        .output()
        .expect("binary runs");
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("golden m6: pass (6 cases, 12 instances"));

    // Default path is ./golden relative to the working directory.
    let out = Command::new(env!("CARGO_BIN_EXE_perpgf"))
        .args(["golden", "--max-a", "0", "--terms", "60"])
        .current_dir(workspace_root())
        .output()
        .expect("binary runs");
    assert_eq!(code_of(&out), 0);
    assert!(stdout_of(&out).contains("golden all: pass (21 cases, 21 instances"));

    let out = Command::new(env!("CARGO_BIN_EXE_perpgf"))
        .args(["golden"])
        .env("PERPGF_GOLDEN_DIR", "/nonexistent")
        .output()
        .expect("binary runs");
    assert_eq!(code_of(&out), 2);
    assert!(stderr_of(&out).contains("cannot read golden file"));
}

#[test]
fn missing_required_argument_is_usage_error() {
    let out = run(&["perp", "--m", "4"]);
    assert_eq!(code_of(&out), 2);

    let out = run(&["qbin", "--m", "3"]);
    assert_eq!(code_of(&out), 2);
}
