//! End-to-end runs of the command-line tool.

use std::path::PathBuf;

use serde_json::Value;

fn tangle(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../tangles").join(name).display().to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("khseq").chain(args.iter().copied());
    let code = khseq_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn run_json(args: &[&str]) -> (i32, String) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let p = path.display().to_string();
    let mut full: Vec<&str> = args.to_vec();
    full.extend(["--json", &p]);
    let (code, _, err) = run(&full);
    assert!(code != 2, "input error: {err}");
    (code, std::fs::read_to_string(&path).unwrap())
}

#[test]
fn verify_unknot_succeeds() {
    let (code, out, _) = run(&["verify", &tangle("unknot.tangle")]);
    assert_eq!(code, 0);
    assert!(out.trim_end().ends_with("PASS"));
}

#[test]
fn integral_table_for_9_46() {
    let (code, out, _) = run(&["kh", "--ring", "Z", &tangle("9_46.tangle"), "--qmin", "-1", "--qmax", "1"]);
    assert_eq!(code, 0);
    let rows: Vec<Vec<&str>> = out.lines().skip(2).take(3).map(|l| l.split_whitespace().collect()).collect();
    assert_eq!(rows, vec![vec!["-1", "-1", "Z/2"], vec!["0", "-1", "Z"], vec!["0", "1", "Z^2"]]);
    assert!(out.contains("Bockstein (0,-1) -> (-1,-1): rank 1"));
}

#[test]
fn invariants_of_9_46() {
    let (code, json) = run_json(&["invariants", &tangle("9_46.tangle")]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["result"]["delta"], 4);
    assert_eq!(v["result"]["axis_linking_2x"], v["result"]["w"].as_i64().unwrap() - 4);
}

#[test]
fn reports_round_trip_byte_for_byte() {
    let commands: [&[&str]; 9] = [
        &["kh", "--ring", "Z"],
        &["akh", "--ring", "Z4"],
        &["quotients"],
        &["invariants"],
        &["fplus"],
        &["cone"],
        &["tate"],
        &["verify"],
        &["euler"],
    ];
    for args in commands {
        let mut full = args.to_vec();
        let file = tangle("trefoil.tangle");
        full.push(&file);
        let (code, json) = run_json(&full);
        assert_eq!(code, 0, "{args:?}");
        let v: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(khseq_cli::to_json(&v), json, "{args:?}");
        assert_eq!(v["command"], args[0]);
        assert_eq!(v["schema"], khseq_cli::SCHEMA_VERSION);
        assert_eq!(v["input"]["sha256"].as_str().unwrap().len(), 64);
    }
}

#[test]
fn reports_do_not_depend_on_threads_or_runs() {
    let file = tangle("9_46.tangle");
    let (_, one) = run_json(&["verify", &file, "--threads", "1"]);
    let (_, four) = run_json(&["verify", &file, "--threads", "4"]);
    let (_, again) = run_json(&["verify", &file]);
    assert_eq!(one, four);
    assert_eq!(one, again);
}

#[test]
fn digest_is_of_the_file_bytes() {
    let file = tangle("unknot.tangle");
    let (_, json) = run_json(&["invariants", &file]);
    let v: Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["input"]["sha256"], khseq_cli::digest(&std::fs::read(&file).unwrap()));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.tangle");
    std::fs::write(&bad, "X a b c\n").unwrap();
    let bad = bad.display().to_string();
    assert_eq!(run(&["kh", &bad]).0, 2);
    assert_eq!(run(&["kh", "/nonexistent.tangle"]).0, 2);
    assert_eq!(run(&["kh", "--ring", "Q", &tangle("unknot.tangle")]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["fplus", "--ring", "Z", &tangle("unknot.tangle")]).0, 2);
    assert_eq!(run(&["kh", "--qmin", "3", "--qmax", "1", &tangle("unknot.tangle")]).0, 2);
    assert_eq!(run(&["kh", "--threads", "0", &tangle("unknot.tangle")]).0, 2);
    let (code, _, err) = run(&["wrap", "--unwrap", &tangle("unknot.tangle")]);
    assert_eq!(code, 2);
    assert!(err.contains("unwrappable"));
}

#[test]
fn wrap_writes_a_parsable_tangle() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("wrapped.tangle");
    let o = out.display().to_string();
    let (code, _, _) = run(&["wrap", &tangle("figure-eight.tangle"), "--times", "2", "--output", &o]);
    assert_eq!(code, 0);
    let (code, json) = run_json(&["invariants", &o]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["result"]["delta"], 0);
    assert_eq!(v["result"]["axis_linking_2x"], -4);
    let (code, _, _) = run(&["wrap", "--unwrap", &o]);
    assert_eq!(code, 0);
}

#[test]
fn help_and_version_exit_cleanly() {
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["--version"]).0, 0);
}

#[test]
fn failures_map_to_exit_codes() {
    assert_eq!(khseq_cli::CliError::Compute("unstable".into()).exit_code(), 1);
    assert_eq!(khseq_cli::CliError::Input("bad".into()).exit_code(), 2);
}
