use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_partmaps");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .output()
        .expect("spawn partmaps")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

#[test]
fn table_matches_golden() {
    assert_eq!(stdout(&["table", "15"]), include_str!("golden/table15.txt"));
}

#[test]
fn table_of_zero_is_one_empty_row() {
    let text = stdout(&["table", "0"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("(0,0)"));
    assert_eq!(lines[1].matches("(empty)").count(), 2);
}

#[test]
fn counts() {
    assert_eq!(stdout(&["count", "C1", "11"]), "15\n");
    assert_eq!(stdout(&["count", "C2", "11"]), "15\n");
    assert_eq!(stdout(&["count", "B1", "15", "--type", "1,1"]), "5\n");
    assert_eq!(stdout(&["count", "A1", "0"]), "1\n");
    assert_eq!(stdout(&["count", "a2", "6"]), "4\n");
    assert_eq!(
        stdout(&["count", "D1", "5", "--r", "2", "--type", "0,0,0,0"]),
        "1\n"
    );
}

#[test]
fn list_is_lexicographic_descending() {
    assert_eq!(stdout(&["list", "A1", "6"]), "6\n4+2\n3+3\n2+2+2\n");
    assert_eq!(
        stdout(&["list", "B2", "15", "--type", "0,3", "--json"]),
        "[\n  [\n    7,\n    4,\n    4\n  ]\n]\n"
    );
}

#[test]
fn list_trace_pairs_b_families() {
    let text = stdout(&["list", "B1", "15", "--type", "3,0", "--trace"]);
    let images: Vec<&str> = text
        .lines()
        .map(|l| l.split(" -> ").nth(1).unwrap())
        .collect();
    let mut sorted = images.clone();
    sorted.sort();
    assert_eq!(sorted, ["11+2+2", "5+5+5", "8+5+2", "9+2+2+2"]);
}

#[test]
fn map_traces() {
    assert_eq!(
        stdout(&["map", "forward", "macmahon", "3"]),
        "λ = 3\nμ = (empty)\nν = (empty)\nπ = (empty)\nρ = 1+1+1\nτ = 3\n"
    );
    assert_eq!(
        stdout(&["map", "forward", "andrews", "5", "--r", "2"]),
        "λ = 5\nμ = (empty)\nν = (empty)\nπ = (empty)\nρ = 1+1+1+1+1\nτ = 5\n"
    );
    let inv = stdout(&["map", "inverse", "andrews", "5", "--r", "2"]);
    assert!(inv.starts_with("λ = 5\n"));
    let empty = stdout(&["map", "forward", "macmahon", ""]);
    assert_eq!(empty.lines().count(), 6);
    assert!(empty.lines().all(|l| l.ends_with("(empty)")));
}

#[test]
fn map_json_uses_integer_arrays() {
    let text = stdout(&["map", "forward", "macmahon", "9+2+2+2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["direction"], "forward");
    assert_eq!(v["lambda"], serde_json::json!([9, 2, 2, 2]));
    assert!(v["tau"].as_array().unwrap().iter().all(|x| x.is_u64()));
}

#[test]
fn family_violations_are_usage_errors() {
    let out = run(&["map", "forward", "macmahon", "5+1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("B1") && err.contains("5 mod 6"), "{err}");
    assert_eq!(code(&["map", "inverse", "macmahon", "4+3"]), 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&["count", "Z1", "3"]), 2);
    assert_eq!(code(&["count", "A1", "201"]), 2);
    assert_eq!(code(&["count", "B1", "5", "--type", "1,1,1"]), 2);
    assert_eq!(code(&["table", "61"]), 2);
    assert_eq!(code(&["list", "A1", "6", "--trace"]), 2);
    assert_eq!(code(&["verify", "andrews", "--r", "3..1"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
}

#[test]
fn verify_exit_codes() {
    assert_eq!(code(&["verify", "refined", "--max-n", "20"]), 0);
    assert_eq!(code(&["verify", "andrews", "--r", "1", "--max-n", "12"]), 0);
    let out = run(&["verify", "andrews", "--r", "2", "--max-n", "6"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("FAIL r=2: D1 = D2, m_i on residue 2r-i+1"),
        "{text}"
    );
    assert!(
        text.contains("PASS r=2: D1 = D2, m_i on residue 2i"),
        "{text}"
    );
}

#[test]
fn verify_json_report() {
    let text = stdout(&[
        "verify",
        "macmahon",
        "--max-n",
        "10",
        "--json",
        "--sequential",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let report = &v[0];
    assert_eq!(report["identity"], "macmahon");
    assert!(report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true && c["counterexample"].is_null()));
}

#[test]
fn series_tsv() {
    let text = stdout(&["series", "mod6", "--max-n", "15"]);
    assert_eq!(text.lines().next(), Some("degree\texponents\tvalue"));
    assert!(text.lines().any(|l| l == "15\t()\t20"));
    let refined = stdout(&["series", "refined", "--max-n", "15"]);
    assert!(refined.lines().any(|l| l == "15\t(1,1)\t5"));
    assert!(refined.lines().any(|l| l == "15\t(0,0)\t7"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["table", "20"][..],
        &["list", "C2", "14"],
        &["series", "colored", "--r", "2", "--max-n", "6"],
        &["map", "forward", "macmahon", "39+38+34+28+26+26+18+16+3+2"],
    ] {
        assert_eq!(stdout(args), stdout(args), "{args:?}");
    }
}
