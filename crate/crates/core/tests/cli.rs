//! The `qsign` command line: output formats, files and exit codes.

use std::fs;
use std::process::Command;

use qsign::cli::main_with_args;
use serde_json::Value;
use tempfile::tempdir;

fn run_to_file(args: &[&str]) -> (i32, String) {
    let dir = tempdir().unwrap();
    let path = dir.path().join("out.txt");
    let mut argv = vec!["qsign", "--out", path.to_str().unwrap()];
    argv.extend_from_slice(args);
    let code = main_with_args(argv);
    (code, fs::read_to_string(&path).unwrap_or_default())
}

#[test]
fn expand_csv_golden() {
    let (code, out) = run_to_file(&["expand", "--spec", "A", "--trunc", "10"]);
    assert_eq!(code, 0);
    let want = "index,coefficient\n0,1\n1,5\n2,10\n3,5\n4,-15\n5,-24\n6,15\n7,70\n8,30\n9,-125\n10,-175\n";
    assert_eq!(out, want);
}

#[test]
fn expand_inline_spec_matches_name() {
    let inline = r#"[{"r":2,"m":5,"delta":5},{"r":1,"m":5,"delta":-5}]"#;
    let (code, by_json) = run_to_file(&["expand", "--spec", inline, "--trunc", "60"]);
    assert_eq!(code, 0);
    let (_, a) = run_to_file(&["expand", "--spec", "A", "--trunc", "60"]);
    assert_eq!(by_json, a);
}

#[test]
fn expand_json_format() {
    let (code, out) = run_to_file(&["--format", "json", "expand", "--spec", "B", "--trunc", "5"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["spec"], "B");
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 6);
}

#[test]
fn delta_csv_and_json() {
    let (code, csv) = run_to_file(&["--format", "csv", "delta", "--spec", "B", "--audit"]);
    assert_eq!(code, 0);
    assert!(csv.lines().count() > 4);
    let (_, js) = run_to_file(&["--format", "json", "delta", "--spec", "B"]);
    let v: Value = serde_json::from_str(&js).unwrap();
    assert_eq!(v["omega"], "24");
    let pos: Vec<_> = v["classes"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["in_Lpos"] == true)
        .map(|c| (c["aleph"].as_i64().unwrap(), c["l"].as_i64().unwrap()))
        .collect();
    assert_eq!(pos, vec![(2, 5), (3, 5)]);
}

#[test]
fn dominance_exit_codes() {
    assert_eq!(run_to_file(&["dominance", "--family", "A", "--n", "805"]).0, 0);
    assert_eq!(run_to_file(&["dominance", "--family", "A", "--n", "200"]).0, 3);
    assert_eq!(run_to_file(&["dominance", "--family", "Q", "--n", "805"]).0, 1);
}

#[test]
fn certify_round_trip() {
    let (code, out) = run_to_file(&["certify", "--target", "B5n"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, ["schema_version", "target", "spec", "finite", "asymptotic", "meta"]);
    assert_eq!(v["meta"]["valid"], true);
    assert_eq!(v["spec"]["omega"], "24");
    let (_, again) = run_to_file(&["certify", "--target", "B5n"]);
    assert_eq!(out, again);
}

#[test]
fn certify_detects_wrong_product() {
    let (code, out) = run_to_file(&["certify", "--target", "A5n", "--spec", "d"]);
    assert_eq!(code, 2);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["meta"]["valid"], false);
    assert_eq!(v["spec"]["name"], "custom");
}

#[test]
fn xcheck_is_seeded() {
    let args = ["--seed", "7", "xcheck", "--identity", "quasi", "--samples", "5"];
    let (code, a) = run_to_file(&args);
    assert_eq!(code, 0);
    assert_eq!(a, run_to_file(&args).1);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["seed"], 7);
    assert!(v["max_residual"].as_f64().unwrap() < 1e-25);
}

#[test]
fn usage_errors() {
    assert_eq!(main_with_args(["qsign", "--precision", "40", "expand", "--spec", "A", "--trunc", "3"]), 1);
    assert_eq!(main_with_args(["qsign", "expand", "--spec", "Z", "--trunc", "3"]), 1);
    assert_eq!(main_with_args(["qsign", "frobnicate"]), 1);
    assert_eq!(main_with_args(["qsign", "certify", "--target", "C5n"]), 1);
    assert_eq!(main_with_args(["qsign", "xcheck", "--identity", "nope"]), 1);
}

#[test]
fn binary_writes_stdout() {
    let out = Command::new(env!("CARGO_BIN_EXE_qsign"))
        .args(["--format", "table", "scan", "--trunc", "400"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("cutoff=10") && text.contains("cutoff=24"), "{text}");

    let out = Command::new(env!("CARGO_BIN_EXE_qsign"))
        .env("QSIGN_PRECISION", "4096")
        .args(["theorems"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("precision"));
}
