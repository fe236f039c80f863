use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parity-ns")).args(args).output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn witness(dir: &Path, name: &str, kind: &str, half: bool) -> String {
    let path = dir.join(name).to_str().unwrap().to_string();
    let mut args = vec!["witness", "--kind", kind, "--n", "8", "--seed", "3", "--amplitude", "1e-2", "--out", &path];
    if half {
        args.push("--half");
    }
    assert_eq!(code(&args), 0);
    path
}

#[test]
fn enumerate_with_out_prints_summary() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r/enum.json");
    let out = run(&["enumerate", "--mode", "real", "--out", report.to_str().unwrap()]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.lines().any(|l| l == "total 30"), "{stdout}");
    let json: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["schema"], "parity-ns/1");
    assert_eq!(json["command"], "enumerate");
    assert!(json["inputHash"].as_str().unwrap().starts_with("sha256:"));
    assert_eq!(json["result"]["kinds"].as_array().unwrap().len(), 30);
}

#[test]
fn reports_are_deterministic() {
    let a = run(&["rigidity", "--mode", "real", "--n", "8", "--seeds", "2", "--quad-points", "3"]);
    let b = run(&["rigidity", "--mode", "real", "--n", "8", "--seeds", "2", "--quad-points", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(run(&["example41", "--n", "16"]).stdout, run(&["example41", "--n", "16"]).stdout);
}

#[test]
fn malformed_config_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = witness(dir.path(), "u.bin", "(100, 010, 001)", false);
    let out_dir = dir.path().join("out");
    let out_dir = out_dir.to_str().unwrap();
    for (name, text) in [
        ("bad.json", "{\"n\": 8, \"dt\": "),
        ("unknown.json", "{\"n\": 8, \"stepSize\": 0.1}"),
        ("negative.json", "{\"n\": 8, \"dt\": -0.1}"),
        ("odd.json", "{\"n\": 7}"),
        ("mismatch.json", "{\"n\": 16}"),
    ] {
        let cfg = dir.path().join(name);
        fs::write(&cfg, text).unwrap();
        assert_eq!(code(&["solve", "--in", &input, "--config", cfg.to_str().unwrap(), "--out-dir", out_dir]), 2, "{name}");
    }
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(code(&["enumerate"]), 2);
    assert_eq!(code(&["enumerate", "--mode", "quaternion"]), 2);
    assert_eq!(code(&["decompose", "--in", "/nonexistent/u.bin", "--out-dir", "/tmp"]), 2);
    assert_eq!(code(&["witness", "--kind", "(100, 010)", "--out", "/tmp/never.bin"]), 2);
    assert_eq!(code(&["beltrami", "--n", "15"]), 2);
}

#[test]
fn solve_writes_states_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let input = witness(dir.path(), "u.bin", "(100, 010, 001)", false);
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"n": 8, "dt": 0.02, "tEnd": 0.04, "quadPoints": 5}"#).unwrap();
    let out_dir = dir.path().join("run");
    let status = code(&["solve", "--in", &input, "--config", cfg.to_str().unwrap(), "--out-dir", out_dir.to_str().unwrap()]);
    assert_eq!(status, 0);
    let report: Value = serde_json::from_str(&fs::read_to_string(out_dir.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    for j in 0..3 {
        assert!(out_dir.join(format!("state_{j:04}.bin")).exists());
        assert!(out_dir.join(format!("state_{j:04}.bin.json")).exists());
    }
}

#[test]
fn decompose_writes_eight_parts() {
    let dir = tempfile::tempdir().unwrap();
    let input = witness(dir.path(), "u.bin", "(100+i011, 010+i101, 001+i110)", false);
    let out_dir = dir.path().join("parts");
    let status = code(&["decompose", "--in", &input, "--beta", "011", "--out-dir", out_dir.to_str().unwrap()]);
    assert_eq!(status, 0);
    let bins = fs::read_dir(&out_dir).unwrap().filter(|e| e.as_ref().unwrap().path().extension().is_some_and(|x| x == "bin")).count();
    assert_eq!(bins, 8);
}

#[test]
fn incompatible_half_data_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    // Diagonal data have nonzero x3 traces, which the antisymmetric extension cannot carry.
    let input = witness(dir.path(), "h.bin", "(100, 010, 001)", true);
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"n": 8, "tEnd": 0.02}"#).unwrap();
    let status = code(&["halfspace", "--in", &input, "--extend", "antisym", "--config", cfg.to_str().unwrap()]);
    assert_eq!(status, 1);
    let status = code(&["halfspace", "--in", &input, "--extend", "sym", "--config", cfg.to_str().unwrap()]);
    assert_eq!(status, 0);
}
