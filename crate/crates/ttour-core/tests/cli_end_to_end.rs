//! End-to-end runs of the `ttour` binary: exit codes, piping, determinism.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn ttour() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ttour"))
}

fn tmp_dir() -> PathBuf {
    let dir = std::env::temp_dir().join("ttour-e2e");
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run_ok(args: &[&str]) -> Output {
    let out = ttour().args(args).output().unwrap();
    assert!(
        out.status.success(),
        "ttour {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

#[test]
fn gen_then_certify_pipeline() {
    let path = tmp_dir().join("gen_certify.txt");
    let gen = run_ok(&[
        "gen", "--n", "6", "--m", "9", "--t-size", "2", "--seed", "7",
    ]);
    std::fs::write(&path, &gen.stdout).unwrap();

    let certify = run_ok(&["certify", path.to_str().unwrap()]);
    let json: serde_json::Value = serde_json::from_slice(&certify.stdout).unwrap();
    assert_eq!(json["command"], "certify");
    assert_eq!(json["certificate"]["all_pass"], true);

    // identical seed, identical bytes
    let gen2 = run_ok(&[
        "gen", "--n", "6", "--m", "9", "--t-size", "2", "--seed", "7",
    ]);
    assert_eq!(gen.stdout, gen2.stdout);

    // identical config, byte-identical report
    let certify2 = run_ok(&["certify", path.to_str().unwrap()]);
    assert_eq!(certify.stdout, certify2.stdout);
}

#[test]
fn reads_instances_from_stdin() {
    let mut child = ttour()
        .args(["solve", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"3 3 2\n0 2\n0 1 1\n1 2 1\n0 2 1\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["lp_value"], "2");
    assert_eq!(json["best"], 0);
}

#[test]
fn text_format_and_out_flag() {
    let path = tmp_dir().join("text_out.txt");
    let instance = tmp_dir().join("tri.txt");
    std::fs::write(&instance, "3 3 2\n0 2\n0 1 1\n1 2 1\n0 2 1\n").unwrap();
    run_ok(&[
        "solve",
        instance.to_str().unwrap(),
        "--format",
        "text",
        "--out",
        path.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("lp value: 2"));
    assert!(text.contains("lambda 1 : e0 e1"));
    assert!(text.contains("cut"));
}

#[test]
fn exit_codes_for_failure_classes() {
    // parse error -> 2
    let bad = tmp_dir().join("bad.txt");
    std::fs::write(&bad, "3 2 2\n0 2\n0 1 1\n").unwrap();
    let out = ttour().args(["solve", bad.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));

    // capacity error -> 3
    let ok = tmp_dir().join("ok.txt");
    std::fs::write(&ok, "3 3 2\n0 2\n0 1 1\n1 2 1\n0 2 1\n").unwrap();
    let out = ttour()
        .args(["solve", ok.to_str().unwrap(), "--cap-cut-enum", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    // reserved generator family -> 1
    let out = ttour().args(["gen", "lowerbound-figure2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("reserved"));
}

#[test]
fn constants_command_reports_exact_row() {
    let out = run_ok(&["constants"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["exact"]["beta"], "4/9");
    assert_eq!(json["exact"]["omega"], "1/2");
    assert_eq!(json["exact"]["f"], "1/9");
    assert_eq!(json["exact"]["epsilon"], "1/10");
    assert_eq!(json["exact"]["tour_ratio"], "8/5");

    let text = run_ok(&["constants", "--format", "text"]);
    let text = String::from_utf8_lossy(&text.stdout).into_owned();
    assert!(text.contains("exact at beta 4/9"));
    assert!(text.contains("mixed bound minimum"));
}

#[test]
fn oracle_command_runs_clean() {
    let instance = tmp_dir().join("oracle.txt");
    let gen = run_ok(&["gen", "--n", "5", "--m", "8", "--t-size", "4", "--seed", "11"]);
    std::fs::write(&instance, &gen.stdout).unwrap();
    let out = run_ok(&["oracle", instance.to_str().unwrap()]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for check in json["checks"].as_array().unwrap() {
        assert_ne!(check["pass"], false, "{check}");
    }
}

#[test]
fn certify_honors_beta_flag() {
    let instance = tmp_dir().join("beta.txt");
    std::fs::write(&instance, "3 3 2\n0 2\n0 1 1\n1 2 1\n0 2 1\n").unwrap();
    let out = run_ok(&["certify", instance.to_str().unwrap(), "--beta", "2/5"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["certificate"]["beta"], "2/5");
    assert_eq!(json["certificate"]["all_pass"], true);

    // out-of-domain beta is an input error, not a certificate failure
    let out = ttour()
        .args(["certify", instance.to_str().unwrap(), "--beta", "1/3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
