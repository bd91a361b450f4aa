//! End-to-end driver checks: exit codes, JSON shape, determinism.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cychom"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn compute_hp_reports_totals() {
    let (code, stdout, _) = run(&["compute-hp", "--group", "z2xz2", "--truncation", "4"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid JSON");
    assert_eq!(v["totals"]["even"], 4);
    assert_eq!(v["totals"]["odd"], 0);
    assert_eq!(v["classes"].as_array().unwrap().len(), 4);
}

#[test]
fn group_homology_single_class_with_dump() {
    let (code, stdout, _) = run(&[
        "group-homology",
        "--group",
        "dinf",
        "--class",
        "a",
        "--radius",
        "5",
        "--dump",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid JSON");
    assert_eq!(v["classes"][0]["even"], 1);
    assert_eq!(v["classes"][0]["odd"], 0);
    let dump = v["boundary_dump"].as_str().unwrap();
    assert!(dump.contains("# degree"));
}

#[test]
fn verify_suite_and_usage_errors() {
    let (code, stdout, _) = run(&["verify", "--suite", "cartan", "--seed", "7", "--count", "8"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid JSON");
    assert!(v["suite"].as_array().unwrap().iter().all(|e| e["passed"] == true));

    let (code, _, stderr) = run(&["verify", "--suite", "bogus"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown suite"));

    let (code, _, _) = run(&["compute-hp", "--group", "free:2"]);
    assert_eq!(code, 2);

    let (code, _, _) = run(&["probe", "--operator", "differential", "--lambda", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify", "--suite", "norms", "--seed", "99", "--count", "12"];
    let (c1, a, _) = run(&args);
    let (c2, b, _) = run(&args);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    assert_eq!(a, b, "same seed must give byte-identical reports");
}

#[test]
fn non_stabilization_exits_with_three() {
    let (code, _, stderr) = run(&["group-homology", "--group", "Zn:2", "--radius", "2"]);
    assert_eq!(code, 3, "stderr: {stderr}");
}

#[test]
fn probe_reports_boundedness() {
    let (code, stdout, _) = run(&[
        "probe",
        "--operator",
        "axis-cochain",
        "--samples",
        "40",
        "--seed",
        "5",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid JSON");
    assert_eq!(v["bounded"], true);
    assert!(v["observed_sup"]["large"].as_f64().unwrap() <= 1.0 + 1e-12);
}
