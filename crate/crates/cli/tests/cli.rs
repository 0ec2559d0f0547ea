use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn eta235(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eta235"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn re(record: &Value) -> f64 {
    record["value"]["re"].as_f64().expect("finite real part")
}

#[test]
fn tilde_eta_at_zero() {
    let out = eta235(&["eval", "--fn", "tilde", "--a", "1.25", "--s", "0"]);
    assert!(out.status.success());
    let v = json(&out);
    let want = 2.0 - 5.0 * 2f64.sqrt() / 4.0;
    assert!((re(&v[0]) - want).abs() < 1e-12);
}

#[test]
fn pole_reports_residue() {
    let out = eta235(&["eval", "--fn", "tilde", "--a", "1.25", "--s", "-2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v[0]["is_pole"], Value::Bool(true));
    assert!(v[0]["value"].is_null());
    let want = 45.0 * 2f64.sqrt() / 64.0;
    assert!((v[0]["residue"].as_f64().unwrap() - want).abs() < 1e-12);
}

#[test]
fn nilmanifold_s_list_and_csv() {
    let args = ["eval", "--fn", "nil", "--r", "4", "--c", "1", "--gamma-norm", "1", "--s-list", "0,-1,-2,6:1"];
    let v = json(&eta235(&args));
    assert_eq!(v.as_array().unwrap().len(), 4);
    assert!(re(&v[0]).abs() < 1e-9);
    assert!(re(&v[1]).abs() < 1e-9);
    assert!((re(&v[2]) + 3.7562185506397185).abs() < 1e-9);
    assert_eq!(v[3]["s"]["im"].as_f64(), Some(1.0));

    let out = eta235(&[&args[..], &["--format", "csv"]].concat());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("s_re,s_im,value_re,value_im,is_pole,residue,tail_bound"));
    assert_eq!(lines.count(), 4);
}

#[test]
fn output_is_deterministic() {
    let args = ["eval", "--fn", "hurw-eta", "--a", "0.3", "--s-list", "-3.5,0.5:2,7"];
    let one = eta235(&args);
    let two = eta235(&args);
    assert!(one.status.success());
    assert_eq!(one.stdout, two.stdout);
}

#[test]
fn invalid_input_exits_2_and_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let p = path.to_str().unwrap();
    // c divisible by r is not a generic character
    let out = eta235(&["eval", "--fn", "nil", "--r", "4", "--c", "8", "--gamma-norm", "1", "--s", "0", "--out", p]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!path.exists());
    // a on the spectrum of λ_n
    let out = eta235(&["eval", "--fn", "tilde", "--a", "2.25", "--s", "1", "--out", p]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!path.exists());
    // a later point fails after earlier ones succeeded
    let out = eta235(&["eval", "--fn", "hurw-eta", "--a", "0.3", "--s-list", "1,nan", "--out", p]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!path.exists());
}

#[test]
fn job_file_keeps_request_order() {
    let dir = tempfile::tempdir().unwrap();
    let jobs = dir.path().join("jobs.json");
    let requests: Vec<Value> = (0..12)
        .map(|i| {
            serde_json::json!({
                "fn": "hurw-eta",
                "a": 0.05 + 0.07 * i as f64,
                "s_list": [[-2.5, 1.0], 3.0],
            })
        })
        .collect();
    fs::write(&jobs, serde_json::to_string(&requests).unwrap()).unwrap();
    let jobs = jobs.to_str().unwrap();
    let serial = eta235(&["eval", "--job-file", jobs]);
    let parallel = eta235(&["eval", "--job-file", jobs, "--jobs", "4"]);
    assert!(serial.status.success());
    assert_eq!(serial.stdout, parallel.stdout);

    let v = json(&parallel);
    for (i, group) in v.as_array().unwrap().iter().enumerate() {
        let a = format!("{}", 0.05 + 0.07 * i as f64);
        let single = json(&eta235(&["eval", "--fn", "hurw-eta", "--a", &a, "--s", "3"]));
        assert_eq!(group[1], single[0]);
    }
}

#[test]
fn job_file_rejects_unknown_fields() {
    let dir = tempfile::tempdir().unwrap();
    let jobs = dir.path().join("jobs.json");
    fs::write(&jobs, r#"[{"fn": "tilde", "a": 1.25, "s": 0, "sigma": 2}]"#).unwrap();
    let out = eta235(&["eval", "--job-file", jobs.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn special_values_report() {
    let out = eta235(&["special-values", "--r", "5", "--c", "2", "--gamma-norm", "1", "--l-max", "2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert!(v["max_deviation"].as_f64().unwrap() < 1e-9);
    let neg = v["negative_even"].as_array().unwrap();
    assert_eq!(neg.len(), 2);
    assert!(neg.iter().all(|e| e["sign_matches"] == Value::Bool(true)));
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn spectrum_writes_csv_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("spectrum.csv");
    let out = eta235(&[
        "spectrum", "--rep", "schroedinger", "--hbar", "1", "--basis-size", "64", "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next(), Some("index,eigenvalue"));
    assert_eq!(text.lines().count(), 1 + 3 * 64);

    let side = read_json(&dir.path().join("spectrum.csv.sidecar.json"));
    assert_eq!(side["dimension"], 192);
    assert!(side["closed_form"]["max_relative_error"].as_f64().unwrap() < 1e-3);
    assert_eq!(side["trusted"].as_array().unwrap().len(), 8);
}

#[test]
fn scalar_spectrum_is_symmetric() {
    let out = eta235(&["spectrum", "--rep", "scalar", "--alpha", "0.7", "--beta", "-1.1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let ev: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(ev.len(), 3);
    assert!((ev[0] + ev[2]).abs() < 1e-12 && ev[1].abs() < 1e-12);
    // a basis size makes no sense for a 3-dimensional representation
    let out = eta235(&["spectrum", "--rep", "scalar", "--alpha", "1", "--beta", "1", "--basis-size", "16"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = eta235(&["verify", "--suite", "tilde-eta", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = read_json(&path);
    assert_eq!(report["passed"], Value::Bool(true));

    // eight modes leave a single trusted eigenvalue, too few for the oracle
    let out = eta235(&["verify", "--suite", "oracle", "--basis-size", "8"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["passed"], Value::Bool(false));
    assert!(String::from_utf8_lossy(&out.stderr).contains("check failed"));
}
