use std::path::Path;
use std::process::{Command, Output};

fn pbias(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pbias")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

#[test]
fn spectrum_of_dictator_at_quarter() {
    let out = pbias(&["spectrum", "--family", "dictator:1", "--n", "1", "--t", "1", "--m", "2"]);
    assert!(out.status.success());
    let doc = json(&out);
    let c = doc["coefficients"][1].as_f64().unwrap();
    assert!((c + 3f64.sqrt() / 4.0).abs() < 1e-15);
    assert!((c - -0.4330127).abs() < 1e-7);
    assert_eq!(doc["bias"]["t"], 1);
}

#[test]
fn spectrum_round_trips_through_inverse() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    let back = dir.path().join("back.json");
    let original = dir.path().join("f.json");
    let s = |p: &Path| p.to_str().unwrap().to_string();

    let values: Vec<f64> = (0..16).map(|k| ((k * 37 % 11) as f64 - 5.0) / 7.0).collect();
    std::fs::write(&original, serde_json::json!({"n": 4, "values": values}).to_string()).unwrap();
    let out = pbias(&["spectrum", "--input", &s(&original), "--t", "3", "--m", "3", "--out", &s(&spec)]);
    assert!(out.status.success());
    let out = pbias(&["inverse", "--input", &s(&spec), "--out", &s(&back)]);
    assert!(out.status.success());

    let read = |p: &Path| -> Vec<f64> {
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
        v["values"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
    };
    let (a, b) = (read(&original), read(&back));
    assert_eq!(a.len(), 16);
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).abs() < 1e-10);
    }
}

#[test]
fn tightness_ratio_near_one() {
    let out = pbias(&["tightness", "--n", "10000", "--t", "1", "--m", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,p,quantity,exact,asymptotic,ratio"));
    let boundary = lines.find(|l| l.contains(",boundary,")).unwrap();
    let ratio: f64 = boundary.rsplit(',').next().unwrap().parse().unwrap();
    assert!((0.95..=1.05).contains(&ratio));
}

#[test]
fn csv_output_is_deterministic() {
    let args = ["hyper", "--family", "random-real", "--n", "5", "--seed", "3", "--t", "3", "--m", "4", "--format", "csv"];
    let (a, b) = (pbias(&args), pbias(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 21);
}

#[test]
fn verify_commands_pass() {
    for what in ["coeffs", "levels", "influence"] {
        let out = pbias(&["verify", what, "--family", "majority", "--n", "3", "--t", "3", "--m", "3"]);
        assert!(out.status.success(), "verify {what}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let out = pbias(&["verify", "coeffs", "--family", "and", "--n", "2", "--t", "1", "--m", "3", "--format", "csv"]);
    assert_eq!(stdout(&out).lines().count(), 1 + 64);
}

#[test]
fn explicit_reports_of_applications() {
    let out = pbias(&["boundary", "--family", "majority", "--n", "5", "--t", "1", "--m", "2"]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc[0]["verdict"], "ratio-only");
    assert!(doc.as_array().unwrap()[1..].iter().all(|r| r["verdict"] == "holds"));

    let out = pbias(&["correlation", "--family", "majority", "--family-b", "and", "--n", "3", "--t", "3", "--m", "3"]);
    assert!(out.status.success());
    assert_eq!(json(&out)[0]["name"], "harris_kleitman");

    let out = pbias(&["bks", "--family", "majority", "--n", "5", "--t", "1", "--m", "1", "--d", "2"]);
    assert!(out.status.success());
    assert_eq!(json(&out)[0]["verdict"], "ratio-only");

    let out = pbias(&["lowdeg", "--family", "dictator", "--n", "2", "--d", "1", "--q", "2,4"]);
    assert!(out.status.success());
}

#[test]
fn out_of_hypothesis_rate_is_not_a_violation() {
    let out = pbias(&["hyper", "--family", "majority", "--n", "3", "--delta-grid", "0.99", "--t", "1", "--m", "3"]);
    assert!(out.status.success());
    assert_eq!(json(&out)[0]["in_hypothesis"], false);
}

#[test]
fn real_p_goes_through_dyadic_approximation() {
    let out = pbias(&["spectrum", "--family", "and", "--n", "2", "--p", "0.3", "--m-max", "6"]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["bias"]["p_target"], 0.3);
    assert!(doc["bias"]["approx_error"].as_f64().unwrap() < 1e-2);

    let out = pbias(&["spectrum", "--family", "and", "--n", "2", "--p", "0.3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn configuration_errors_exit_with_two() {
    assert_eq!(pbias(&["spectrum", "--family", "and", "--bogus"]).status.code(), Some(2));
    assert_eq!(pbias(&["spectrum", "--family", "nonsense"]).status.code(), Some(2));
    assert_eq!(pbias(&["spectrum", "--family", "and", "--t", "3", "--m", "2"]).status.code(), Some(2));
    assert_eq!(pbias(&["boundary", "--family", "parity", "--n", "3"]).status.code(), Some(2));
    assert_eq!(pbias(&["spectrum"]).status.code(), Some(2));
}
