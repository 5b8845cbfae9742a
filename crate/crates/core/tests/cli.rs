use std::process::{Command, Output};

use serde_json::Value;

fn enthom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_enthom"))
        .args(args)
        .env_remove("ENTHOM_ZERO_EPS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = enthom(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn bars(v: &Value, dim: &str) -> Vec<(f64, Option<f64>)> {
    v["barcode"]["dims"][dim]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| (b[0].as_f64().unwrap(), b[1].as_f64()))
        .collect()
}

#[test]
fn analyze_ghz3_dtilde() {
    let v = json(&["analyze", "--state", "ghz3", "--distance", "dtilde", "--monotone", "negativity", "--complex", "rips"]);
    let h0 = bars(&v, "0");
    assert_eq!(h0.len(), 3);
    assert_eq!(h0.iter().filter(|b| b.1.is_none()).count(), 1);
    for (birth, death) in h0.iter().filter(|b| b.1.is_some()) {
        assert_eq!(*birth, 0.0);
        assert!((death.unwrap() - 4.0).abs() < 1e-9);
    }
    assert_eq!(v["barcode"]["dims"]["0"][2][1], "inf");
}

#[test]
fn analyze_product3_dtilde() {
    let v = json(&["analyze", "--state", "product3", "--distance", "dtilde"]);
    assert!(bars(&v, "0").iter().all(|b| b.1.is_none()));
    assert_eq!(v["signature"], "H0:0f3i");
}

#[test]
fn analyze_w3_cech() {
    let v = json(&["analyze", "--state", "w3", "--distance", "d", "--complex", "cech", "--monotone", "concurrence"]);
    let h1 = bars(&v, "1");
    assert_eq!(h1.len(), 1);
    assert!((h1[0].0 - 1.5).abs() < 1e-9);
    assert!((h1[0].1.unwrap() - 3f64.sqrt()).abs() < 1e-9);
}

#[test]
fn classify_examples() {
    assert_eq!(json(&["classify", "--state", "F"])["genuine_rips"], "4q-f/B6");
    assert_eq!(json(&["classify", "--state", "w3"])["genuine_cech"], "3q-c-W");
    let v = json(&["classify", "--state", "bisep3"]);
    assert_eq!(v["separability"], "bi-separable");
    assert!(v["genuine_rips"].is_null());
}

#[test]
fn state_file_input() {
    let dir = std::env::temp_dir().join(format!("enthom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bell.json");
    std::fs::write(&path, r#"{"amplitudes":[[1,0],[0,0],[0,0],[1,0]],"n":2}"#).unwrap();
    let v = json(&["analyze", "--state-file", path.to_str().unwrap()]);
    let amps = v["state"]["amplitudes"].as_array().unwrap();
    assert!((amps[0][0].as_f64().unwrap() - 0.5f64.sqrt()).abs() < 1e-12);
    assert_eq!(v["signature"], "H0:1f1i");

    std::fs::write(&path, r#"{"n":2,"amplitudes":[[1,0]]}"#).unwrap();
    let out = enthom(&["analyze", "--state-file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn input_errors_exit_with_2() {
    for args in [
        &["analyze", "--state", "nope"][..],
        &["analyze"][..],
        &["analyze", "--state", "w3", "--complex", "alpha"][..],
        &["analyze", "--state", "w3", "--zero-eps", "-1"][..],
        &["bound", "--n", "9"][..],
        &["survey", "--n", "2", "--samples", "1"][..],
        &["frobnicate"][..],
    ] {
        let out = enthom(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(!err.trim().is_empty());
    }
}

#[test]
fn bad_env_tolerance_is_an_input_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_enthom"))
        .args(["analyze", "--state", "w3"])
        .env("ENTHOM_ZERO_EPS", "small")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn env_tolerance_is_overridden_by_flag() {
    // A huge tolerance zeroes every w3 pair; the flag restores the default.
    let run = |flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_enthom"));
        cmd.args(["analyze", "--state", "w3"]).env("ENTHOM_ZERO_EPS", "0.5");
        if let Some(f) = flag {
            cmd.args(["--zero-eps", f]);
        }
        serde_json::from_slice::<Value>(&cmd.output().unwrap().stdout).unwrap()
    };
    assert_eq!(run(None)["signature"], "H0:0f3i");
    assert_eq!(run(Some("1e-9"))["signature"], "H0:2f1i");
}

#[test]
fn bound_values() {
    assert_eq!(json(&["bound", "--n", "3"])["bound"], 10);
    assert_eq!(json(&["bound", "--n", "2"])["bound"], 2);
    assert_eq!(json(&["bound", "--n", "4"])["bound"], 912);
}

#[test]
fn survey_is_deterministic() {
    let a = enthom(&["survey", "--n", "3", "--samples", "200", "--seed", "5"]);
    let b = enthom(&["survey", "--n", "3", "--samples", "200", "--seed", "5"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["samples"], 200);
    let empty = json(&["survey", "--n", "4", "--samples", "0"]);
    assert_eq!(empty["signatures"].as_array().unwrap().len(), 0);
}

#[test]
fn render_outputs() {
    let out = enthom(&["render", "--state", "ghz3", "--distance", "dtilde"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().all(|l| l.chars().count() <= 100));
    assert_eq!(text.lines().filter(|l| l.ends_with('>')).count(), 1);

    let out = enthom(&["render", "--state", "w3", "--complex", "cech", "--output", "svg"]);
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert_eq!(svg.matches("<line").count(), 4);
    assert_eq!(svg.matches(r#"stroke="red""#).count(), 1);
}

#[test]
fn render_from_barcode_file() {
    let dir = std::env::temp_dir().join(format!("enthom-bc-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("analysis.json");
    let out = enthom(&["analyze", "--state", "psi_b3"]);
    std::fs::write(&path, &out.stdout).unwrap();
    let r = enthom(&["render", "--barcode-file", path.to_str().unwrap()]);
    assert!(r.status.success());
    assert_eq!(String::from_utf8(r.stdout).unwrap().lines().count(), 4);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn config_file_is_read() {
    let dir = std::env::temp_dir().join(format!("enthom-toml-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.toml");
    std::fs::write(&path, "complex = \"cech\"\n[monotone]\nkind = \"concurrence\"\n").unwrap();
    let v = json(&["analyze", "--state", "w3", "--config", path.to_str().unwrap()]);
    assert_eq!(v["complex"], "cech");
    assert_eq!(v["distance_matrix"]["kind"], "concurrence");
    std::fs::remove_dir_all(&dir).ok();
}
