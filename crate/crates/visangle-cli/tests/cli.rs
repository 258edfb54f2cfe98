//! End-to-end tests of the `visangle` binary: report schema, exit codes,
//! CSV emission, env overrides, and byte stability.

use std::path::Path;
use std::process::{Command, Output};

fn visangle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_visangle"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&output.stdout)
        )
    })
}

fn write_disc(dir: &Path) -> String {
    let path = dir.join("disc.json");
    std::fs::write(&path, r#"{"a0": 1.0, "harmonics": []}"#).unwrap();
    path.display().to_string()
}

fn write_oval(dir: &Path) -> String {
    let path = dir.join("oval.json");
    std::fs::write(
        &path,
        r#"{"a0": 1.0, "harmonics": [{"k": 2, "a": 0.1, "b": 0.0}]}"#,
    )
    .unwrap();
    path.display().to_string()
}

#[test]
fn crofton_check_on_the_disc_passes() {
    let dir = tempfile::tempdir().unwrap();
    let body = write_disc(dir.path());
    let out = visangle(&["crofton", "check", "--body", &body]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = report(&out);
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["pass"], true);
    // disc value: L^2/2 - pi F = pi^2
    let value = doc["data"]["integral"]["value"].as_f64().unwrap();
    assert!((value - std::f64::consts::PI.powi(2)).abs() < 1e-2);
    // timing is stderr-only
    assert!(String::from_utf8_lossy(&out.stderr).contains("elapsed_ms="));
}

#[test]
fn construct_then_detect_recovers_the_circle() {
    let dir = tempfile::tempdir().unwrap();
    let body = dir.path().join("quarter.json").display().to_string();
    let out = visangle(&[
        "isotopic", "construct", "--c0", "21.5", "--c2", "2.5", "--c6", "1", "--out", &body,
    ]);
    assert!(out.status.success());

    let out = visangle(&["isotopic", "detect", "--body", &body, "--alpha", "1.570796"]);
    assert!(out.status.success());
    let doc = report(&out);
    let fit = &doc["data"];
    assert!((fit["radius"].as_f64().unwrap() - 6.5574).abs() < 1e-3);
    assert!(fit["deviation"].as_f64().unwrap() <= 1e-6);
}

#[test]
fn uniqueness_fit_recovers_the_deficit_coefficients() {
    let out = visangle(&[
        "crofton", "uniqueness", "--f", "crofton", "--ms", "2,3", "--t", "0.05",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = report(&out);
    let a = doc["data"]["perimeter_sq_coeff"].as_f64().unwrap();
    let b = doc["data"]["area_coeff"].as_f64().unwrap();
    assert!((a - 0.5).abs() <= 1e-3, "a = {a}");
    assert!((b + std::f64::consts::PI).abs() <= 1e-2, "b = {b}");
}

#[test]
fn reports_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let body = write_oval(dir.path());
    let first = visangle(&["isotopic", "limits", "--body", &body]);
    let second = visangle(&["isotopic", "limits", "--body", &body]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn curve_csv_has_the_advertised_columns() {
    let dir = tempfile::tempdir().unwrap();
    let body = write_oval(dir.path());
    let csv = dir.path().join("curve.csv");
    let out = visangle(&[
        "isotopic", "curve", "--body", &body, "--alpha", "1.0", "--n", "512",
        "--emit", &csv.display().to_string(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("phi,X,Y"));
    assert_eq!(lines.count(), 512);
}

#[test]
fn angle_circle_csv_and_grid_env() {
    let dir = tempfile::tempdir().unwrap();
    let body = write_oval(dir.path());
    let csv = dir.path().join("angle.csv");
    let out = Command::new(env!("CARGO_BIN_EXE_visangle"))
        .args([
            "angle", "--body", &body, "--circle", "4.0",
            "--emit", &csv.display().to_string(),
        ])
        .env("VAL_GRID", "600")
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc = report(&out);
    assert_eq!(doc["data"]["samples"], 600);
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("phi,theta,w,w_phi"));
    assert_eq!(lines.count(), 600);
}

#[test]
fn interior_point_reports_a_structured_error() {
    let dir = tempfile::tempdir().unwrap();
    let body = write_oval(dir.path());
    let out = visangle(&["angle", "--body", &body, "--point", "0.1,0.1"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = report(&out);
    assert_eq!(doc["error"]["kind"], "point-inside-body");
    assert_eq!(doc["pass"], false);
}

#[test]
fn subcubic_weight_expression_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let body = write_disc(dir.path());
    let out = visangle(&["crofton", "integral", "--body", &body, "--f", "w^2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["error"]["kind"], "singular-at-zero");
}

#[test]
fn usage_errors_exit_two() {
    let out = visangle(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
    let out = visangle(&[]);
    assert_eq!(out.status.code(), Some(2));
    let out = visangle(&["--preset", "thm99"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn preset_demonstration_passes() {
    let out = visangle(&["--preset", "thm53"]);
    assert!(out.status.success());
    let doc = report(&out);
    assert_eq!(doc["pass"], true);
    assert_eq!(doc["command"], "preset thm53");
    assert!(doc["checks"].as_array().unwrap().len() >= 4);
}

#[test]
fn detect_on_a_generic_body_fails_the_circle_check() {
    let dir = tempfile::tempdir().unwrap();
    let body = write_oval(dir.path());
    let out = visangle(&["isotopic", "detect", "--body", &body, "--alpha", "1.0"]);
    // a well-formed report, but the circle identity fails: exit 1
    assert_eq!(out.status.code(), Some(1));
    let doc = report(&out);
    assert_eq!(doc["pass"], false);
    assert!(doc["data"]["deviation"].as_f64().unwrap() > 1e-3);
}
