//! The `fracsolve` binary end to end.

use std::path::PathBuf;
use std::process::{Command, Output};

use fracsolve::oracle::ml_reference;
use fracsolve::solver::SolutionField;
use num_complex::Complex64;

fn fracsolve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracsolve"))
        .args(args)
        .env("FRACSOLVE_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn gauss(x: f64) -> f64 {
    (-x * x / 2.0).exp()
}

#[test]
fn wave_config_csv_matches_dalembert() {
    let out = fracsolve(&["solve", data("wave.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,t,N,err_estimate"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 3 * 201);
    // row-major over t then x
    assert_eq!((rows[0][1], rows[200][1], rows[201][1]), (0.25, 0.25, 0.5));
    for r in &rows {
        let (x, t) = (r[0], r[1]);
        assert!((r[2] - 0.5 * (gauss(x - t) + gauss(x + t))).abs() < 1e-6);
    }
}

#[test]
fn json_field_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let config = std::fs::read_to_string(data("wave.json"))
        .unwrap()
        .replace("\"csv\"", "\"json\"");
    let cfg_path = dir.path().join("run.json");
    std::fs::write(&cfg_path, config).unwrap();
    let field_path = dir.path().join("field.json");
    let out = fracsolve(&[
        "solve",
        cfg_path.to_str().unwrap(),
        "--output",
        field_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&field_path).unwrap();
    let field: SolutionField = serde_json::from_str(&text).unwrap();
    let raw: serde_json::Value = serde_json::from_str(&text).unwrap();
    for key in ["model", "xs", "ts", "values", "max_quadrature_error"] {
        assert!(raw.get(key).is_some(), "{key}");
    }
    let again: SolutionField =
        serde_json::from_str(&serde_json::to_string(&field).unwrap()).unwrap();
    assert_eq!(field, again);
    assert_eq!(field.values.len(), 3);
}

#[test]
fn invalid_configs_exit_one_naming_the_constraint() {
    let dir = tempfile::tempdir().unwrap();
    let base = std::fs::read_to_string(data("wave.json")).unwrap();
    for (from, to, needle) in [
        ("\"mu\": 2.0", "\"mu\": 2.5", "(1, 2]"),
        (
            "\"alpha\": 2.0, \"theta\": 0.0",
            "\"alpha\": 1.5, \"theta\": 0.8",
            "min(alpha, 2 - alpha)",
        ),
        ("\"nx\": 201", "\"nx\": 1", "grid.nx"),
    ] {
        let p = dir.path().join("bad.json");
        std::fs::write(&p, base.replace(from, to)).unwrap();
        let out = fracsolve(&["solve", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(1), "{to}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(err.contains(needle), "{err}");
    }
    let out = fracsolve(&["solve", "/nonexistent/config.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unreachable_accuracy_exits_two_but_writes_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let config = std::fs::read_to_string(data("wave.json")).unwrap().replace(
        "\"output\"",
        "\"quadrature\": {\"target_abs_error\": 1e-30},\n  \"output\"",
    );
    let p = dir.path().join("tight.json");
    std::fs::write(&p, config).unwrap();
    let out = fracsolve(&["solve", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().lines().count(),
        1 + 3 * 201
    );
}

#[test]
fn ml_subcommand_against_the_series_oracle() {
    let out = fracsolve(&["ml", "--alpha", "1.8", "--beta", "1.6", "--z", "-3.7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let re: f64 = text.split('+').next().unwrap().parse().unwrap();
    let want = ml_reference(1.8, 1.6, Complex64::new(-3.7, 0.0), 40).unwrap();
    assert!((re - want.re).abs() < 1e-12 * want.re.abs());
    let out = fracsolve(&["ml", "--alpha", "2", "--beta", "1", "--z", "-1"]);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .starts_with("0.5403023058681398"));
}

#[test]
fn symbol_subcommand() {
    let out = fracsolve(&["symbol", "--alpha", "1.5", "--theta", "0.4", "--k", "-2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let (re, im) = text.trim().trim_end_matches('i').split_once('-').unwrap();
    let m = 2f64.powf(1.5);
    let phase = 0.2 * std::f64::consts::PI;
    assert!((re.parse::<f64>().unwrap() - m * phase.cos()).abs() < 1e-14);
    assert!((im.parse::<f64>().unwrap() - m * phase.sin()).abs() < 1e-14);
}

#[test]
fn verify_selected_group() {
    let out = fracsolve(&["verify", "laplace_pair"]);
    assert_eq!(out.status.code(), Some(0));
    let reports: Vec<serde_json::Value> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(reports.len(), 54);
    assert!(reports.iter().all(|r| r["passed"] == true));
    let out = fracsolve(&["verify", "no_such_group"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("fft_inversion"));
}
