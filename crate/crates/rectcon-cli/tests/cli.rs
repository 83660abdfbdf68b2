//! End-to-end tests of the `rectcon` binary: subcommand output, the CSV
//! export, determinism of reports, and the exit-code contract.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const SQRT_2: f64 = std::f64::consts::SQRT_2;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rectcon"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

/// Runs the binary, asserts success, and parses the stdout report.
fn run_report(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

/// Writes a norm descriptor to a unique temp path and returns the path.
fn spec_file(name: &str, body: &str) -> PathBuf {
    let path =
        std::env::temp_dir().join(format!("rectcon-cli-{}-{name}.json", std::process::id()));
    fs::write(&path, body).expect("temp spec written");
    path
}

fn square_spec() -> PathBuf {
    spec_file("square", r#"{"type": "lp", "p": "inf", "dim": 2}"#)
}

#[test]
fn mu_defaults_to_euclidean_plane() {
    let report = run_report(&["mu", "--theta-res", "512", "--phi-res", "64"]);
    assert_eq!(report["command"], "mu");
    assert_eq!(report["norm"]["type"], "euclidean");
    let value = report["result"]["value"].as_f64().unwrap();
    assert!((value - SQRT_2).abs() < 1e-3, "mu = {value}");
}

#[test]
fn mu_on_square_is_exactly_three() {
    let square = square_spec();
    let report = run_report(&["mu", "--norm", square.to_str().unwrap()]);
    let value = report["result"]["value"].as_f64().unwrap();
    assert!((value - 3.0).abs() < 1e-9, "mu = {value}");
}

#[test]
fn modulus_curve_on_square_with_csv() {
    let square = square_spec();
    let csv_path =
        std::env::temp_dir().join(format!("rectcon-cli-{}-curve.csv", std::process::id()));
    let report = run_report(&[
        "modulus",
        "--norm",
        square.to_str().unwrap(),
        "--lambda-grid",
        "0.5,1,2",
        "--csv",
        csv_path.to_str().unwrap(),
        "--theta-res",
        "512",
        "--phi-res",
        "64",
    ]);

    let points = report["result"].as_array().unwrap();
    let expected = [(0.5, 2.5, 2.5), (1.0, 3.0, 3.0), (2.0, 4.0, 5.0)];
    assert_eq!(points.len(), expected.len());
    for (point, (lambda, star, value)) in points.iter().zip(expected) {
        assert_eq!(point["lambda"].as_f64().unwrap(), lambda);
        assert!((point["star_value"].as_f64().unwrap() - star).abs() < 1e-6);
        assert!((point["value"].as_f64().unwrap() - value).abs() < 1e-6);
    }

    let csv = fs::read_to_string(&csv_path).expect("CSV written");
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("lambda,star_value,value,witness_x1,witness_x2,witness_y1,witness_y2,witness_t")
    );
    assert_eq!(lines.count(), expected.len());
    fs::remove_file(&csv_path).ok();
}

#[test]
fn modulus_empty_grid_writes_header_only_csv() {
    let square = square_spec();
    let csv_path =
        std::env::temp_dir().join(format!("rectcon-cli-{}-empty.csv", std::process::id()));
    let report = run_report(&[
        "modulus",
        "--norm",
        square.to_str().unwrap(),
        "--lambda-grid",
        "",
        "--csv",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(report["result"].as_array().unwrap().len(), 0);
    let csv = fs::read_to_string(&csv_path).expect("CSV written");
    assert_eq!(csv.lines().count(), 1, "header only: {csv:?}");
    fs::remove_file(&csv_path).ok();
}

#[test]
fn ortho_decides_square_examples() {
    let square = square_spec();
    let report = run_report(&[
        "ortho",
        "--norm",
        square.to_str().unwrap(),
        "--x",
        "1,1",
        "--y",
        "-2,0",
    ]);
    assert_eq!(report["result"]["orthogonal"], true);
    assert!(report["result"]["certificate"]["d_minus"].as_f64().unwrap() <= 0.0);

    let report = run_report(&[
        "ortho",
        "--norm",
        square.to_str().unwrap(),
        "--x",
        "1,0",
        "--y",
        "1,0",
    ]);
    assert_eq!(report["result"]["orthogonal"], false);
}

#[test]
fn segments_reports_square_edge() {
    let square = square_spec();
    let report = run_report(&["segments", "--norm", square.to_str().unwrap()]);
    let length = report["result"]["length"].as_f64().unwrap();
    assert!((length - 2.0).abs() < 1e-12, "length = {length}");
    assert_eq!(report["result"]["is_max"], true);
}

#[test]
fn ips_separates_euclidean_from_square() {
    let report = run_report(&["ips", "--theta-res", "512", "--phi-res", "64"]);
    assert_eq!(report["result"]["passed"], true);
    let sup = report["result"]["sup_found"].as_f64().unwrap();
    assert!((sup - SQRT_2).abs() < 1e-3, "sup = {sup}");

    let square = square_spec();
    let report = run_report(&[
        "ips",
        "--norm",
        square.to_str().unwrap(),
        "--theta-res",
        "512",
        "--phi-res",
        "64",
    ]);
    assert_eq!(report["result"]["passed"], false);
    let sup = report["result"]["sup_found"].as_f64().unwrap();
    assert!(sup >= 2.0 - 1e-6, "sup = {sup}");
}

#[test]
fn verify_passes_on_fixtures_and_random_polygons() {
    let report = run_report(&[
        "verify",
        "--random-polygons",
        "4",
        "--seed",
        "7",
        "--theta-res",
        "512",
        "--phi-res",
        "64",
    ]);
    assert_eq!(report["result"]["passed"], true);
    assert_eq!(report["result"]["trials"], 1000);
    assert!(report["norm"].is_null());
}

#[test]
fn reports_are_deterministic_up_to_elapsed_time() {
    let strip_elapsed = |out: &Output| -> String {
        String::from_utf8_lossy(&out.stdout)
            .lines()
            .filter(|l| !l.contains("elapsed_s"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let args = ["mu", "--theta-res", "256", "--phi-res", "32"];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success() && b.status.success());
    assert_eq!(strip_elapsed(&a), strip_elapsed(&b));
}

#[test]
fn bad_inputs_exit_with_code_two() {
    let out = run(&["mu", "--norm", "/definitely/not/a/file.json"]);
    assert_eq!(out.status.code(), Some(2));

    let bad = spec_file("bad", r#"{"type": "bogus"}"#);
    let out = run(&["mu", "--norm", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn computation_failures_exit_with_code_three() {
    let square = square_spec();
    let out = run(&[
        "modulus",
        "--norm",
        square.to_str().unwrap(),
        "--lambda-grid=-1",
    ]);
    assert_eq!(out.status.code(), Some(3));
}
