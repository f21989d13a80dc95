use std::f64::consts::PI;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_legendre-phase"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn f(v: &Value, key: &str) -> f64 {
    v[key].as_f64().unwrap_or_else(|| panic!("missing {key}"))
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().map(|l| l.split(',').map(str::to_owned).collect()).collect()
}

#[test]
fn eval_record_matches_the_oracle() {
    let a = stdout_json(&["eval", "--nu", "1000", "--theta", "0.7", "--terms", "4"]);
    let o = stdout_json(&["eval", "--nu", "1000", "--theta", "0.7", "--method", "oracle"]);
    for key in ["P", "Q"] {
        let (x, y) = (f(&a, key), f(&o, key));
        assert!(((x - y) / y).abs() <= 1e-12, "{key}: {x} vs {y}");
    }
    assert_eq!(a["method"], "asymptotic");
    assert_eq!(a["N"], 4);
}

#[test]
fn eval_schema_is_fixed() {
    let v = stdout_json(&["eval", "--nu", "1e3pi", "--theta", "0.3"]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        ["nu", "theta", "N", "P", "Q", "psi_re", "psi_im", "alpha_prime", "method", "bound"]
    );
    assert!((f(&v, "nu") - 1000.0 * PI).abs() < 1e-9);
    assert!(v["bound"].is_null());
}

#[test]
fn degree_one_oracle_is_cosine() {
    let v = stdout_json(&["eval", "--nu", "1", "--theta", "0.8", "--method", "oracle"]);
    assert!((f(&v, "P") - 0.8f64.cos()).abs() <= 1e-14);
}

#[test]
fn stieltjes_record_carries_its_bound() {
    let v = stdout_json(&["eval", "--nu", "1000", "--theta", "1.0", "--method", "stieltjes"]);
    assert_eq!(v["N"], 16);
    assert!(f(&v, "bound") > 0.0);
    assert!(v["Q"].is_null() && v["alpha_prime"].is_null());
}

#[test]
fn invalid_order_exits_with_status_two() {
    let out = run(&["eval", "--nu", "3", "--theta", "0.5", "--terms", "6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "domain");
    assert_eq!(err["error"]["exit_code"], 2);
}

#[test]
fn usage_errors_exit_with_status_two() {
    for args in [
        &["eval", "--nu", "x", "--theta", "0.5"][..],
        &["eval", "--theta", "0.5"],
        &["table", "bogus"],
        &["eval", "--nu", "100", "--theta", "2.0"],
        &["table", "accuracy", "--terms", "5..2"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err: Value = serde_json::from_slice(&out.stderr).unwrap();
        assert!(err["error"]["message"].is_string());
    }
}

#[test]
fn help_succeeds() {
    let out = run(&["--help"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("selftest"));
}

#[test]
fn coefficients_closed_and_solved() {
    let closed = stdout_json(&["coeffs", "--nu", "1e3", "--terms", "5"]);
    let solved = stdout_json(&["coeffs", "--nu", "1e3", "--terms", "5", "--solve"]);
    assert_eq!(closed["source"], "closed_form");
    assert_eq!(solved["source"], "solved");
    for key in ["a", "b"] {
        let (x, y) = (closed[key].as_array().unwrap(), solved[key].as_array().unwrap());
        assert_eq!(x.len(), 5);
        for (x, y) in x.iter().zip(y) {
            let (x, y) = (x.as_f64().unwrap(), y.as_f64().unwrap());
            assert!(((x - y) / x).abs() <= 1e-9);
        }
    }
    assert!(f(&closed, "max_moment_residual") <= 1e-13);
    // Orders without closed forms go through the solver on their own.
    let high = stdout_json(&["coeffs", "--nu", "1e4", "--terms", "8"]);
    assert_eq!(high["source"], "solved");
}

#[test]
fn accuracy_table_is_byte_identical_across_runs() {
    let args = ["table", "accuracy", "--nu", "1e2,1e3", "--terms", "2..=4", "--seed", "9"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let rows = csv_rows(&text);
    assert_eq!(rows[0], ["method", "nu", "points", "n2", "n3", "n4"]);
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[1][1], "1e2");
    // Locale-free scientific notation only.
    for cell in rows[1..].iter().flat_map(|r| &r[3..]) {
        assert!(cell.contains('e') && !cell.contains('E'), "{cell}");
        assert!(cell.parse::<f64>().unwrap() > 0.0);
    }
    let other = run(&["table", "accuracy", "--nu", "1e2,1e3", "--terms", "2..=4", "--seed", "10"]);
    assert_ne!(other.stdout, text.as_bytes());
}

#[test]
fn table_with_an_invalid_row_prints_nothing() {
    let out = run(&["table", "accuracy", "--nu", "1e3,20", "--terms", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("phase.csv");
    let out = run(&[
        "figure", "alpha_prime", "--nu", "1e2pi", "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let rows = csv_rows(&text);
    assert_eq!(rows[0], ["theta", "alpha_prime"]);
    assert_eq!(rows.len(), 501);
    assert!(rows[1..].iter().all(|r| r[1].parse::<f64>().unwrap() > 0.0));
}

#[test]
fn degree_zero_phase_grid_against_closed_form() {
    let out = run(&[
        "figure", "alpha_prime", "--nu", "0", "--method", "oracle", "--format", "json",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 500);
    for r in rows {
        let t = f(r, "theta");
        // psi0 = 1 - (2i/π) Q0 and psi0' = (2i/π) / sin θ
        let q0 = -(0.5 * t).tan().ln();
        let (a, b) = (1.0, -2.0 / PI * q0);
        let d = 2.0 / PI / t.sin();
        let expected = a * d / (a * a + b * b);
        assert!((f(r, "alpha_prime") - expected).abs() <= 1e-10 * expected, "theta={t}");
    }
}

#[test]
fn error_figure_layers_by_order() {
    let out = run(&["figure", "error_vs_theta", "--nu", "1000", "--n-uniform", "100", "--n-endpoint", "100"]);
    assert!(out.status.success());
    let rows = csv_rows(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(rows[0], ["theta", "log10_err_n2", "log10_err_n3", "log10_err_n4"]);
    assert_eq!(rows.len(), 201);
    let mean = |c: usize| rows[1..].iter().map(|r| r[c].parse::<f64>().unwrap()).sum::<f64>() / 200.0;
    assert!(mean(1) > mean(2) && mean(2) > mean(3));
}

#[test]
fn selftest_passes() {
    let out = run(&["selftest", "--format", "json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn timing_table_shape() {
    let out = run(&["table", "timing", "--nu", "1e3", "--n-uniform", "50", "--n-endpoint", "50"]);
    assert!(out.status.success());
    let rows = csv_rows(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(rows[0], ["method", "nu", "points", "batches", "n3", "n4", "n5", "n6", "stieltjes_m16"]);
    assert_eq!(rows[1][2], "100");
}
