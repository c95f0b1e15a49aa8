//! End-to-end tests of the binary: exit-code contract, deterministic
//! output, and JSON round-trips.

use std::process::{Command, Output};

use qsymfun::scalars::{base, QScalar};
use qsymfun::symfun::{q_power, SymPoly};
use qsymfun::Coeff;

fn qsymfun(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsymfun"))
        .args(args)
        .env_remove("QSYMFUN_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8 output")
}

#[test]
fn compute_power_text() {
    let out = qsymfun(&["compute", "p", "--n", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "e1^2 - [2]*e2");
}

#[test]
fn compute_power_json_round_trip() {
    let out = qsymfun(&["compute", "p", "--n", "3", "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let parsed = SymPoly::from_json(&value).unwrap();
    assert_eq!(parsed, q_power(3, base(1)).unwrap());
}

#[test]
fn compute_zq_and_jtree() {
    let out = qsymfun(&["compute", "zq", "--lambda", "1,1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1 + q");
    let out = qsymfun(&["compute", "jtree", "--n", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "2 + q");
}

#[test]
fn compute_hermite_values() {
    let out = qsymfun(&["compute", "hermite1", "--n", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "x^2 - (1 - q)");
    let out = qsymfun(&["compute", "hermite2", "--n", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "x");
}

#[test]
fn verify_exit_codes() {
    let ok = qsymfun(&["verify", "girard", "--max-n", "3"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("PASS girard-elementary"));
    assert!(stdout(&ok).contains("seed:"));

    let bad = qsymfun(&["verify", "girard", "--max-n", "3", "--inject-perturbation"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL"));

    let unknown = qsymfun(&["verify", "no-such-suite"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    let missing = qsymfun(&["compute", "p"]);
    assert_eq!(missing.status.code(), Some(2));
    let bad_flag = qsymfun(&["compute", "p", "--n", "not-a-number"]);
    assert_eq!(bad_flag.status.code(), Some(2));
    let bad_partition = qsymfun(&["compute", "zq", "--lambda", "1,3"]);
    assert_eq!(bad_partition.status.code(), Some(2));
    let bad_base = qsymfun(&["verify", "girard", "--base-m", "0"]);
    assert_eq!(bad_base.status.code(), Some(2));
}

#[test]
fn deterministic_output() {
    let a = qsymfun(&["verify", "exp-formulas", "--t-order", "5"]);
    let b = qsymfun(&["verify", "exp-formulas", "--t-order", "5"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn table_json_round_trip() {
    let out = qsymfun(&["table", "jtree", "--to", "4", "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let rows = value.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for row in rows {
        let n = row["n"].as_u64().unwrap() as u32;
        let poly = QScalar::from_json(&row["poly"]).unwrap();
        assert_eq!(poly, qsymfun::oracle::j_poly(n).unwrap());
    }
}

#[test]
fn table_latex_is_standalone() {
    let out = qsymfun(&["table", "hermite1", "--to", "3", "--format", "latex"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("\\documentclass"));
    assert!(text.contains("\\begin{tabular}"));
    assert!(text.trim_end().ends_with("\\end{document}"));
}

#[test]
fn pseries_json_round_trip() {
    let out = qsymfun(&["compute", "pseries", "--t-order", "4", "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(value["t_order"], 4);
    let coeffs = value["coeffs"].as_array().unwrap();
    let p2 = SymPoly::from_json(&coeffs[2]).unwrap();
    let expected = q_power(2, base(1))
        .unwrap()
        .scale(&qsymfun::scalars::qint(2, base(1)).try_inv().unwrap());
    assert_eq!(p2, expected);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("qsymfun-out-{}.txt", std::process::id()));
    let out = qsymfun(&["compute", "p", "--n", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written.trim(), "e1^2 - [2]*e2");
    let _ = std::fs::remove_file(path);
}
