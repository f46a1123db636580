use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn pinsker(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pinsker"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(stdout(out).trim()).unwrap()
}

fn constraint_file(body: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(body.as_bytes()).unwrap();
    f
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn bound_kl_at_one() {
    let out = pinsker(&["bound", "--divergence", "kl", "--v", "1.0"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["divergence"], "kl");
    assert_eq!(v["method"], "closed");
    let b = v["bound"].as_f64().unwrap();
    assert!((b - 0.5323).abs() < 1e-4, "{b}");
    assert_eq!(v["argmin"].as_array().unwrap().len(), 1);
}

#[test]
fn bound_hellinger_at_zero() {
    let out = pinsker(&["bound", "--divergence", "hellinger", "--v", "0"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["bound"].as_f64().unwrap(), 0.0);
}

#[test]
fn bound_serializes_infinity_as_string() {
    let out = pinsker(&["bound", "--divergence", "kl", "--v", "2"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["bound"], "inf");
}

#[test]
fn bound_methods_agree() {
    let closed = pinsker(&[
        "bound",
        "--divergence",
        "jeffreys",
        "--v",
        "1",
        "--method",
        "closed",
    ]);
    let solver = pinsker(&[
        "bound",
        "--divergence",
        "jeffreys",
        "--v",
        "1",
        "--method",
        "solver",
    ]);
    let (a, b) = (json(&closed), json(&solver));
    assert_eq!(b["method"], "solver");
    let (a, b) = (a["bound"].as_f64().unwrap(), b["bound"].as_f64().unwrap());
    assert!((a - 3f64.ln()).abs() < 1e-9 && (a - b).abs() < 1e-6);
}

#[test]
fn bound_from_constraint_file_uses_solver() {
    let f =
        constraint_file(r#"{"constraints": [{"pi": 0.25, "v": 0.15}, {"pi": 0.75, "v": 0.15}]}"#);
    let out = pinsker(&[
        "bound",
        "--divergence",
        "kl",
        "--constraints",
        f.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["method"], "solver");
    assert_eq!(v["argmin"].as_array().unwrap().len(), 2);
    // The pair (0.9, 0.1) vs (0.1, 0.9) meets both constraints with KL = 0.8 ln 9.
    assert!(v["bound"].as_f64().unwrap() <= 0.8 * 9f64.ln() + 1e-9);
}

#[test]
fn closed_method_needs_central_constraint() {
    let f = constraint_file(r#"{"constraints": [{"pi": 0.3, "v": 0.1}]}"#);
    let out = pinsker(&[
        "bound",
        "--divergence",
        "kl",
        "--constraints",
        f.path().to_str().unwrap(),
        "--method",
        "closed",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn infeasible_constraints_exit_two_with_json() {
    let f = constraint_file(r#"{"constraints": [{"pi": 0.25, "v": 0.0}, {"pi": 0.5, "v": 0.4}]}"#);
    let out = pinsker(&[
        "bound",
        "--divergence",
        "kl",
        "--constraints",
        f.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"], "infeasible");

    let out = pinsker(&["bound", "--divergence", "kl", "--v", "2.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"], "infeasible");
}

#[test]
fn malformed_input_exits_one() {
    assert_eq!(
        pinsker(&["bound", "--divergence", "nope", "--v", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        pinsker(&["bound", "--divergence", "kl"]).status.code(),
        Some(1)
    );
    assert_eq!(
        pinsker(&["bound", "--divergence", "kl", "--v", "x"])
            .status
            .code(),
        Some(1)
    );
    let unsorted =
        constraint_file(r#"{"constraints": [{"pi": 0.6, "v": 0.1}, {"pi": 0.4, "v": 0.1}]}"#);
    let out = pinsker(&[
        "bound",
        "--divergence",
        "kl",
        "--constraints",
        unsorted.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let garbage = constraint_file("{\"constraints\": [");
    let out = pinsker(&[
        "bound",
        "--divergence",
        "kl",
        "--constraints",
        garbage.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(
        pinsker(&[
            "bound",
            "--divergence",
            "kl",
            "--constraints",
            "/nonexistent.json"
        ])
        .status
        .code(),
        Some(1)
    );
}

#[test]
fn output_is_deterministic() {
    let args = ["bound", "--divergence", "sym_chi2", "--v", "0.7"];
    assert_eq!(pinsker(&args).stdout, pinsker(&args).stdout);
    let curve = [
        "curve",
        "--divergence",
        "kl",
        "--method",
        "explicit,vajda",
        "--steps",
        "17",
    ];
    assert_eq!(pinsker(&curve).stdout, pinsker(&curve).stdout);
}

#[test]
fn curve_explicit_matches_fedotov() {
    let out = pinsker(&[
        "curve",
        "--divergence",
        "kl",
        "--method",
        "explicit,fedotov",
        "--v-min",
        "0",
        "--v-max",
        "1.9",
        "--steps",
        "100",
    ]);
    assert!(out.status.success());
    let (header, rows) = csv_rows(&stdout(&out));
    assert_eq!(header, ["v", "explicit", "fedotov"]);
    assert_eq!(rows.len(), 100);
    assert_eq!(rows[0][0], 0.0);
    assert_eq!(rows[99][0], 1.9);
    for r in rows {
        assert!((r[1] - r[2]).abs() <= 1e-6, "{r:?}");
    }
}

#[test]
fn curve_single_row_of_zeros() {
    let out = pinsker(&[
        "curve",
        "--divergence",
        "kl",
        "--method",
        "explicit,classical",
        "--steps",
        "1",
        "--v-min",
        "0",
        "--v-max",
        "0",
    ]);
    assert!(out.status.success());
    let (_, rows) = csv_rows(&stdout(&out));
    assert_eq!(rows, vec![vec![0.0, 0.0, 0.0]]);
}

#[test]
fn curve_explicit_dominates_classical() {
    let out = pinsker(&[
        "curve",
        "--divergence",
        "kl",
        "--method",
        "classical,explicit",
        "--v-max",
        "1.99",
        "--steps",
        "50",
    ]);
    let (_, rows) = csv_rows(&stdout(&out));
    assert!(rows.iter().all(|r| r[2] >= r[1]));
}

#[test]
fn curve_json_rows() {
    let out = pinsker(&[
        "curve",
        "--divergence",
        "hellinger",
        "--method",
        "explicit",
        "--steps",
        "3",
        "--v-max",
        "1.5",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["divergence"], "hellinger");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let last = rows[2]["explicit"].as_f64().unwrap();
    assert!((last - (2.0 - (4.0f64 - 2.25).sqrt())).abs() < 1e-15);
}

#[test]
fn curve_rejects_bad_ranges() {
    let bad = [
        vec!["--v-max", "2"],
        vec!["--v-min", "-0.1"],
        vec!["--v-min", "1", "--v-max", "0.5"],
        vec!["--steps", "0"],
    ];
    for extra in bad {
        let mut args = vec!["curve", "--divergence", "kl", "--method", "explicit"];
        args.extend(extra.iter());
        assert_eq!(pinsker(&args).status.code(), Some(1), "{extra:?}");
    }
    let out = pinsker(&["curve", "--divergence", "hellinger", "--method", "vajda"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_representation_passes() {
    let out = pinsker(&["verify", "--suite", "representation", "--seed", "1"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 9);
}

#[test]
fn verify_tightness_passes() {
    let out = pinsker(&[
        "verify",
        "--suite",
        "tightness",
        "--seed",
        "1",
        "--trials",
        "100",
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(!stdout(&out).contains("FAIL"));
}

#[test]
fn verify_oracle_passes() {
    let out = pinsker(&[
        "verify", "--suite", "oracle", "--seed", "3", "--trials", "1",
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
}

#[test]
fn verify_ladder_passes() {
    let out = pinsker(&["verify", "--suite", "ladder"]);
    let text = stdout(&out);
    assert_eq!(
        text.lines()
            .filter(|l| l.starts_with("PASS") || l.starts_with("FAIL"))
            .count(),
        5
    );
    assert!(out.status.success(), "{text}");
}

#[test]
fn verify_bad_quadrature_tolerance_exits_one() {
    let out = Command::new(env!("CARGO_BIN_EXE_pinsker"))
        .args(["verify", "--suite", "representation", "--trials", "2"])
        .env("PINSKER_QUAD_TOL", "abc")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_pinsker"))
        .args(["verify", "--suite", "representation", "--trials", "2"])
        .env("PINSKER_QUAD_TOL", "1e-8")
        .output()
        .unwrap();
    assert!(out.status.success());
}
