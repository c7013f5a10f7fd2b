use std::f64::consts::PI;
use std::process::Command;

use measure_lp::cli::{exit_code, run, EXIT_CONFIG, EXIT_FAILURES, EXIT_INTEGRITY, EXIT_OK};
use measure_lp::measure::cantor_product;
use measure_lp::Error;
use serde_json::Value;

fn measlp(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("measlp").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = measlp(args);
    assert_eq!(code, EXIT_OK, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn csv_rows(text: &str) -> Vec<[f64; 4]> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with('y'))
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            [v[0], v[1], v[2], v[3]]
        })
        .collect()
}

#[test]
fn norm_of_a_point_mass() {
    let v = json(&["norm", "--measure", "delta(0)", "--p", "1"]);
    assert!((v["result"]["value"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["config_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn norm_of_zero() {
    let v = json(&["norm", "--measure", "zero"]);
    assert_eq!(v["result"]["value"].as_f64(), Some(0.0));
}

#[test]
fn restricted_cantor_norm_is_reported_with_diagnostics() {
    let v = json(&["norm", "--measure", "cantor", "--p", "1.2", "--restrict", "0.25,0.5"]);
    let r = &v["result"];
    // the restricted piece holds a scaled copy of the Cantor measure, whose
    // transform does not decay
    assert_eq!(r["divergence_flag"], true);
    assert_eq!(r["value"], "inf");
    assert!(!r["windows"].as_array().unwrap().is_empty());
}

#[test]
fn transforms_match_closed_forms() {
    let (code, out, _) = measlp(&["transform", "--measure", "gauss(0,1)", "--window", "3", "--points", "61"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("# seed=7"));
    for [y, re, im, _] in csv_rows(&out) {
        assert!((re - (-PI * y * y).exp()).abs() < 1e-9 && im.abs() < 1e-9, "y = {y}");
    }
    let (_, out, _) = measlp(&["transform", "--measure", "delta(0.3)", "--window", "5", "--points", "41"]);
    for [y, re, im, abs] in csv_rows(&out) {
        assert!((abs - 1.0).abs() < 1e-12);
        assert!((re - (2.0 * PI * 0.3 * y).cos()).abs() < 1e-12 && (im + (2.0 * PI * 0.3 * y).sin()).abs() < 1e-12);
    }
    let (_, out, _) = measlp(&["transform", "--measure", "cantor", "--window", "20", "--points", "81"]);
    for [y, re, im, _] in csv_rows(&out) {
        let (z, _) = cantor_product(y, 40);
        assert!((re - z.re).abs() < 1e-6 && (im - z.im).abs() < 1e-6, "y = {y}");
    }
}

#[test]
fn parse_errors_carry_positions() {
    let (code, _, err) = measlp(&["norm", "--measure", "sum[delta(0), wobble(1)]"]);
    assert_eq!(code, EXIT_CONFIG);
    assert!(err.contains("line 1, column 15"), "{err}");
    let (code, _, _) = measlp(&["norm", "--measure", "delta(0)", "--p", "0.5"]);
    assert_eq!(code, EXIT_CONFIG);
    let (code, _, _) = measlp(&["suite", "nonsense"]);
    assert_eq!(code, EXIT_CONFIG);
    let (code, _, _) = measlp(&["frobnicate"]);
    assert_eq!(code, EXIT_CONFIG);
}

#[test]
fn config_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("desk.cfg");
    std::fs::write(&good, "seed = 3\ncases = 2\n").unwrap();
    let v = json(&["suite", "uncertainty", "--config", good.to_str().unwrap()]);
    assert_eq!(v["seed"], 3);
    assert_eq!(v["pass"], 7);
    let bad = dir.path().join("bad.cfg");
    std::fs::write(&bad, "seed = 3\ncases: 2\n").unwrap();
    let (code, _, err) = measlp(&["suite", "sinc", "--config", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_CONFIG);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn suite_exit_codes() {
    let (code, out, _) = measlp(&["suite", "sinc"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["runs"][0]["sinc_table"].as_array().unwrap().len(), 4);
    // p = 3 set bounds are violated, so failures are present
    let (code, out, _) = measlp(&["suite", "sets", "--cases", "4", "--seed", "1"]);
    assert_eq!(code, EXIT_FAILURES);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["fail"], 1);
    assert_eq!(exit_code(&Error::Integrity("routes disagree".into())), EXIT_INTEGRITY);
    assert_eq!(exit_code(&Error::Config("x".into())), EXIT_CONFIG);
}

#[test]
fn suites_are_byte_identical_across_runs() {
    let a = measlp(&["suite", "uncertainty", "--cases", "5", "--seed", "9"]).1;
    let b = measlp(&["suite", "uncertainty", "--cases", "5", "--seed", "9"]).1;
    assert_eq!(a, b);
    let c = measlp(&["suite", "uncertainty", "--cases", "5", "--seed", "10"]).1;
    assert_ne!(a, c);
}

#[test]
fn binary_honours_the_output_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_measlp"))
        .args(["norm", "--measure", "atoms[(0, 0.5), (1, 0.5)]", "--p", "1"])
        .env("MEASLP_OUTPUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read_to_string(dir.path().join("norm.json")).unwrap();
    let v: Value = serde_json::from_str(&written).unwrap();
    assert!((v["result"]["value"].as_f64().unwrap() - 1.0).abs() < 1e-9);

    let bad = Command::new(env!("CARGO_BIN_EXE_measlp"))
        .args(["norm", "--measure", "delta("])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
