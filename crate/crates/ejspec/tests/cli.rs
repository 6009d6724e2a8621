use std::f64::consts::LN_2;

use ejspec::cli::{plan, run, Cli, Task, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE};
use ejspec_core::operator::{Mode, OperatorSpec};
use ejspec_core::spectral::first_entry;
use ejspec_core::Complex64 as C64;
use clap::Parser;
use serde_json::Value;

struct Outcome {
    code: i32,
    out: String,
    err: String,
}

fn call(args: &[&str]) -> Outcome {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let full = std::iter::once("ejspec").chain(args.iter().copied());
    let code = run(full, &mut out, &mut err);
    Outcome { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn json(args: &[&str]) -> Value {
    let o = call(args);
    assert_eq!(o.code, EXIT_OK, "{}", o.err);
    serde_json::from_str(&o.out).unwrap()
}

fn complex(v: &Value) -> C64 {
    C64::new(v["re"].as_f64().unwrap(), v["im"].as_f64().unwrap())
}

#[test]
fn trivial_modulus_has_unit_eigenvalue() {
    let v = json(&["eigs", "--alpha", "0", "--index", "0"]);
    assert_eq!(complex(&v["eigenvalues"][0]["lambda"]), C64::new(1.0, 0.0));
}

#[test]
fn large_modulus_points_to_tilde_mode() {
    let o = call(&["eigs", "--alpha", "1.5"]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.err.contains("--mode tilde"), "{}", o.err);
    let v = json(&["constants", "--alpha", "1.5", "--mode", "tilde"]);
    assert_eq!(v["spec"]["mode"], "tilde");
    assert!((complex(&v["modulus"]) - C64::new(1.0 / 1.5, 0.0)).norm() < 1e-15);
}

#[test]
fn unit_modulus_m_function_is_i_log_two() {
    let v = json(&["mfunc", "--alpha", "1", "--z", "0,1"]);
    assert!((complex(&v["m"]) - C64::new(0.0, LN_2)).norm() < 1e-10);
}

#[test]
fn first_eigenvector_entry_matches_closed_form() {
    let v = json(&["eigvec", "--alpha", "0,0.5", "--index", "0", "--entries", "8"]);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 8);
    let want = first_entry(&OperatorSpec::standard(C64::new(0.0, 0.5)), 0).unwrap();
    assert!((complex(&entries[0]) - want).norm() < 1e-9 * want.norm());
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["eigs", "--alpha", "abc"][..],
        &["eigs", "--bogus"],
        &["frobnicate"],
        &["mfunc", "--alpha", "0.5"],
        &["mfunc", "--alpha", "0.5", "--z", "1,1", "--format", "csv"],
        &["eigs", "--alpha", "0.5", "--entries", "3"],
        &["pseudo", "--alpha", "0.5", "--re", "1:0:5", "--im", "-1:1:5"],
        &["eigs", "--alpha", "0.5", "--mode", "tilde"],
        &["eigs", "--alpha", "0.5", "--dim", "0"],
        &["verify", "--suite", "nothing"],
    ] {
        let o = call(args);
        assert_eq!(o.code, EXIT_USAGE, "{args:?}");
        assert!(!o.err.is_empty());
    }
}

#[test]
fn numerical_failures_exit_with_one() {
    let o = call(&["mfunc", "--alpha", "0", "--z", "1,0"]);
    assert_eq!(o.code, EXIT_NUMERICAL);
    assert!(o.err.contains("spectrum"), "{}", o.err);
}

#[test]
fn help_exits_cleanly() {
    let o = call(&["--help"]);
    assert_eq!(o.code, EXIT_OK);
    for sub in ["constants", "eigs", "eigvec", "mfunc", "poly", "pseudo", "verify"] {
        assert!(o.out.contains(sub), "{sub}");
    }
}

#[test]
fn figure_command_parses_into_a_sweep_plan() {
    let cli = Cli::try_parse_from([
        "ejspec", "pseudo", "--alpha", "0,0.5", "--re", "-8:8:201", "--im", "-4:4:201", "--dim", "1000",
    ])
    .unwrap();
    let p = plan(cli).unwrap();
    assert_eq!(p.spec.mode, Mode::Standard);
    assert_eq!(p.spec.param, C64::new(0.0, 0.5));
    assert_eq!(p.dim, Some(1000));
    match p.task {
        Task::Pseudo { re, im } => {
            assert_eq!((re.lo, re.hi, re.count), (-8.0, 8.0, 201));
            assert_eq!((im.lo, im.hi, im.count), (-4.0, 4.0, 201));
        }
        other => panic!("unexpected task {other:?}"),
    }
}

#[test]
fn verify_elliptic_suite_passes() {
    let o = call(&["verify", "--suite", "elliptic"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.out);
    let lines: Vec<&str> = o.out.lines().collect();
    assert!(lines[..lines.len() - 1].iter().all(|l| l.starts_with("PASS ")));
}

#[test]
fn json_numbers_carry_seventeen_digits() {
    let o = call(&["constants", "--alpha", "0.3,0.4"]);
    let v: Value = serde_json::from_str(&o.out).unwrap();
    for key in ["modulus", "complementary_modulus", "quarter_period", "complementary_quarter_period", "nome"] {
        assert!(v[key]["re"].is_number() && v[key]["im"].is_number(), "{key}");
    }
    let k = complex(&v["quarter_period"]).re;
    let text = format!("{k:.16e}");
    assert!(o.out.contains(&text), "{text}");
    let mantissa = text.split('e').next().unwrap().replace(['.', '-'], "");
    assert_eq!(mantissa.len(), 17);
}

#[test]
fn seed_fixes_sweep_output() {
    let args = ["pseudo", "--alpha", "0,0.5", "--re", "-2:2:3", "--im", "-1:1:3", "--dim", "80", "--seed", "9"];
    let (a, b) = (call(&args), call(&args));
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.out, b.out);
}

#[test]
fn output_file_receives_the_payload() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eigs.csv");
    let o = call(&["eigs", "--alpha", "0.5", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("index,re,im"));
    assert_eq!(lines.count(), 11);
}
