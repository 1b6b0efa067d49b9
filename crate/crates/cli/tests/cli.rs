use std::path::{Path, PathBuf};
use std::process::Command;

use fillmore::json::{certificate_from_json, AnyMatrix};
use fillmore::matrix::{verify_certificate, Matrix};
use fillmore::ring::{Integer, Rational};
use fillmore_cli::run;
use serde_json::Value;
use tempfile::TempDir;

const DIAG012: &str = r#"{"ring":"Z","n":3,"entries":[["0","0","0"],["0","1","0"],["0","0","2"]]}"#;
const DEFINITE_2X2: &str = r#"{"ring":"Z","n":2,"entries":[["1","2"],["-3","-1"]]}"#;

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

/// Runs in-process with `--out`; returns the exit code and the parsed output.
fn run_to_json(dir: &TempDir, args: &[&str]) -> (i32, Option<Value>) {
    let out = dir.path().join(format!("out-{}.json", args.join("_").replace(['/', '\\', ' '], "")));
    let _ = std::fs::remove_file(&out);
    let mut argv = vec!["fillmore".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    argv.push("--out".into());
    argv.push(out.display().to_string());
    let code = run(argv);
    let value = std::fs::read_to_string(&out).ok().map(|t| serde_json::from_str(&t).unwrap());
    (code, value)
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fillmore"))
}

#[test]
fn zsim_certificate_is_unimodular() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "diag012.json", DIAG012);
    let (code, v) = run_to_json(&dir, &["prescribe-zsim", "--gamma", "3,0,0", "--in", path(&input)]);
    assert_eq!(code, 0);
    let v = v.unwrap();
    assert_eq!(v["verified"], Value::Bool(true));
    let (cert, _) = certificate_from_json::<Integer>(&v, &()).unwrap();
    let det = cert.g.det();
    assert!(det == Integer::from(1) || det == Integer::from(-1));
    let AnyMatrix::Z(a) = AnyMatrix::from_json(&serde_json::from_str(DIAG012).unwrap()).unwrap() else { panic!() };
    assert!(verify_certificate(&a, &cert));
}

#[test]
fn decide_reports_the_definite_form() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "definite.json", DEFINITE_2X2);
    let (code, v) = run_to_json(&dir, &["decide-2x2", "--gamma", "0,0", "--in", path(&input)]);
    assert_eq!(code, 0);
    let v = v.unwrap();
    assert_eq!(v["verdict"], "NotSimilar");
    let form = &v["candidates"][0]["form"];
    assert_eq!((&form["a"], &form["b"], &form["c"]), (&"2".into(), &"-2".into(), &"3".into()));
    assert_eq!(v["candidates"][0]["outcome"]["minimum"], "2");
}

#[test]
fn two_by_two_zsim_is_refused() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "definite.json", DEFINITE_2X2);
    let out = binary().args(["prescribe-zsim", "--gamma", "0,0", "--in", path(&input)]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("n >= 3"));
}

#[test]
fn precondition_and_input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "{ not json");
    let ragged = write(&dir, "ragged.json", r#"{"ring":"Z","entries":[["1","2"],["3"]]}"#);
    let scalar = write(&dir, "scalar.json", r#"{"ring":"Z","entries":[["2","0"],["0","2"]]}"#);
    let input = write(&dir, "diag012.json", DIAG012);
    for args in [
        vec!["charpoly", "--in", path(&bad)],
        vec!["charpoly", "--in", path(&ragged)],
        vec!["charpoly"],
        vec!["prescribe-field", "--gamma", "1,3", "--in", path(&scalar)],
        vec!["prescribe-ksim", "--gamma", "1,1,2", "--in", path(&input)],
        vec!["prescribe-ksim", "--gamma", "3,0", "--in", path(&input)],
        vec!["prescribe-zsim", "--gamma", "3,0,0", "--in", path(&input), "--no-verify"],
        vec!["no-such-command"],
    ] {
        let (code, v) = run_to_json(&dir, &args);
        assert_eq!(code, 2, "{args:?}");
        assert!(v.is_none(), "{args:?}");
    }
    let b = write(&dir, "ideal2.json", r#"{"ring":"Z","entries":[["1","2","0"],["4","3","0"],["0","0","5"]]}"#);
    let (code, _) = run_to_json(&dir, &["prescribe-zsim", "--gamma", "9,0,0", "--in", path(&b)]);
    assert_eq!(code, 2);
}

#[test]
fn no_verify_is_harmless_where_nothing_is_certified() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "definite.json", DEFINITE_2X2);
    let (code, v) = run_to_json(&dir, &["charpoly", "--in", path(&input), "--no-verify"]);
    assert_eq!(code, 0);
    assert_eq!(v.unwrap()["display"], "x^2 + 5");
}

#[test]
fn unknown_verdict_exits_3() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "hard.json", r#"{"ring":"Z","entries":[["-5","-6"],["-4","2"]]}"#);
    let (code, v) = run_to_json(&dir, &["decide-2x2", "--gamma", "5,-8", "--bound", "5", "--in", path(&input)]);
    assert_eq!(code, 3);
    assert_eq!(v.unwrap()["verdict"], "Unknown");
}

#[test]
fn counterexample_subcommand() {
    let dir = TempDir::new().unwrap();
    let (code, v) = run_to_json(&dir, &["counterexample"]);
    assert_eq!(code, 0);
    let v = v.unwrap();
    assert_eq!(v["report"]["verdict"], "Obstructed");
    assert_eq!(v["half_alpha_variant_annihilates"], false);
    assert_eq!(v["minpoly_coefficients"][1]["value"], serde_json::json!(["0", "0", "-2"]));

    let brewer = serde_json::to_string(&v["matrix"]).unwrap();
    let input = write(&dir, "brewer.json", &brewer);
    let (code, r) = run_to_json(&dir, &["counterexample", "--in", path(&input), "--gamma", "0,0,0"]);
    assert_eq!(code, 0);
    assert_eq!(r.unwrap()["verdict"], "Inconclusive");
    let (code, r) = run_to_json(&dir, &["counterexample", "--in", path(&input), "--gamma", "1,-1,0"]);
    assert_eq!(code, 0);
    assert_eq!(r.unwrap(), v["report"]);
}

#[test]
fn field_and_ideal_subcommands() {
    let dir = TempDir::new().unwrap();
    let f5 = write(&dir, "f5.json", r#"{"ring":"Fp","p":5,"entries":[["0","1"],["1","0"]]}"#);
    let (code, v) = run_to_json(&dir, &["prescribe-field", "--gamma", "2,3", "--in", path(&f5)]);
    assert_eq!(code, 0);
    let v = v.unwrap();
    assert_eq!(v["verified"], true);
    assert_eq!(v["B"]["p"], 5);
    assert_eq!(v["B"]["entries"][0][0], "2");

    let input = write(&dir, "ideal2.json", r#"{"ring":"Z","entries":[["1","2"],["4","3"]]}"#);
    let (code, v) = run_to_json(&dir, &["check-ideal", "--in", path(&input)]);
    assert_eq!(code, 0);
    assert_eq!(v.unwrap()["generator"], "2");

    let (code, v) = run_to_json(&dir, &["prescribe-ksim", "--gamma", "0,4", "--in", path(&input)]);
    assert_eq!(code, 0);
    let v = v.unwrap();
    let (cert, verified) = certificate_from_json::<Rational>(&v, &()).unwrap();
    assert!(verified);
    assert!(cert.b.to_integer().is_some());
    assert_eq!(v["entry_ring"], "Z");
}

#[test]
fn outputs_round_trip() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "diag012.json", DIAG012);
    let (_, v) = run_to_json(&dir, &["prescribe-zsim", "--gamma", "-4,5,2", "--in", path(&input)]);
    let v = v.unwrap();
    let (cert, verified) = certificate_from_json::<Integer>(&v, &()).unwrap();
    assert!(verified);
    let AnyMatrix::Z(a) = AnyMatrix::from_json(&serde_json::from_str(DIAG012).unwrap()).unwrap() else { panic!() };
    assert_eq!(fillmore::json::certificate_to_json(&a, &cert), v);
    for key in ["g", "g_inv", "B"] {
        assert_eq!(AnyMatrix::from_json(&v[key]).unwrap().to_json(), v[key]);
    }

    let (_, r) = run_to_json(&dir, &["rcf", "--in", path(&input)]);
    let r = r.unwrap();
    assert_eq!(r["integral"], true);
    assert_eq!(AnyMatrix::from_json(&r["rcf"]).unwrap().to_json(), r["rcf"]);
    let rq = Matrix::from_i64(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 2]]).to_rational();
    let (t, _) = certificate_from_json::<Rational>(&r["transform"], &()).unwrap();
    assert!(verify_certificate(&rq, &t));
}

#[test]
fn identical_runs_give_identical_bytes() {
    let dir = TempDir::new().unwrap();
    let z3 = write(&dir, "z3.json", r#"{"ring":"Z","entries":[["3","-1","4"],["1","5","-9"],["2","6","5"]]}"#);
    let definite = write(&dir, "definite.json", DEFINITE_2X2);
    let runs: Vec<Vec<&str>> = vec![
        vec!["prescribe-field", "--gamma", "1,2,10", "--in", path(&z3)],
        vec!["prescribe-ksim", "--gamma", "1,2,10", "--in", path(&z3), "--seed", "9"],
        vec!["prescribe-zsim", "--gamma", "1,2,10", "--in", path(&z3), "--seed", "9"],
        vec!["rcf", "--in", path(&z3), "--seed", "4"],
        vec!["charpoly", "--in", path(&z3)],
        vec!["minpoly", "--in", path(&z3)],
        vec!["check-ideal", "--in", path(&z3)],
        vec!["decide-2x2", "--gamma", "0,0", "--in", path(&definite)],
        vec!["counterexample"],
    ];
    for args in runs {
        let first = binary().args(&args).output().unwrap();
        let second = binary().args(&args).output().unwrap();
        assert_eq!(first.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&first.stderr));
        assert!(!first.stdout.is_empty());
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}
