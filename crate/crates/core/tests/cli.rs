use std::process::Command;

use padic_uniform::cli::{run, EXIT_BUDGET, EXIT_MATH, EXIT_OK, EXIT_USAGE};
use padic_uniform::growth::GrowthTable;
use padic_uniform::io::{load_algebra, read_json, AlgebraFile};
use padic_uniform::presentation::{Presentation, PresentationFile};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("padic-uniform").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["invariant", "--k", "5", "--d", "2"]).0, EXIT_OK);
    let (code, _, err) = call(&["invariant", "--k", "2"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("at least 3"), "{err}");
    assert_eq!(call(&["no-such-command"]).0, EXIT_USAGE);
    // d must be a unit
    assert_eq!(call(&["invariant", "--p", "5", "--d", "5"]).0, EXIT_MATH);
    assert_eq!(call(&["invariant", "--p", "6"]).0, EXIT_MATH);
    let (code, _, err) = call(&["growth", "--p", "5", "--k", "4", "--max-index", "2", "--budget", "1000"]);
    assert_eq!(code, EXIT_BUDGET, "{err}");
    assert_eq!(call(&["series", "--degree", "40"]).0, EXIT_MATH);
    assert_eq!(call(&["--help"]).0, EXIT_OK);
}

#[test]
fn invariant_report() {
    let (_, out, _) = call(&["invariant", "--k", "5", "--d", "2"]);
    assert!(out.contains("trace = +1"), "{out}");
    assert!(out.contains("recovered d = +2"), "{out}");
    // floor((6 - 1) / 2) = 2 is even, so det = d; for k = 4 the sign flips
    let (_, out, _) = call(&["invariant", "--k", "4", "--d", "3"]);
    assert!(out.contains("determinant = -3"), "{out}");
}

#[test]
fn distinguish_verdicts() {
    let (_, out, _) = call(&["distinguish", "--k", "4", "--d", "2", "--l", "7"]);
    assert!(out.starts_with("SEPARATED"), "{out}");
    assert!(out.contains("difference valuation = 1"), "{out}");
    let (_, out, _) = call(&["distinguish", "--k", "6", "--d", "-3", "--l", "-3"]);
    assert!(out.starts_with("INDISTINGUISHABLE@p^24"), "{out}");
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["verify", "--suite", "backend-agreement", "--seed", "9"][..],
        &["present", "--k", "3", "--p", "3"],
        &["growth", "--k", "3", "--p", "2", "--max-index", "2"],
    ] {
        assert_eq!(call(args), call(args));
    }
}

#[test]
fn verify_suites_pass() {
    let (code, out, err) = call(&["verify", "--suite", "all", "--k", "3", "--p", "3"]);
    assert_eq!(code, EXIT_OK, "{out}{err}");
    assert_eq!(out.matches("PASS").count(), 6, "{out}");
}

#[test]
fn written_files_load_back() {
    let dir = tempfile::tempdir().unwrap();
    let alg_path = dir.path().join("alg.json");
    let (code, _, _) = call(&["construct", "--k", "5", "--d", "3", "--scaled", "--out", alg_path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let alg = load_algebra(&alg_path).unwrap();
    assert!(alg.is_powerful());
    assert_eq!(alg.rank(), 5);
    let file: AlgebraFile = read_json(&alg_path).unwrap();
    assert_eq!(file.basis[0], "x");

    let text_path = dir.path().join("pres.txt");
    let (code, _, _) = call(&["present", "--k", "4", "--out", text_path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let pres: PresentationFile = read_json(&text_path.with_extension("json")).unwrap();
    assert_eq!(Presentation::from_file(&pres).unwrap().relator_count(), 6);

    let csv_path = dir.path().join("growth.csv");
    let (code, _, _) = call(&["growth", "--k", "3", "--p", "3", "--out", csv_path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let table = GrowthTable::read_csv(std::fs::File::open(&csv_path).unwrap()).unwrap();
    let a: Vec<u64> = table.rows.iter().map(|r| r.a).collect();
    assert_eq!(a, vec![1, 13, 130]);
    assert!(table.rows.iter().all(|r| r.stabilized));
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_padic-uniform");
    let ok = Command::new(bin).args(["invariant", "--k", "3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let bad = Command::new(bin).args(["invariant", "--d", "10"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_MATH));
    assert!(String::from_utf8_lossy(&bad.stderr).starts_with("error:"));
}
