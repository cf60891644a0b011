use std::path::Path;

use serde_json::Value;
use solvlie::workbench::cli::run;
use tempfile::TempDir;

fn solvlie(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("solvlie").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn emit(dir: &TempDir, entry: &str, params: &[&str]) -> String {
    let mut args = vec!["catalog", "emit", entry];
    for p in params {
        args.extend(["--param", p]);
    }
    let (code, text, _) = solvlie(&args);
    assert_eq!(code, 0);
    write(dir, &format!("{entry}{}.lie", params.join("_")), &text)
}

#[test]
fn derived_ideal_of_ecomp_is_not_complemented() {
    let dir = TempDir::new().unwrap();
    let b2 = write(&dir, "b2.lie", "field gf 2\ndim 3\nbasis e0 e1 x\nbracket e0 x = e1\nbracket e1 x = e0\n");
    let (code, out, _) = solvlie(&["complemented", &b2]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("false"));
    assert!(lines.next().unwrap().starts_with("witness: span(e0 + e1)"), "{out}");

    let (code, out, _) = solvlie(&["--json", "frattini", &b2]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["algebra"]["dim"], 3);
    assert_eq!(v["subspaces"]["frattini"], serde_json::json!([[1, 1, 0]]));
}

#[test]
fn ecomp_passes_every_route_and_verifies() {
    let dir = TempDir::new().unwrap();
    let path = emit(&dir, "ecomp", &["p=3"]);
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("field gf 3\ndim 5\n"));
    for route in ["splits_over_ideals", "prefrattini", "phi-free-hereditary", "definitional"] {
        let (code, out, _) = solvlie(&["complemented", "--route", route, &path]);
        assert_eq!((code, out.lines().next()), (0, Some("true")), "{route}");
    }
    let (code, out, _) = solvlie(&["--json", "verify", &path]);
    assert_eq!(code, 0, "{out}");
    let v: Value = serde_json::from_str(&out).unwrap();
    let records = v["records"].as_array().unwrap();
    assert!(records.iter().all(|r| r["status"] != "fail"));
    assert!(records.iter().any(|r| r["id"] == "decomposition.corollary" && r["status"] == "pass"));
}

#[test]
fn every_command_runs_on_a_catalog_entry() {
    let dir = TempDir::new().unwrap();
    let path = emit(&dir, "a3", &[]);
    for cmd in ["info", "frattini", "prefrattini", "chief-series", "residual", "decompose"] {
        let (code, out, err) = solvlie(&[cmd, &path]);
        assert_eq!(code, 0, "{cmd}: {err}");
        assert!(!out.is_empty(), "{cmd}");
        let (code, out, _) = solvlie(&["--json", cmd, &path]);
        assert_eq!(code, 0);
        serde_json::from_str::<Value>(&out).unwrap_or_else(|e| panic!("{cmd}: {e}"));
    }
    let (code, out, _) = solvlie(&["catalog", "list"]);
    assert_eq!(code, 0);
    assert!(out.contains("random_solvable"));
}

#[test]
fn theorem_failure_exits_one() {
    // the monolithic decomposition statement does not hold in dimension one
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "line.lie", "field gf 2\ndim 1\n");
    let (code, out, _) = solvlie(&["verify", "--theorems", "decomposition.monolithic", &path]);
    assert_eq!(code, 1, "{out}");
    assert!(out.starts_with("decomposition.monolithic: fail\n  witness:"), "{out}");
}

#[test]
fn parse_and_usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.lie", "field gf 2\ndim 2\nbracket b1 b1 = b2\n");
    let (code, out, err) = solvlie(&["--json", "info", &bad]);
    assert_eq!(code, 2);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["exit_code"], 2);
    assert!(v["error"].as_str().unwrap().contains("line 3"), "{v}");
    assert!(err.starts_with("error:"));

    assert_eq!(solvlie(&["info", &dir.path().join("missing.lie").to_string_lossy()]).0, 2);
    assert_eq!(solvlie(&["frobnicate"]).0, 2);
    let ok = emit(&dir, "r2", &[]);
    assert_eq!(solvlie(&["complemented", "--route", "by_magic", &ok]).0, 2);
}

#[test]
fn budget_and_unsupported_exit_three() {
    let dir = TempDir::new().unwrap();
    let path = emit(&dir, "ecomp", &["p=3"]);
    let (code, _, err) = solvlie(&["verify", "--budget", "10", &path]);
    assert_eq!(code, 3, "{err}");
    let rat = write(&dir, "rat.lie", "field rat\ndim 2\nbracket b1 b2 = b1\n");
    assert_eq!(solvlie(&["frattini", &rat]).0, 3);
}

#[test]
fn random_catalog_entries_follow_the_seed() {
    let (_, a, _) = solvlie(&["--seed", "7", "catalog", "emit", "random_solvable"]);
    let (_, b, _) = solvlie(&["catalog", "emit", "random_solvable", "--param", "seed=7"]);
    assert_eq!(a, b);
}

#[test]
fn binary_matches_library_entry_point() {
    let dir = TempDir::new().unwrap();
    let path = emit(&dir, "heisenberg", &[]);
    let output = std::process::Command::new(env!("CARGO_BIN_EXE_solvlie"))
        .args(["frattini", Path::new(&path).to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(String::from_utf8(output.stdout).unwrap(), solvlie(&["frattini", &path]).1);
}
