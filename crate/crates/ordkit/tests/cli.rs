//! End-to-end tests of the `ordkit` binary: exit codes, golden values and
//! determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn ordkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordkit"))
        .args(args)
        .env_remove("ORDKIT_MAX_BALL")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn run_ok(args: &[&str]) -> Value {
    let out = ordkit(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    json_of(&out)
}

fn ints(v: &Value) -> Vec<u64> {
    v.as_array().expect("array").iter().map(|x| x.as_u64().expect("integer")).collect()
}

#[test]
fn enumerate_cyclic_five_has_four_orderings() {
    let doc = run_ok(&["enumerate", "--group", "cyclic:5"]);
    assert_eq!(doc["count"], 4);
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["command"], "enumerate");
}

#[test]
fn enumerate_golden_counts() {
    for (group, count) in [("cyclic:2", 1), ("cyclic:3", 2), ("cyclic:6", 2), ("cyclic:7", 6), ("klein4", 0), ("product:cyclic:2,cyclic:4", 0)] {
        assert_eq!(run_ok(&["enumerate", "--group", group])["count"], count, "{group}");
    }
    let listed = run_ok(&["enumerate", "--group", "cyclic:4", "--list"]);
    assert_eq!(listed["arrangements"], serde_json::json!([[0, 1, 2, 3], [0, 3, 2, 1]]));
}

#[test]
fn enumerate_refuses_groups_above_the_cap() {
    assert_eq!(ordkit(&["enumerate", "--group", "cyclic:9"]).status.code(), Some(2));
    assert_eq!(run_ok(&["enumerate", "--group", "cyclic:9", "--cap", "9"])["count"], 6);
}

#[test]
fn promislow_spectrum_golden() {
    let doc = run_ok(&["spectrum", "--group", "promislow", "--cap", "12"]);
    assert_eq!(ints(&doc["obstructed_set"]), [4, 8, 12]);
    assert_eq!(doc["undetermined"], serde_json::json!([]));
    let unobstructed: Vec<u64> = doc["unobstructed"].as_array().unwrap().iter().map(|e| e["n"].as_u64().unwrap()).collect();
    assert_eq!(unobstructed, [2, 3, 5, 6, 7, 9, 10, 11]);
}

#[test]
fn promislow_reproduction_passes() {
    let doc = run_ok(&["promislow", "--cap", "12", "--radius", "3"]);
    let checks = doc["checks"].as_array().unwrap();
    assert!(checks.len() >= 9);
    assert!(checks.iter().all(|c| c["status"] == "pass"), "{checks:?}");
    assert_eq!(ints(&doc["spectrum"]["obstructed_set"]), [4, 8, 12]);
}

#[test]
fn spectrum_of_finite_and_mixed_groups() {
    assert_eq!(ints(&run_ok(&["spectrum", "--group", "cyclic:6", "--cap", "10"])["obstructed_set"]), [2, 3, 4, 6, 8, 9, 10]);
    assert_eq!(ints(&run_ok(&["spectrum", "--group", "klein4", "--cap", "5"])["obstructed_set"]), [2, 3, 4, 5]);
    assert_eq!(ints(&run_ok(&["spectrum", "--group", "product:integers,cyclic:3", "--cap", "9"])["obstructed_set"]), [3, 6, 9]);
    assert!(run_ok(&["spectrum", "--group", "free-abelian:2", "--cap", "6"])["obstructed_set"].as_array().unwrap().is_empty());
    let w = run_ok(&["spectrum", "--group", "witness:2", "--cap", "8"]);
    assert_eq!(ints(&w["obstructed_set"]), [2, 4, 6, 8]);
    assert_eq!(ints(&w["undetermined"]), [3, 5, 7]);
}

#[test]
fn spectrum_of_a_presentation_uses_the_exponent() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z4xz6.txt");
    std::fs::write(&path, "gens: a b\nrel: a a a a\nrel: b b b b b b\nrel: a b A B\n").unwrap();
    let doc = run_ok(&["spectrum", "--group", &format!("presentation:{}", path.display()), "--cap", "13"]);
    assert_eq!(ints(&doc["obstructed_set"]), [12]);
    assert!(ints(&doc["undetermined"]).contains(&5));
}

#[test]
fn validate_exit_codes() {
    let natural = run_ok(&["validate", "--group", "cyclic:6", "--ordering", "natural"]);
    assert_eq!(natural["report"]["status"], "pass");
    assert_eq!(natural["report"]["mode"], "exhaustive");

    let table = data("cyclic4_natural.json");
    assert_eq!(run_ok(&["validate", "--group", "cyclic:4", "--ordering", &format!("table:{table}")])["report"]["status"], "pass");

    let klein = data("klein4_cycle.json");
    let out = ordkit(&["validate", "--group", "klein4", "--ordering", &format!("table:{klein}")]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json_of(&out);
    assert_eq!(doc["report"]["status"], "fail");
    assert!(!doc["report"]["counterexample"].as_array().unwrap().is_empty());
}

#[test]
fn validate_left_and_bi_invariance() {
    assert_eq!(run_ok(&["validate", "--group", "free-abelian:2", "--ordering", "left"])["report"]["status"], "pass");
    let out = ordkit(&["validate", "--group", "product:promislow,cyclic:2", "--ordering", "lex", "--radius", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let out = ordkit(&["validate", "--group", "product:promislow,cyclic:2", "--ordering", "lex", "--radius", "2", "--bi"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn errors_exit_two() {
    for args in [
        &["spectrum", "--group", "bogus"][..],
        &["validate", "--group", "cyclic:0", "--ordering", "natural"],
        &["validate", "--group", "cyclic:4", "--ordering", "natural:2"],
        &["validate", "--group", "klein4", "--ordering", "table:/nonexistent/table.json"],
        &["lift-check", "--group", "integers", "--ordering", "left"],
        &["spectrum", "--group", "cyclic:4", "--cap", "1"],
        &["no-such-command"],
    ] {
        let out = ordkit(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?} explains itself on stderr");
    }
}

#[test]
fn ball_limit_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_ordkit"))
        .args(["validate", "--group", "integers", "--ordering", "left", "--radius", "4"])
        .env("ORDKIT_MAX_BALL", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit"));
    let out = Command::new(env!("CARGO_BIN_EXE_ordkit"))
        .args(["enumerate", "--group", "cyclic:3"])
        .env("ORDKIT_MAX_BALL", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lift_check_passes_for_natural_orderings() {
    let doc = run_ok(&["lift-check", "--group", "cyclic:5", "--ordering", "natural:2", "--bound", "8"]);
    let reports = doc["reports"].as_array().unwrap();
    assert!(reports.iter().all(|r| r["status"] == "pass"));
    assert!(reports.iter().any(|r| r["check"] == "cyclic-lift-isomorphism"));
}

#[test]
fn lift_check_stops_at_an_invalid_ordering() {
    let klein = data("klein4_cycle.json");
    let out = ordkit(&["lift-check", "--group", "klein4", "--ordering", &format!("table:{klein}")]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["reports"].as_array().unwrap().len(), 1);
}

#[test]
fn detect_secret_verdicts() {
    let yes = run_ok(&["detect-secret", "--group", "free-abelian:2", "--ordering", "secret", "--radius", "2"]);
    assert_eq!(yes["verdict"], "secret-witness-on-carrier");
    assert_eq!(yes["solution_check"]["status"], "pass");
    let no = run_ok(&["detect-secret", "--group", "cyclic:4", "--ordering", "natural"]);
    assert_eq!(no["verdict"], "not-secret-on-carrier");
    let lex = run_ok(&["detect-secret", "--group", "product:integers,cyclic:3", "--ordering", "lex"]);
    assert_eq!(lex["verdict"], "not-secret-on-carrier");
}

#[test]
fn witness_claims_and_sabotage() {
    for p in ["2", "3"] {
        let doc = run_ok(&["witness", "--p", p, "--budget", "100"]);
        assert!(doc["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"), "p={p}");
        let out = ordkit(&["witness", "--p", p, "--budget", "100", "--sabotaged"]);
        assert_eq!(out.status.code(), Some(1), "sabotaged p={p}");
    }
    assert_eq!(ordkit(&["witness", "--p", "4"]).status.code(), Some(2));
}

#[test]
fn certificates_round_trip_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    for n in ["3", "6", "10"] {
        let path = dir.path().join(format!("promislow-{n}.json"));
        let out = ordkit(&["promislow", "--certificate", n, "--output", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty(), "--output keeps stdout empty");
        let doc = run_ok(&["verify-cert", path.to_str().unwrap()]);
        assert_eq!(doc["report"]["status"], "pass", "n={n}");
        assert_eq!(doc["evidence"], "poly-z");
    }
    assert_eq!(ordkit(&["promislow", "--certificate", "4"]).status.code(), Some(2));

    assert_eq!(run_ok(&["verify-cert", &data("integers_cert.json")])["report"]["status"], "pass");
    let bad = ordkit(&["verify-cert", &data("integers_bad_cert.json")]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn output_is_deterministic_in_both_formats() {
    for format in ["json", "table"] {
        let args = ["spectrum", "--group", "product:integers,cyclic:2", "--cap", "8", "--format", format];
        let (a, b) = (ordkit(&args), ordkit(&args));
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
    let table = String::from_utf8(ordkit(&["enumerate", "--group", "cyclic:5", "--format", "table"]).stdout).unwrap();
    assert!(table.lines().any(|l| l == "count\t4"), "{table}");
}
