use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use braidshuffle::Element;
use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_braidshuffle"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let v: Value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// m = 0, q_11 = q, every other coefficient 1.
const ZERO_SPEC: &str = r#"{"dim":2,"braiding":{"type":"diagonal","exponents":[[1,0],[0,0]]}}"#;

/// Constant product m(e_i e_j) = e1 over q_ij = q: not a Yang-Baxter algebra.
const CONSTANT_SPEC: &str = r#"{"dim":2,"braiding":{"type":"diagonal","exponents":[[1,1],[1,1]]},
  "product":{"constants":[[["1","0"],["1","0"]],[["1","0"],["1","0"]]]}}"#;

/// A dense braiding that violates the braid relation.
const BROKEN_SPEC: &str = r#"{"dim":2,"braiding":{"type":"dense","entries":[
  ["1","0","0","0"],["0","0","q^-1","0"],["0","q^-1","1-q^-1","0"],["0","0","0","1"]]}}"#;

fn emit_exterior(dir: &TempDir) -> PathBuf {
    let p = dir.path().join("ext.json");
    assert_eq!(run(&["exterior", "emit-spec", "--n", "2", "-o", s(&p)]).status.code(), Some(0));
    p
}

#[test]
fn quasi_product_on_a_letter_square() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "z.json", ZERO_SPEC);
    let out = run(&["prod", "--op", "quasi", s(&spec), "e1", "e1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "(1+q)*e1.e1");

    let out = run(&["--q", "2", "prod", "--op", "quasi", s(&spec), "e1", "e1"]);
    assert_eq!(stdout(&out).trim(), "3*e1.e1");

    let out = run(&["prod", "--op", "concat", s(&spec), "e1", "e2 - 1"]);
    assert_eq!(stdout(&out).trim(), "-e1 + e1.e2");
}

#[test]
fn verify_passes_on_the_exterior_algebra() {
    let dir = TempDir::new().unwrap();
    let spec = emit_exterior(&dir);
    let out = run(&["verify", s(&spec), "--max-degree", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 8);
    assert!(text.lines().all(|l| l.starts_with("PASS")));

    let (code, v) = run_json(&["verify", s(&spec)]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "verify");
    assert_eq!(v["counterexamples"].as_array().unwrap().len(), 0);
    assert!(v["timings"].is_object());
    assert_eq!(v["inputs"]["max_degree"], 3);
}

#[test]
fn failing_checks_exit_one_with_counterexamples() {
    let dir = TempDir::new().unwrap();
    let constant = write(&dir, "c.json", CONSTANT_SPEC);
    let broken = write(&dir, "b.json", BROKEN_SPEC);
    let zero = write(&dir, "z.json", ZERO_SPEC);
    let cases: Vec<Vec<&str>> = vec![
        vec!["check-yb", s(&constant)],
        vec!["verify", s(&constant), "--max-degree", "3"],
        vec!["check-yb", s(&broken)],
        vec!["verify", s(&broken)],
        vec!["twist", s(&zero), "--max-degree", "2"],
        vec!["exterior", "--n", "2", "--convention", "gt"],
        vec!["exterior", "--n", "2", "--overlap", "printed", "--max-degree", "2"],
    ];
    for args in cases {
        let (code, v) = run_json(&args);
        assert_eq!(code, 1, "{args:?}");
        let cx = v["counterexamples"].as_array().unwrap();
        assert!(!cx.is_empty(), "{args:?}");
        for c in cx {
            for key in ["identity", "input", "lhs", "rhs"] {
                assert!(c[key].is_string(), "{args:?}: {c}");
            }
        }
    }
}

#[test]
fn passing_runs_have_no_counterexamples() {
    let dir = TempDir::new().unwrap();
    let ext = emit_exterior(&dir);
    let zero = write(&dir, "z.json", ZERO_SPEC);
    let cases: Vec<Vec<&str>> = vec![
        vec!["check-yb", s(&ext)],
        vec!["twist", s(&ext), "--max-degree", "3"],
        vec!["exterior", "--n", "3"],
        vec!["basis", s(&zero), "--degree", "3"],
        vec!["express", s(&zero), "e1.e2 - q*e2.e1 + 2"],
        vec!["prod", "--op", "shuffle", s(&zero), "e1.e2", "e2"],
    ];
    for args in cases {
        let (code, v) = run_json(&args);
        assert_eq!(code, 0, "{args:?}: {v}");
        assert_eq!(v["counterexamples"].as_array().unwrap().len(), 0);
    }
}

#[test]
fn basis_slice_json() {
    let dir = TempDir::new().unwrap();
    let zero = write(&dir, "z.json", ZERO_SPEC);
    let (code, v) = run_json(&["basis", s(&zero), "--degree", "2"]);
    assert_eq!(code, 0);
    let diag: Vec<&str> = v["result"]["diagonal"].as_array().unwrap().iter().map(|d| d.as_str().unwrap()).collect();
    assert_eq!(diag, ["1+q", "1", "1", "2"]);
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0]["word"], "e1.e1");
    assert_eq!(rows[0]["predicted"], "1+q");
    assert_eq!(v["result"]["predictions"], v["result"]["diagonal"]);
    let matrix = v["result"]["matrix"].as_array().unwrap();
    assert_eq!(matrix.len(), 4);
    assert_eq!(matrix[0].as_array().unwrap().len(), 7);

    let (_, v) = run_json(&["--q", "2", "basis", s(&zero), "--degree", "2"]);
    assert_eq!(v["result"]["diagonal"][0], "3");
}

#[test]
fn json_elements_reparse() {
    let dir = TempDir::new().unwrap();
    let ext = emit_exterior(&dir);
    for (x, y) in [("e1", "e2"), ("e1.e2 - q^-1*e3", "(1+q)*e2"), ("2", "e1.e1.e2")] {
        let (code, v) = run_json(&["prod", s(&ext), x, y]);
        assert_eq!(code, 0);
        let text = v["result"]["element"].as_str().unwrap();
        let parsed = Element::parse(text, 3).unwrap();
        assert_eq!(parsed.to_string(), text);
    }
}

#[test]
fn emitted_spec_round_trips() {
    let (code, v) = run_json(&["exterior", "emit-spec", "--n", "2", "--unital"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dim"], 4);
    assert_eq!(v["result"]["braiding"]["base"], "-q");
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "u.json", &v["result"].to_string());
    assert_eq!(run(&["check-yb", s(&p)]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let zero = write(&dir, "z.json", ZERO_SPEC);
    let bad = write(&dir, "bad.json", "{\"dim\": 2");
    let missing = dir.path().join("nope.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["prod", s(&zero), "e3", "e1"],
        vec!["prod", s(&zero), "e1 +", "e1"],
        vec!["verify", s(&bad)],
        vec!["verify", s(&missing)],
        vec!["verify", s(&zero), "--max-degree", "7"],
        vec!["verify", s(&zero), "--max-degree", "0"],
        vec!["--q", "q", "prod", s(&zero), "e1", "e1"],
        vec!["bogus"],
    ];
    for args in cases {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let dense = write(
        &dir,
        "dense.json",
        r#"{"dim":2,"braiding":{"type":"dense","entries":[["1","0","0","0"],["0","0","q^-1","0"],["0","q^-1","1-q^-2","0"],["0","0","0","1"]]}}"#,
    );
    // a non-diagonal braiding has no Lyndon basis here
    assert_eq!(run(&["basis", s(&dense), "--degree", "2"]).status.code(), Some(2));
    assert_eq!(run(&["verify", s(&zero), "--max-degree", "7", "--unsafe-degree"]).status.code(), Some(0));
}
