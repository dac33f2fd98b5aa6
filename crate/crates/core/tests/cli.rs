use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn casimir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_casimir")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const N41: &str = "# four-dimensional filiform\nalgebra n41\ndim 4\nbasis e1 e2 e3 e4\nbracket e2 e4 = e1\nbracket e3 e4 = e2\n";

#[test]
fn info_reports_invariant_count() {
    let out = casimir(&["info", "--algebra", "filiform:5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("dimension   5"), "{text}");
    assert!(text.contains("jacobi      ok"));
    assert!(text.contains("invariants  3"));
    let json: serde_json::Value = serde_json::from_slice(&casimir(&["info", "-a", "schrodinger:2", "--json"]).stdout).unwrap();
    assert_eq!(json["dim"], 9);
    assert_eq!(json["invariants"], 3);
}

#[test]
fn verify_answers_yes_and_no() {
    let dir = TempDir::new().unwrap();
    let q1 = write(&dir, "q1.expr", "e2^2 - 2*e1*e3\n");
    let out = casimir(&["verify", "--algebra", "filiform:4", "--expr", s(&q1)]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "Casimir: yes");

    let bad = write(&dir, "bad.expr", "e2^2");
    let out = casimir(&["verify", "--algebra", "filiform:4", "--expr", s(&bad)]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("Casimir: no"), "{text}");
    assert!(text.contains("[K, e4] = 2*e1*e2"), "{text}");
}

#[test]
fn custom_algebra_file() {
    let dir = TempDir::new().unwrap();
    let alg = write(&dir, "n41.alg", N41);
    let out = casimir(&["info", "--algebra", s(&alg)]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("invariants  2"));
    let out = casimir(&["search", "--algebra", s(&alg), "--degree", "2", "--all-weights"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("independent invariants: 2"), "{text}");
    assert!(text.contains("2*e1*e3 - e2^2"), "{text}");
}

#[test]
fn search_json_is_deterministic_and_reverifiable() {
    let args = ["search", "-a", "schrodinger:1", "-m", "3", "--json", "--seed", "7"];
    let first = casimir(&args);
    let second = casimir(&args);
    assert!(first.status.success(), "{}", stderr(&first));
    assert_eq!(first.stdout, second.stdout);

    let json: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    let dir = TempDir::new().unwrap();
    let mut seen = 0;
    for class in json["classes"].as_array().unwrap() {
        for (i, expr) in class["independent"].as_array().unwrap().iter().enumerate() {
            let path = write(&dir, &format!("k{seen}_{i}.expr"), expr.as_str().unwrap());
            let out = casimir(&["verify", "-a", "schrodinger:1", "--expr", s(&path)]);
            assert_eq!(stdout(&out).trim(), "Casimir: yes", "{expr}");
            seen += 1;
        }
    }
    assert_eq!(seen, 2);
}

#[test]
fn search_with_realisation_file() {
    let dir = TempDir::new().unwrap();
    let real = write(
        &dir,
        "sl2.real",
        "realization line\nvars x\nmap h = -2*x*d/dx\nmap e = d/dx\nmap f = -x^2*d/dx\n",
    );
    let out = casimir(&["search", "-a", "sl2", "-r", s(&real), "-m", "2"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("independent invariants: 1"));
}

#[test]
fn usage_errors_exit_two() {
    let out = casimir(&["search", "-a", "sl2", "-m", "2", "--weight", "(0)", "--all-weights"]);
    assert_eq!(out.status.code(), Some(2));
    let out = casimir(&["search", "-a", "sl2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = casimir(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = casimir(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn validation_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let out = casimir(&["info", "-a", "filiform:2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("error:"));

    let broken = write(&dir, "broken.alg", "algebra x\ndim 2\nbasis a b\nbracket a c = b\n");
    let out = casimir(&["info", "-a", s(&broken)]);
    assert_eq!(out.status.code(), Some(1));
    let msg = stderr(&out);
    assert!(msg.contains("broken.alg:4:"), "{msg}");

    let second_order = write(&dir, "d2.real", "realization bad\nvars x\nmap h = d/dx*d/dx\nmap e = d/dx\nmap f = x\n");
    let out = casimir(&["search", "-a", "sl2", "-r", s(&second_order), "-m", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("d2.real"));

    let wrong = write(&dir, "wrong.real", "realization wrong\nvars x\nmap h = x*d/dx\nmap e = d/dx\nmap f = x^2*d/dx\n");
    let out = casimir(&["search", "-a", "sl2", "-r", s(&wrong), "-m", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("not a homomorphism"), "{}", stderr(&out));

    let missing = write(&dir, "missing.expr", "e2*e9");
    let out = casimir(&["verify", "-a", "filiform:4", "--expr", s(&missing)]);
    assert_eq!(out.status.code(), Some(1));

    let out = casimir(&["search", "-a", "filiform:4", "-m", "2", "--weight", "(1,2,3)"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn grade_json_lists_generator_weights() {
    let out = casimir(&["grade", "-a", "filiform:4", "--json"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let weights = json["weights"].as_array().unwrap();
    assert_eq!(weights.len(), 4);
    assert_eq!(weights[0]["generator"], "e1");
    assert_eq!(json["rank"], 2);
}

#[test]
fn weight_flag_restricts_classes() {
    let out = casimir(&["search", "-a", "filiform:4", "-m", "2", "-w", "(0,2)", "--json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let classes = json["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 1);
    assert_eq!(classes[0]["genuine"][0], "2*e1*e3 - e2^2");
}
