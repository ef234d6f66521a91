use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn malcev(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_malcev")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path
}

fn arg(path: &Path) -> &str {
    path.to_str().unwrap()
}

const ZETA3: &str = r#"{"p":3,"field":{"degree":2,"modulus":[1,0]},"precision":{"num":3,"den":2},"terms":[{"exp":{"num":0,"den":1},"coeff":[1,0]},{"exp":{"num":1,"den":2},"coeff":[0,1]},{"exp":{"num":1,"den":1},"coeff":[1,0]}]}"#;

#[test]
fn square_roots_of_three() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "x^2-3.json", r#"{"p":3,"coeffs":[-3,0,1]}"#);
    let out = malcev(&["roots", "--prime", "3", "--precision", "5", arg(&file)]);
    assert_eq!(out.status.code(), Some(0));
    let roots = stdout_json(&out);
    let roots = roots.as_array().unwrap();
    assert_eq!(roots.len(), 2);
    let mut leading: Vec<_> = roots.iter().map(|r| r["terms"][0]["coeff"][0].as_u64().unwrap()).collect();
    leading.sort();
    assert_eq!(leading, [1, 2]);
    for r in roots {
        assert_eq!(r["terms"][0]["exp"], serde_json::json!({"num": 1, "den": 2}));
    }
}

#[test]
fn first_root_of_a_linear_polynomial() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "t-2.json", r#"{"p":3,"coeffs":[-2,1]}"#);
    let out = malcev(&["roots", "--first", arg(&file)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out).as_array().unwrap().len(), 1);
}

#[test]
fn capped_iteration_exits_2() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "phi9.json", r#"{"p":3,"coeffs":[1,0,0,1,0,0,1],"default_precision":{"num":4,"den":1}}"#);
    let out = malcev(&["roots", "--precision", "1", "--max-steps", "3", arg(&file)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_input_is_a_parse_error() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "bad.json", r#"{"p":3,"coeffs":[1,"#);
    let out = malcev(&["roots", arg(&file)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["error"], "parse");

    let file = write(&dir, "ok.json", r#"{"p":3,"coeffs":[-2,1]}"#);
    let out = malcev(&["roots", "--prime", "5", arg(&file)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["error"], "parse");

    let out = malcev(&["roots", "--precision", "0", arg(&file)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["error"], "parse");
}

#[test]
fn missing_file_is_an_io_error() {
    let out = malcev(&["invariants", "/nonexistent/series.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["error"], "io");
}

#[test]
fn closed_form_comparison_agrees() {
    let out = malcev(&["zeta", "--prime", "3", "--n", "1", "--precision", "3/2", "--compare"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["match"], true);
    for choice in report["choices"].as_array().unwrap() {
        assert_eq!(choice["agreeing"].as_array().unwrap().len(), 3);
        assert!(choice["disagreeing"].as_array().unwrap().is_empty());
    }
}

#[test]
fn closed_form_beyond_its_range_is_a_precision_error() {
    let out = malcev(&["zeta", "--prime", "3", "--n", "1", "--precision", "2", "--compare"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["error"], "precision");
}

#[test]
fn coprime_root_is_a_single_term() {
    let out = malcev(&["zeta", "--prime", "3", "--r", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let z = stdout_json(&out);
    assert_eq!(z["terms"].as_array().unwrap().len(), 1);
    assert_eq!(z["field"]["degree"], 2);
}

#[test]
fn enumeration_reports_each_branch() {
    let out = malcev(&["zeta", "--prime", "3", "--n", "2", "--enumerate", "--precision", "1", "--max-steps", "6"]);
    let roots = stdout_json(&out);
    let roots = roots.as_array().unwrap();
    let total: u64 = roots.iter().map(|r| r["classification"]["multiplicity"].as_u64().unwrap()).sum();
    assert_eq!(total, 6);
    assert!(roots.iter().all(|r| r["classification"]["first"].is_array()));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invariants_of_fixture_series() {
    let dir = TempDir::new().unwrap();
    let zeta = write(&dir, "zeta3.json", ZETA3);
    let v = stdout_json(&malcev(&["invariants", arg(&zeta)]));
    assert_eq!(v["report"]["tame_index"], 2);
    assert_eq!(v["report"]["inertia_index"], 2);
    assert_eq!(v["verdict"]["tame"], true);

    let cube = write(
        &dir,
        "cube.json",
        r#"{"p":3,"field":{"degree":1,"modulus":[0]},"precision":{"num":2,"den":1},"terms":[{"exp":{"num":1,"den":3},"coeff":[1]}]}"#,
    );
    let v = stdout_json(&malcev(&["invariants", arg(&cube)]));
    assert_eq!(v["report"]["tame_index"], 1);
    assert_eq!(v["verdict"]["tame"], false);

    let zero = write(&dir, "zero.json", r#"{"p":5,"field":{"degree":1,"modulus":[0]},"precision":{"num":1,"den":1},"terms":[]}"#);
    let v = stdout_json(&malcev(&["invariants", "--known-f", "1", arg(&zero)]));
    assert_eq!(v["report"]["tame_index"], 1);
    assert_eq!(v["report"]["inertia_index"], 1);
}

#[test]
fn series_files_round_trip_byte_exact() {
    let dir = TempDir::new().unwrap();
    let zeta = write(&dir, "zeta3.json", ZETA3);
    let once = dir.path().join("once.json");
    let twice = dir.path().join("twice.json");
    let out = malcev(&["arith", "frobenius", "--power", "2", arg(&zeta), "--output", arg(&once)]);
    assert_eq!(out.status.code(), Some(0));
    malcev(&["arith", "frobenius", "--power", "2", arg(&once), "--output", arg(&twice)]);
    assert_eq!(fs::read(&once).unwrap(), fs::read(&twice).unwrap());
    let z = malcev(&["zeta", "--prime", "3", "--n", "1", "--precision", "3/2"]);
    assert_eq!(String::from_utf8(z.stdout).unwrap(), fs::read_to_string(&once).unwrap());
    assert_eq!(fs::read_to_string(&once).unwrap().trim_end(), ZETA3.replace(' ', ""));
}

#[test]
fn arithmetic_on_series_files() {
    let dir = TempDir::new().unwrap();
    let zeta = write(&dir, "zeta3.json", ZETA3);
    let conj = dir.path().join("conj.json");
    malcev(&["arith", "frobenius", arg(&zeta), "--output", arg(&conj)]);
    let prod = stdout_json(&malcev(&["arith", "mul", arg(&zeta), arg(&conj)]));
    assert_eq!(prod["terms"].as_array().unwrap().len(), 1);
    assert_eq!(prod["terms"][0]["exp"], serde_json::json!({"num": 0, "den": 1}));

    let inv = stdout_json(&malcev(&["arith", "inv", arg(&zeta)]));
    assert_eq!(inv, stdout_json(&malcev(&["arith", "frobenius", arg(&zeta)])));

    let sum = stdout_json(&malcev(&["arith", "add", arg(&zeta), arg(&conj)]));
    assert_eq!(sum["terms"][0]["coeff"], serde_json::json!([2, 0]));

    let out = malcev(&["arith", "character", arg(&zeta), "--assign", "1/2=2,0"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(stdout_json(&out)["terms"][1]["coeff"], serde_json::json!([0, 2]));
}

#[test]
fn verify_is_reproducible_under_a_seed() {
    let args = ["verify", "--quick", "--filter", "gr.", "--seed", "17"];
    let first = malcev(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, malcev(&args).stdout);
    let report = stdout_json(&first);
    assert_eq!(report["samples"], 100);
    assert_eq!(report["seed"], 17);
    assert!(report["properties"].as_array().unwrap().iter().all(|p| p["passed"] == true));
}

#[test]
fn text_format_lists_properties() {
    let out = malcev(&["verify", "--quick", "--filter", "series.valuation", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("pass series.valuation_laws"), "{text}");
}
