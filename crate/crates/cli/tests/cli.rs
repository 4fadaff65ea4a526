use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn gentle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gentle")).args(args).output().expect("binary runs")
}

fn schema() -> jsonschema::Validator {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "docs", "report.schema.json"].iter().collect();
    let s: Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
    jsonschema::validator_for(&s).expect("schema compiles")
}

/// Runs with `--json`, checks the exit code and validates against the schema.
fn report(args: &[&str], code: i32) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = gentle(&all);
    assert_eq!(out.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    let errors: Vec<String> = schema().iter_errors(&v).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{args:?}: {errors:?}");
    v
}

#[test]
fn analyze_d6() {
    let v = report(&["analyze", &fixture("d6.bq")], 0);
    assert_eq!(v["dimensions"]["gorenstein"]["finite"], 2);
    assert_eq!(v["dimensions"]["global"]["infinite"]["period"], 4);
    assert_eq!(v["classification"]["is_string"], true);
    assert_eq!(v["classification"]["is_gentle"], false);
    assert_eq!(v["options"]["char"], 10007);
    assert_eq!(v["options"]["trials"], 8);
    assert_eq!(v["options"]["cutoff"], 34);
}

#[test]
fn analyze_lin3_over_rationals() {
    let v = report(&["analyze", &fixture("lin3.bq"), "--char", "0"], 0);
    assert_eq!(v["options"]["field"], "Q");
    assert_eq!(v["dimensions"]["global"]["finite"], 1);
    assert!(v["dimensions"]["gorenstein"]["finite"].as_u64().unwrap() <= 1);
}

#[test]
fn cm_sets() {
    let d6 = report(&["cm", &fixture("d6.bq"), "--m", "2"], 0);
    assert_eq!(d6["cm"]["cm_modules"].as_array().unwrap().len(), 4);
    assert_eq!(d6["cm"]["fixed_points_equal_cm"], true);
    let lin3 = report(&["cm", &fixture("lin3.bq")], 0);
    assert_eq!(lin3["cm"]["cm_modules"], serde_json::json!([]));
    let a3c = report(&["cm", "a3c"], 0);
    assert_eq!(a3c["cm"]["fixed_points"], serde_json::json!(["@1", "@2", "@3"]));
}

#[test]
fn blocks_and_jacobian() {
    let v = report(&["blocks", &fixture("ej8_corrected.bq"), "--potential", "--char", "0", "--char", "3"], 1);
    assert_eq!(v["blocks"]["counts"], serde_json::json!({"I": 2, "II": 3, "Loop": 1}));
    assert_eq!(v["jacobian"][0]["holds"], true);
    assert_eq!(v["jacobian"][1]["holds"], false);
    assert!(v["jacobian"][1]["witnesses"][0].as_str().unwrap().contains("vanishes in characteristic 3"));
    assert!(v["jacobian"][1]["field_error"].is_string());
    let d6 = report(&["blocks", &fixture("d6.bq")], 1);
    assert_eq!(d6["blocks"]["witness"]["rule"], "gentle");
    let j = report(&["jacobian", "loop", "--char", "10007"], 0);
    assert_eq!(j["potential"]["source"], "blocks");
}

#[test]
fn angulations() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pentagon.bq");
    let v = report(&["from-angulation", &fixture("pentagon.ang"), "--emit-bq", out.to_str().unwrap()], 0);
    assert_eq!(v["algebra"]["vertices"], 2);
    assert_eq!(v["algebra"]["arrows"], 1);
    assert_eq!(v["algebra"]["relations"], 0);
    let text = std::fs::read_to_string(&out).unwrap();
    let bq = gentle_core::parse_bound_quiver(&text).unwrap().bound_quiver;
    assert_eq!(bq.arrow_count(), 1);
    let hex = report(&["from-angulation", &fixture("hexagon.ang")], 0);
    assert_eq!(hex["algebra"]["relations"], 3);

    let bad = dir.path().join("bad.ang");
    std::fs::write(&bad, "disk n=3 m=1\ndiag 0 2\n").unwrap();
    let o = gentle(&["from-angulation", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("sides"));
}

#[test]
fn suites() {
    let v = report(&["suite", "--suite", "blocks", "--count", "200", "--seed", "7"], 0);
    assert_eq!((v["suite"]["count"].as_u64(), v["suite"]["passed"].as_u64()), (Some(200), Some(200)));
    let v = report(&["suite", "--suite", "disk", "--n", "4", "--m", "2", "--count", "50"], 0);
    assert_eq!(v["suite"]["passed"], 50);
    let v = report(&["suite", "--suite", "parity", "--count", "0"], 0);
    assert_eq!(v["suite"]["count"], 0);
}

#[test]
fn identical_runs_give_identical_bytes() {
    let args = ["suite", "--suite", "annulus", "--p", "3", "--q", "2", "--m", "3", "--count", "10", "--seed", "4", "--json"];
    let a = gentle(&args);
    let b = gentle(&args);
    let seq: Vec<&str> = args.iter().copied().chain(["--sequential"]).collect();
    let c = gentle(&seq);
    assert_eq!(a.stdout, b.stdout);
    let strip = |o: &Output| String::from_utf8_lossy(&o.stdout).replace("\"sequential\"", "\"parallel\"");
    assert_eq!(strip(&a), strip(&c));
    let d = gentle(&["analyze", &fixture("d6.bq"), "--json"]);
    let e = gentle(&["analyze", &fixture("d6.bq"), "--json"]);
    assert_eq!(d.stdout, e.stdout);
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(gentle(&["analyze", "/nonexistent/x.bq"]).status.code(), Some(2));
    assert_eq!(gentle(&["analyze", &fixture("lin3.bq"), "--char", "4"]).status.code(), Some(2));
    assert_eq!(gentle(&["analyze", &fixture("lin3.bq"), "--m", "0"]).status.code(), Some(2));
    assert_eq!(gentle(&["cm", &fixture("ej8.bq")]).status.code(), Some(2));
    assert_eq!(gentle(&["bogus"]).status.code(), Some(2));
}

#[test]
fn prose_output() {
    let o = gentle(&["analyze", &fixture("d6.bq")]);
    let s = String::from_utf8_lossy(&o.stdout);
    assert!(s.contains("Gorenstein dimension: 2"));
    assert!(s.contains("trials 8"));
}
