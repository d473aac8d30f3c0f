use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn adelic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adelic")).args(args).output().expect("binary runs")
}

fn strip_elapsed(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("elapsed_ms");
            m.values_mut().for_each(strip_elapsed);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_elapsed),
        _ => {}
    }
}

fn json(bytes: &[u8]) -> Value {
    let mut v: Value = serde_json::from_slice(bytes).expect("valid json");
    strip_elapsed(&mut v);
    v
}

fn golden(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    json(&std::fs::read(path).unwrap())
}

#[test]
fn intersect_matches_golden() {
    let out = adelic(&["intersect", "--surface", "p2", "L0", "L1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out.stdout), golden("intersect_p2_l0_l1.json"));
}

#[test]
fn verify_matches_golden() {
    let out = adelic(&["verify", "--surface", "p1xp1", "--range", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out.stdout), golden("verify_p1xp1_r1.json"));
}

#[test]
fn reciprocity_matches_golden() {
    let out = adelic(&["reciprocity", "--samples", "2", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out.stdout), golden("reciprocity_p2_seed7.json"));
}

#[test]
fn ruling_self_intersection_is_zero() {
    let out = adelic(&["intersect", "--surface", "p1xp1", "F", "F", "--method", "all"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out.stdout);
    for key in ["pairing", "chains", "chains_flipped", "oracle"] {
        assert_eq!(v[key], 0, "{key}");
    }
}

#[test]
fn single_method_leaves_others_empty() {
    let out = adelic(&["intersect", "0", "L0", "--method", "oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out.stdout);
    assert_eq!(v["oracle"], 0);
    assert!(v["pairing"].is_null());
}

#[test]
fn verify_counts_classes() {
    let dir = tempfile::tempdir().unwrap();
    for (surface, range, n) in [("p2", "0", 1), ("p2", "4", 9), ("p1xp1", "3", 49)] {
        let path = dir.path().join(format!("{surface}-{range}.json"));
        let out = adelic(&["verify", "--surface", surface, "--range", range, "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), format!("{n}/{n} divisor classes pass"));
        let v = json(&std::fs::read(&path).unwrap());
        assert_eq!(v["rows"].as_array().unwrap().len(), n);
        assert_eq!(v["schema"], 1);
    }
}

#[test]
fn reports_are_stable_for_a_fixed_seed() {
    let a = adelic(&["reciprocity", "--samples", "5", "--seed", "3", "--surface", "p1xp1"]);
    let b = adelic(&["reciprocity", "--samples", "5", "--seed", "3", "--surface", "p1xp1"]);
    assert_eq!(json(&a.stdout), json(&b.stdout));
    assert_eq!(json(&a.stdout)["passed"], 5);
}

#[test]
fn markdown_renders_a_table() {
    let out = adelic(&["verify", "--range", "1", "--format", "md"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("| `1L0` | 1 |"), "{text}");
    assert!(text.ends_with("3/3 pass\n"));
}

#[test]
fn rationals_and_window_flags() {
    let out = adelic(&["verify", "--field", "q", "--window", "24", "--range", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out.stdout)["field"], "q");
}

#[test]
fn parse_errors_exit_with_two() {
    let out = adelic(&["intersect", "2L0 +", "L1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("position"), "{err}");
    assert_eq!(adelic(&["intersect", "L0", "F0"]).status.code(), Some(2));
    assert_eq!(adelic(&["verify", "--field", "fp:100"]).status.code(), Some(2));
    assert_eq!(adelic(&["verify", "--window", "0"]).status.code(), Some(2));
    assert_eq!(adelic(&["reciprocity", "--samples", "0"]).status.code(), Some(2));
}

#[test]
fn non_monomial_divisors_need_the_oracle() {
    let out = adelic(&["intersect", "line(1,1,100)", "L1", "--method", "pairing"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("torus-invariant"));
    let out = adelic(&["intersect", "2line(1,1,100)", "X=3", "--method", "oracle", "--surface", "p2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = adelic(&["intersect", "2X=3 + G0", "Y=5", "--method", "oracle", "--surface", "p1xp1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out.stdout)["oracle"], 2);
}
