use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unichaos")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

#[test]
fn analyze_full_shift_defaults() {
    let path = fixture("full_shift.json");
    let out = run(&["analyze", path.to_str().unwrap(), "--json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = stdout_json(&out);
    assert_eq!(v["verdict"]["devaney_chaotic"], true);
    assert_eq!(v["verdict"]["sensitive"]["report"]["pass"], true);
    assert_eq!(v["parameters"], serde_json::json!({"scale": 4, "ball": 8, "period_bound": 12}));
    assert_eq!(v["input"]["subshift"]["window"], serde_json::json!([0]));
    for key in ["perfect", "transitive", "mixing", "periodic_dense", "sensitive", "expansive"] {
        assert!(v["verdict"].get(key).is_some(), "{key}");
    }
}

#[test]
fn analyze_golden_mean_expecting_chaos() {
    let path = fixture("golden_mean.json");
    let out = run(&["analyze", path.to_str().unwrap(), "--expect-chaotic"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("devaney chaotic yes"));
}

#[test]
fn analyze_singleton_expecting_chaos_fails() {
    let path = fixture("singleton.json");
    let out = run(&["analyze", path.to_str().unwrap(), "--expect-chaotic"]);
    assert_eq!(code(&out), 2);
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
}

#[test]
fn analyze_rejects_both_pattern_keys() {
    let path = fixture("both_keys.json");
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let err = stderr(&out);
    assert!(err.contains("\"allowed\"") && err.contains("\"forbidden\""), "{err}");
}

#[test]
fn analyze_names_unknown_keys() {
    let path = fixture("unknown_key.json");
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("colour"));
}

#[test]
fn analyze_rejects_zero_scale_and_missing_files() {
    let path = fixture("full_shift.json");
    assert_eq!(code(&run(&["analyze", path.to_str().unwrap(), "--scale", "0"])), 1);
    assert_eq!(code(&run(&["analyze", "no/such/file.json"])), 1);
}

#[test]
fn analyze_flags_override_file_parameters() {
    let path = fixture("golden_mean.json");
    let out = run(&["analyze", path.to_str().unwrap(), "--json", "--scale", "2", "--ball", "6"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["parameters"], serde_json::json!({"scale": 2, "ball": 6, "period_bound": 12}));
}

#[test]
fn analyze_is_deterministic() {
    for name in ["full_shift.json", "golden_mean.json", "free2_full_shift.json", "rotation.json"] {
        let path = fixture(name);
        let a = without_timing(stdout_json(&run(&["analyze", path.to_str().unwrap(), "--json"])));
        let b = without_timing(stdout_json(&run(&["analyze", path.to_str().unwrap(), "--json"])));
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap(), "{name}");
    }
}

#[test]
fn certify_main_and_revalidate() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let path = fixture("full_shift.json");
    let out = run(&["certify", path.to_str().unwrap(), "--route", "main", "--out", cert.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(doc["certificate"]["u"], serde_json::json!({"prodiscrete": {"support": [0]}}));
    assert_eq!(doc["sensitivity"]["pass"], true);

    let out = run(&["certify", cert.to_str().unwrap(), "--revalidate"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(stdout_json(&out)["pass"], true);
}

#[test]
fn certify_mixing_and_revalidate() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let path = fixture("golden_mean.json");
    let out = run(&[
        "certify",
        path.to_str().unwrap(),
        "--route",
        "mixing",
        "--x1",
        "0",
        "--x2",
        r#"{"word": "01"}"#,
        "--out",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = run(&["certify", cert.to_str().unwrap(), "--revalidate"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn tampered_certificate_fails_revalidation() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let path = fixture("full_shift.json");
    run(&["certify", path.to_str().unwrap(), "--route", "main", "--out", cert.to_str().unwrap()]);
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    let w = &mut doc["certificate"]["witnesses"][0];
    w["y"] = w["x"].clone();
    std::fs::write(&cert, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = run(&["certify", cert.to_str().unwrap(), "--revalidate"]);
    assert_eq!(code(&out), 2);
    assert_eq!(stdout_json(&out)["pass"], false);
}

#[test]
fn certify_singleton_names_missing_hypothesis() {
    let path = fixture("singleton.json");
    let out = run(&["certify", path.to_str().unwrap(), "--route", "main"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("fewer than two disjoint finite orbits"));
}

#[test]
fn certify_mixing_with_equal_points_is_an_input_error() {
    let path = fixture("full_shift.json");
    let out = run(&["certify", path.to_str().unwrap(), "--route", "mixing", "--x1", "0", "--x2", "0"]);
    assert_eq!(code(&out), 1);
    let out = run(&["certify", path.to_str().unwrap(), "--route", "mixing", "--x1", "0"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn certify_is_deterministic() {
    let path = fixture("golden_mean.json");
    let a = without_timing(stdout_json(&run(&["certify", path.to_str().unwrap(), "--route", "main"])));
    let b = without_timing(stdout_json(&run(&["certify", path.to_str().unwrap(), "--route", "main"])));
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn axioms_examples() {
    let out = run(&["axioms", fixture("discrete_base.json").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!((v["all_pass"].clone(), v["hausdorff"].clone()), (Value::Bool(true), Value::Bool(true)));

    let out = run(&["axioms", fixture("coarse_base.json").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!((v["all_pass"].clone(), v["hausdorff"].clone()), (Value::Bool(true), Value::Bool(false)));

    let out = run(&["axioms", fixture("missing_diagonal.json").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let v = stdout_json(&out);
    let un1 = &v["axioms"]["results"][0];
    assert_eq!(un1["axiom"], "UN-1");
    assert_eq!(un1["pass"], false);
    assert_eq!(un1["witness"]["pair"], serde_json::json!(["b", "b"]));

    let out = run(&["axioms", fixture("rotation.json").to_str().unwrap()]);
    assert_eq!(code(&out), 0);

    let out = run(&["axioms", fixture("full_shift.json").to_str().unwrap()]);
    assert_eq!(code(&out), 1);
}
