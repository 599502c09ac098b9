use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn jsharp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jsharp")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("jsharp-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

#[test]
fn foam_values() {
    let o = jsharp(&["foam", "theta", "0", "1", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1\n");
    let o = jsharp(&["foam", "sphere", "4"]);
    assert_eq!(stdout(&o).trim(), "T1*T2*T3 + T1*T2^-1*T3^-1 + T1^-1*T2*T3^-1 + T1^-1*T2^-1*T3");
    let o = jsharp(&["foam", "sphere", "65"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn web_commands() {
    let dodeca = corpus("dodecahedron.json");
    let o = jsharp(&["web", "tait", dodeca.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "60\n");
    let o = jsharp(&["web", "predict-rank", corpus("handcuffs.json").to_str().unwrap()]);
    assert_eq!(stdout(&o), "0\n");
    let o = jsharp(&["web", "predict-rank", corpus("petersen.json").to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("non-planar"));
    let o = jsharp(&["--json", "web", "info", corpus("theta.json").to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["one_sets"].as_array().unwrap().len(), 3);
}

#[test]
fn input_errors_have_distinct_codes() {
    let bad_json = scratch("bad.json", "{\"vertices\": [\"a\"], \"edges\": [");
    let o = jsharp(&["web", "tait", bad_json.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));

    let lonely = scratch("lonely.json", r#"{"vertices": ["x"], "edges": [{"id": "l", "loop": "x"}]}"#);
    let o = jsharp(&["web", "info", lonely.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("vertex `x`"));

    let o = jsharp(&["web", "tait", "/nonexistent/web.json"]);
    assert_eq!(o.status.code(), Some(3));

    let not_zero = scratch("d.json", r#"{"rank": 2, "differential": [["1", "0"], ["0", "0"]]}"#);
    let o = jsharp(&["complex", "analyze", not_zero.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));

    let syntax = scratch("s.json", r#"{"rank": 1, "differential": [["T4"]]}"#);
    let o = jsharp(&["complex", "analyze", syntax.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("entry (0, 0)"));

    assert_eq!(jsharp(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(jsharp(&["complex", "cone-p", "--direction", "1,0,1"]).status.code(), Some(2));
}

#[test]
fn complex_commands() {
    let o = jsharp(&["complex", "handcuffs-linked", "--direction", "1,1,1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("direction 1,1,1: r=4 l=0 torsion {}"));
    let o = jsharp(&["--json", "complex", "cone-p", "--direction", "1,1,1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["frac_rank"], 0);
    assert_eq!(v["f2_dim"], 4);
    assert_eq!(v["specializations"][0]["torsion_exponents"], serde_json::json!([4, 4]));
    assert_eq!(v["specializations"][0]["direction"], "1,1,1");
    let file = scratch("t.json", r#"{"rank": 2, "differential": [["0", "1 + T1"], ["0", "0"]]}"#);
    let o = jsharp(&["complex", "analyze", file.to_str().unwrap(), "--seed", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("direction 1,1,0: r=0 l=1 torsion {1}"));
    // T1 + T2 vanishes on both lines, so the specialization loses rank
    let file = scratch("drop.json", r#"{"rank": 2, "differential": [["0", "T1 + T2"], ["0", "0"]]}"#);
    let o = jsharp(&["complex", "analyze", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("drops the rank"));
    assert!(jsharp(&["complex", "certify-order4"]).status.success());
}

#[test]
fn operator_commands() {
    let o = jsharp(&["ops", "theta", "--check", "--decompose"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(!text.contains("FAIL"));
    assert!(text.contains("V({e1}) rank 2"));
    let o = jsharp(&["--json", "ops", "unknot", "--show"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["operators"]["e"][1][0], "1");
}

#[test]
fn output_is_deterministic() {
    let a = jsharp(&["--json", "ops", "theta", "--show", "--decompose"]);
    let b = jsharp(&["--json", "ops", "theta", "--show", "--decompose"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_all_passes() {
    let o = jsharp(&["verify-all", "--corpus", corpus("").to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 16);
}
