mod common;

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn symdeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symdeg")).args(args).output().expect("binary runs")
}

fn fixture(name: &str) -> String {
    common::fixture(name).to_string_lossy().into_owned()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(common::fixture("golden").join(name)).expect("golden file")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn run_pair(args: &[&str]) -> (String, String) {
    let mut text = vec!["--format", "text"];
    text.extend_from_slice(args);
    let mut json = vec!["--format", "json"];
    json.extend_from_slice(args);
    (stdout(&symdeg(&text)), stdout(&symdeg(&json)))
}

#[test]
fn golden_outputs() {
    let cases: [(&str, Vec<String>); 4] = [
        ("existence_m3", vec!["existence".into(), fixture("existence_m3.json")]),
        ("existence_m4", vec!["existence".into(), fixture("existence_m4.json")]),
        ("bifurcation_m3", vec!["bifurcation".into(), fixture("bifurcation_m3.json")]),
        (
            "group_info_m3",
            ["group-info", "--m", "3", "--gamma", "dihedral:3"].map(String::from).to_vec(),
        ),
    ];
    for (name, args) in &cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (text, json) = run_pair(&args);
        assert_eq!(text, golden(&format!("{name}.txt")), "{name} text");
        assert_eq!(json, golden(&format!("{name}.json")), "{name} json");
    }
}

#[test]
fn text_and_json_agree() {
    let (text, json) = run_pair(&["existence", &fixture("existence_m3.json")]);
    let v: Value = serde_json::from_str(&json).unwrap();
    let total = v["total_solutions"].as_u64().unwrap();
    assert!(text.contains(&format!("at least {total} different")));
    let terms = v["degree"].as_array().unwrap();
    assert!(text.contains(&format!("nonzero terms: {}", terms.len())));
    for t in terms {
        assert!(text.contains(t["name"].as_str().unwrap()));
    }
    for name in v["maximal_orbit_types"].as_array().unwrap() {
        assert!(text.contains(name.as_str().unwrap()));
    }
    for n in v["negative_spectrum"].as_array().unwrap() {
        let lambda = n["lambda"].as_f64().unwrap();
        assert!(text.contains(&symdeg::report::fmt_float(lambda)));
    }
}

#[test]
fn reports_are_deterministic_for_a_seed() {
    let args = ["--format", "json", "existence", &fixture("existence_m3.json"), "--seed", "9"];
    let a = stdout(&symdeg(&args));
    assert_eq!(a, stdout(&symdeg(&args)));
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["isotropy_check"]["consistent"], Value::Bool(true));
}

#[test]
fn group_info_counts_classes() {
    let out = stdout(&symdeg(&[
        "--format",
        "json",
        "group-info",
        "--m",
        "4",
        "--gamma",
        "dihedral:3",
        "--layout",
        "dm-first",
    ]));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["class_count"], 236);
    assert_eq!(v["irrep_count"], 30);
}

#[test]
fn burnside_product_by_name() {
    let out = stdout(&symdeg(&["burnside-mul", "--m", "3", "--left", "D_3", "--right", "D_3^z"]));
    assert_eq!(out, "(D_3)·(D_3^z) = (Z_3)\n");
    let bad = symdeg(&["burnside-mul", "--m", "3", "--left", "D_7", "--right", "D_3"]);
    assert_eq!(bad.status.code(), Some(2));
}

fn with_config(text: &str) -> Output {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    symdeg(&["existence", f.path().to_str().unwrap()])
}

#[test]
fn exit_codes_and_diagnostics() {
    let malformed = with_config("{\"m\": 3");
    assert_eq!(malformed.status.code(), Some(1));
    let unknown = with_config(r#"{"m":3,"k":1,"gamma":{"type":"trivial"},"A":[[-1]],"extra":1}"#);
    assert_eq!(unknown.status.code(), Some(1));
    let missing = symdeg(&["existence", "/nonexistent/config.json"]);
    assert_eq!(missing.status.code(), Some(1));

    let cases = [
        (r#"{"m":3,"k":2,"gamma":{"type":"trivial"},"A":[[-1,1],[0,-1]]}"#, "(A5)"),
        (
            r#"{"m":3,"k":3,"gamma":{"type":"dihedral","n":3},"A":[[-2,0,0],[0,-1,0],[0,0,-1]]}"#,
            "(B5)",
        ),
        (r#"{"m":2,"k":1,"gamma":{"type":"trivial"},"A":[[-0.25]]}"#, "(A5)"),
        (
            r#"{"m":40,"k":5,"gamma":{"type":"dihedral","n":5},"A":[[-1,0,0,0,0],[0,-1,0,0,0],[0,0,-1,0,0],[0,0,0,-1,0],[0,0,0,0,-1]]}"#,
            "cap",
        ),
    ];
    for (text, needle) in cases {
        let out = with_config(text);
        assert_eq!(out.status.code(), Some(2), "{text}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(needle), "{err}");
    }
}
