use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const CUSP: &str = r#"{
  "variables": ["x", "y"],
  "terms": [{"exps": [2, 0], "coeff": "1"}, {"exps": [0, 3], "coeff": "1"}],
  "group": {"kind": "monodromy-cyclic"}
}"#;

fn equizeta(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_equizeta"));
    cmd.args(args).env_remove("EQUIZETA_RESOURCE_LIMIT");
    cmd
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_cusp_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "cusp.json", CUSP);
    let out = equizeta(&["verify", "--input", &input]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["verification"]["ok"], Value::Bool(true));
    assert_eq!(v["verification"]["independent"], Value::Bool(true));
    assert_eq!(v["zeta"]["cyclotomic"]["text"], "(1-t^2)(1-t^3)/(1-t^6)");
}

#[test]
fn output_file_and_text_format() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "cusp.json", CUSP);
    let report = dir.path().join("report.txt");
    let out = equizeta(&[
        "classical",
        "--input",
        &input,
        "--format",
        "text",
        "--output",
        report.to_str().unwrap(),
    ])
    .output()
    .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(report).unwrap();
    assert!(text.contains("relation     ok"), "{text}");
}

#[test]
fn reads_stdin_and_honours_truncation() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = equizeta(&["analyze", "--truncation", "3"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(CUSP.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        json_of(&out)["poincare"]["specialized"],
        serde_json::json!([1, 0, 1, 1])
    );
}

#[test]
fn json_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "cusp.json",
        &CUSP.replace("monodromy-cyclic", "full-symmetry"),
    );
    let a = equizeta(&["verify", "--input", &input]).output().unwrap();
    let b = equizeta(&["verify", "--input", &input]).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn corrupted_override_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = CUSP.replace(
        r#""group""#,
        r#""overrides": {"chi_y": [{"set": [1, 2], "value": 3}]}, "group""#,
    );
    let input = write(dir.path(), "bad.json", &bad);
    let out = equizeta(&["verify", "--input", &input]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["verification"]["ok"], Value::Bool(false));
}

#[test]
fn unsupported_inputs_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let degenerate = write(
        dir.path(),
        "deg.json",
        r#"{"variables": ["x"], "terms": [{"exps": [3]}, {"exps": [2]}]}"#,
    );
    let out = equizeta(&["analyze", "--input", &degenerate])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json_of(&out)["error"]["kind"], "unsupported");

    let fermat = write(
        dir.path(),
        "fermat.json",
        r#"{"variables": ["x", "y"], "terms": [{"exps": [3, 0]}, {"exps": [0, 3]}]}"#,
    );
    let out = equizeta(&["classical", "--input", &fermat])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn resource_limit_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "cusp.json", CUSP);
    let out = equizeta(&["analyze", "--input", &input])
        .env("EQUIZETA_RESOURCE_LIMIT", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = equizeta(&["analyze", "--input", &input])
        .env("EQUIZETA_RESOURCE_LIMIT", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn parse_errors_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "broken.json",
        "{\"variables\": [\"x\"], \"terms\": [",
    );
    let out = equizeta(&["analyze", "--input", &input]).output().unwrap();
    assert_eq!(out.status.code(), Some(4));
    let out = equizeta(&["analyze", "--format", "yaml"]).output().unwrap();
    assert_eq!(out.status.code(), Some(4));
    let out = equizeta(&["analyze", "--input", "/definitely/not/here.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn corpus_command_passes() {
    let out = equizeta(&["corpus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["ok"], Value::Bool(true));
    assert_eq!(v["entries"].as_array().unwrap().len(), 28);
}
