use std::process::{Command, Output};

use serde_json::Value;

fn hecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke")).args(args).output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn passing_run_exits_zero_and_is_deterministic() {
    let a = hecke(&["verify", "--example", "omega-sign"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let b = hecke(&["verify", "--example", "omega-sign", "--jobs", "1"]);
    assert_eq!(without_timing(report(&a)), without_timing(report(&b)));
    assert_eq!(report(&a)["passed"], Value::Bool(true));
}

#[test]
fn failing_check_exits_one_with_witness() {
    let out = hecke(&["verify", "--example", "s3-invalid-omega"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    let check = r["checks"].as_array().unwrap().iter().find(|c| c["passed"] == Value::Bool(false)).unwrap();
    assert_eq!(check["witness"]["first"]["kind"], "conjugation_invariance");
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL"));
}

#[test]
fn config_errors_exit_two_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, "schema = 1\nname = \"x\"\n[group]\nkind = \"cyclic\"\nn = \"four\"\n").unwrap();
    let out = hecke(&["levels", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3") && err.contains("four"), "{err}");
    assert_eq!(hecke(&["levels", "--example", "no-such-example"]).status.code(), Some(2));
    assert_eq!(hecke(&["oracle", "--example", "zp", "--depth", "4"]).status.code(), Some(2));
}

#[test]
fn out_and_markdown_files_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let (json, md) = (dir.path().join("r.json"), dir.path().join("r.md"));
    let out = hecke(&[
        "levels",
        "--example",
        "omega-sign",
        "--field-conductor",
        "4",
        "--out",
        json.to_str().unwrap(),
        "--markdown",
        md.to_str().unwrap(),
        "--cache-dir",
        dir.path().join("cache").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(r["command"], "levels");
    assert!(std::fs::read_to_string(&md).unwrap().contains("PASS"));
}
