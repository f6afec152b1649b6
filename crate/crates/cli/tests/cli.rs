use std::process::Command;

fn metallic() -> Command {
    Command::new(env!("CARGO_BIN_EXE_metallic"))
}

const GOOD: &str = "\
name: tiny
chart: x, y
params: 2, 1

[structure P product]
row: 1, x
row: 0, -1

[checks]
metallic_from_product P
np_relation P
";

#[test]
fn passing_file_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tiny.scn");
    std::fs::write(&path, GOOD).unwrap();
    let out = metallic().arg("run").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS  [1] metallic_from_product P"));
    assert!(text.contains("PASSED: 2/2"));
}

#[test]
fn failing_check_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.scn");
    std::fs::write(&path, GOOD.replace("row: 0, -1", "row: 0, 1")).unwrap();
    let out = metallic().args(["run", "--format", "structured"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["passed"], false);
    assert_eq!(json["checks"][0]["verdict"], "error");
    assert!(json["checks"][0]["error"].as_str().unwrap().contains("not almost product"));
}

#[test]
fn load_errors_exit_two_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.scn");
    std::fs::write(&path, GOOD.replace("row: 1, x", "row: 1, x +")).unwrap();
    let out = metallic().arg("run").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("broken.scn:6:"), "{err}");

    let out = metallic().args(["run", "/nonexistent/x.scn"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn builtins() {
    let out = metallic().args(["run", "--list-builtin"]).output().unwrap();
    let names = String::from_utf8(out.stdout).unwrap();
    assert!(names.lines().any(|l| l == "orthogonal_lines"));
    let out = metallic().args(["run", "--builtin", "gold_diag", "--seed", "5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("seed = 5"));
    let out = metallic().args(["run", "--builtin", "nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
