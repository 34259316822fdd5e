use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tempfile::NamedTempFile;

fn symlim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symlim")).args(args).output().unwrap()
}

fn symlim_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_symlim"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap().trim_end().to_string()
}

fn file(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

#[test]
fn lr_text_and_json() {
    let out = symlim(&["lr", "1", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "s[2] + s[1,1]");

    let out = symlim(&["--format", "json", "lr", "2,1", "2,1"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["basis"], "schur");
    let c321 = v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .find(|t| t["partition"] == serde_json::json!([3, 2, 1]))
        .unwrap();
    assert_eq!(c321["coeff"], 2);
}

#[test]
fn kostka_value() {
    assert_eq!(stdout(&symlim(&["kostka", "2,1", "1,1,1"])), "2");
    let v: Value = serde_json::from_str(&stdout(&symlim(&["kostka", "--format", "json", "2,1", "1,1,1"]))).unwrap();
    assert_eq!(v["value"], 2);
}

#[test]
fn truncate_from_file_and_stdin() {
    let elem = r#"{"n":2,"basis":"schur","terms":[{"partition":[1,1],"coeff":1}]}"#;
    let f = file(elem);
    assert_eq!(stdout(&symlim(&["truncate", "--n", "1", path(&f)])), "0");
    let out = symlim_stdin(&["--format", "json", "truncate", "--n", "2", "-"], elem);
    assert_eq!(out.status.code(), Some(0));
    let back: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(back, serde_json::from_str::<Value>(elem).unwrap());
}

#[test]
fn lift_from_table() {
    let table = r#"[
        {"n":0,"basis":"schur","terms":[]},
        {"n":1,"basis":"schur","terms":[{"partition":[2],"coeff":1}]},
        {"n":2,"basis":"schur","terms":[{"partition":[2],"coeff":1},{"partition":[1,1],"coeff":-1}]},
        {"n":3,"basis":"schur","terms":[{"partition":[2],"coeff":1},{"partition":[1,1],"coeff":-1}]}
    ]"#;
    let f = file(table);
    let out = symlim(&["lift", "--bound", "2", "--provider", path(&f)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "s[2] - s[1,1]");

    // Entry 1 is inconsistent with entry 2 once s[1,1] is dropped.
    let broken = table.replace(r#"{"partition":[2],"coeff":1}]},"#, r#"{"partition":[2],"coeff":3}]},"#);
    let f = file(&broken);
    assert_eq!(symlim(&["lift", "--bound", "2", "--provider", path(&f)]).status.code(), Some(1));
}

#[test]
fn limit_simples_for_gl() {
    let out = symlim(&["--format", "json", "limit-simples", "--system", "gl", "--level", "2", "--horizon", "8", "--max-degree", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<Value> = serde_json::from_str(&stdout(&out)).unwrap();
    // Partitions of size ≤ 4 with at most two rows: 1 + 1 + 2 + 2 + 3.
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r["level"].as_u64().unwrap() <= 2));
}

#[test]
fn check_system_reports() {
    let out = symlim(&["--format", "json", "check-system", "gl", "--kmax", "3", "--horizon", "6", "--max-degree", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["condition2"], true);
    for (k, level) in v["levels"].as_array().unwrap().iter().enumerate() {
        assert_eq!(level["injective_beyond"], k);
    }

    let out = symlim(&["--format", "json", "check-system", "adversarial", "--kmax", "1", "--horizon", "5"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["condition2"], false);
    assert_eq!(v["levels"][1]["injectivity_counterexample"]["index"], 5);
}

#[test]
fn check_system_from_presentation() {
    let presentation = r#"{
      "name": "toy",
      "horizon": 2,
      "categories": [
        {"index": 0, "levels": [{"level": 0, "labels": ["a"]}]},
        {"index": 1, "levels": [{"level": 0, "labels": ["a", "b"]}]},
        {"index": 2, "levels": [{"level": 0, "labels": ["a", "b"]}]}
      ],
      "maps": [
        {"source": 1, "table": [{"from": "a", "to": "a"}, {"from": "b", "to": "a"}]},
        {"source": 2, "table": [{"from": "a", "to": "a"}, {"from": "b", "to": "b"}]}
      ],
      "witness": [{"level": 0, "index": 1}]
    }"#;
    let f = file(presentation);
    let out = symlim(&["check-system", path(&f), "--kmax", "0", "--horizon", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("condition 2: holds"));
    assert!(text.contains("Merged b (a)"));

    let out = symlim(&["limit-simples", "--system", path(&f), "--level", "0", "--horizon", "2"]);
    assert_eq!(stdout(&out).lines().count(), 3);

    let f = file(r#"{"name": "toy"}"#);
    assert_eq!(symlim(&["check-system", path(&f), "--kmax", "0", "--horizon", "2"]).status.code(), Some(2));
}

#[test]
fn character_and_verify_square() {
    let gl3 = file(r#"{"n":3,"mult":[{"partition":[2,1],"m":3}]}"#);
    assert_eq!(stdout(&symlim(&["character", path(&gl3)])), "3*s[2,1]");
    let out = symlim(&["verify-square", path(&gl3)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("PASS"));

    let infty = file(r#"{"mult":[{"partition":[1,1,1],"m":1},{"partition":[2],"m":2}]}"#);
    assert_eq!(stdout(&symlim(&["character", path(&infty)])), "2*s[2] + s[1,1,1]");
    let out = symlim(&["--format", "json", "verify-square", path(&infty), "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 3);

    assert_eq!(symlim(&["verify-square", path(&infty)]).status.code(), Some(2));
    assert_eq!(symlim(&["verify-square", path(&gl3), "--n", "2"]).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(symlim(&["lr", "1,2", "1"]).status.code(), Some(2));
    assert_eq!(symlim(&["kostka", "x"]).status.code(), Some(2));
    assert_eq!(symlim(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(symlim(&["truncate", "--n", "1", "/nonexistent/file.json"]).status.code(), Some(2));
    let bad = file(r#"{"n":1,"basis":"schur","terms":[{"partition":[1,1],"coeff":1}]}"#);
    let out = symlim(&["truncate", "--n", "0", path(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    // Truncating upward is a domain error.
    let ok = file(r#"{"n":1,"basis":"schur","terms":[]}"#);
    assert_eq!(symlim(&["truncate", "--n", "4", path(&ok)]).status.code(), Some(1));
    assert_eq!(
        symlim(&["limit-simples", "--system", "gl", "--level", "3", "--horizon", "1"]).status.code(),
        Some(1)
    );
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "json", "check-system", "gl", "--kmax", "2", "--horizon", "5", "--max-degree", "4"];
    assert_eq!(symlim(&args).stdout, symlim(&args).stdout);
    assert_eq!(symlim(&["lr", "3,1", "2,2"]).stdout, symlim(&["lr", "3,1", "2,2"]).stdout);
}
