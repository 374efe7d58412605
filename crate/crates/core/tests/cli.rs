use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

use cyclecones::repro::{Fixture, FixtureSet, TableKind, TABLE_IDS};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclecones")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    fs::write(&p, v.to_string()).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn all_tables_exit_zero_with_registered_diffs() {
    let o = run(&["all"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.trim_end().ends_with("overall: known-diff"));
    for id in TABLE_IDS {
        assert!(text.contains(id), "{id} missing from the summary");
    }
}

#[test]
fn output_is_deterministic() {
    let a = run(&["all", "--json"]);
    let b = run(&["all", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["status"], "known-diff");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["table", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["table", "lin2-x44", "--format", "yaml"]).status.code(), Some(2));
    assert_eq!(run(&["all", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["selfint", "/nonexistent/class.json"]).status.code(), Some(2));
    assert_eq!(run(&["schubert", "G(2,4): s2*"]).status.code(), Some(2));
}

#[test]
fn tampered_fixture_is_a_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let mut f = FixtureSet::embedded().unwrap().get("dual2-x44").unwrap().clone();
    f.rows[0].coords[1] = -1;
    f.rows[0].coords[2] = -1;
    fs::write(dir.path().join("dual2-x44.json"), f.to_json()).unwrap();
    let d = dir.path().to_str().unwrap();

    let o = run(&["table", "dual2-x44", "--fixtures", d, "--format", "report-json"]);
    assert_eq!(o.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["status"], "mismatch");
    assert!(report["diffs"].as_array().unwrap().iter().any(|d| d["known"] == false));
    assert_eq!(run(&["all", "--fixtures", d]).status.code(), Some(1));
}

#[test]
fn exported_table_round_trips_as_a_fixture() {
    let o = run(&["table", "lin2-x44", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let f = Fixture::parse(&stdout(&o)).unwrap();
    assert_eq!(f.table_id, "lin2-x44");
    assert_eq!(f.kind, TableKind::Generators);

    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("lin2-x44.json"), f.to_json()).unwrap();
    let again = run(&["table", "lin2-x44", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(again.status.code(), Some(0));
    assert!(stdout(&again).contains("match"));
}

#[test]
fn expanded_csv_lists_every_ray() {
    let o = run(&["table", "dual2-x44", "--format", "csv", "--expand-orbits"]);
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("label,H^2,F1,F2,F3,F4,G1,G2,G3,G4"));
    assert_eq!(text.lines().count(), 36);
}

#[test]
fn markdown_has_one_table_per_group() {
    let o = run(&["table", "dual2-x44", "--format", "markdown"]);
    let text = stdout(&o);
    assert!(text.starts_with("### dual2-x44"));
    assert_eq!(text.matches("\n---\n").count(), 2);
}

#[test]
fn dual_and_member_commands() {
    let dir = tempfile::tempdir().unwrap();
    let cone = write(dir.path(), "cone.json", &json!({"ambientDim": 2, "rays": [[1, 0], [1, 1]]}));
    let o = run(&["dual", &cone]);
    assert_eq!(o.status.code(), Some(0));
    let dual: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(dual["rays"], json!([[0, 1], [1, -1]]));

    let inside = write(
        dir.path(),
        "inside.json",
        &json!({"space": {"n": 2, "r": 0, "s": 1}, "degree": 1, "coords": {"H": "2", "e1": "1"}}),
    );
    let outside = write(
        dir.path(),
        "outside.json",
        &json!({"space": {"n": 2, "r": 0, "s": 1}, "degree": 1, "coords": {"H": "1", "e1": "2"}}),
    );
    for (class, want) in [(&inside, true), (&outside, false)] {
        let o = run(&["member", class, &cone]);
        assert_eq!(o.status.code(), Some(0));
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["inside"], want);
    }
}

#[test]
fn selfint_and_schubert_commands() {
    let dir = tempfile::tempdir().unwrap();
    let antican = write(
        dir.path(),
        "k.json",
        &json!({"space": {"n": 4, "r": 5, "s": 0}, "degree": 1,
                "coords": {"H": "5", "E1": "-2", "E2": "-2", "E3": "-2", "E4": "-2", "E5": "-2"}}),
    );
    let o = run(&["selfint", &antican]);
    assert_eq!(stdout(&o).trim(), "65");

    let o = run(&["schubert", "G(2,4): s2*s1^4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("point coefficient: 2"));
}
