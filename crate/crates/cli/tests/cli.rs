use std::process::{Command, Output};

use serde_json::Value;
use symdet_cli::{RefinedReport, SymReport, TableReport, VerifyReport};

fn symdet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symdet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden_json() -> Value {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/golden.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn sym_text_shows_reduced_c() {
    let o = symdet(&["sym", "2,1", "--format", "text"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("c = 3^C(N,3)"));
}

#[test]
fn sym_json_fields_and_round_trip() {
    let o = symdet(&["sym", "1,1", "--format", "json"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["dimension"], "N*(N-1)/2");
    assert_eq!(v["c"], "2^C(N,2)");
    let r: SymReport = serde_json::from_str(&text).unwrap();
    assert_eq!(symdet_cli::to_json(&r), text);
}

#[test]
fn bad_partitions_are_usage_errors() {
    for bad in ["0", "1,2", "abc", "2,,1"] {
        let o = symdet(&["sym", bad]);
        assert_eq!(o.status.code(), Some(2), "{bad}");
    }
    assert_eq!(symdet(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn table_rows_and_limits() {
    let o = symdet(&["table", "--n", "3", "--format", "json"]);
    let t: TableReport = serde_json::from_str(&stdout(&o)).unwrap();
    let shapes: Vec<&str> = t.rows.iter().map(|r| r.shape.as_str()).collect();
    assert_eq!(shapes, ["(2)", "(1^2)", "(3)", "(2,1)", "(1^3)"]);

    let o = symdet(&["table", "--n", "2", "--format", "latex"]);
    let latex = stdout(&o);
    assert_eq!(latex.lines().filter(|l| l.starts_with("$(")).count(), 2);

    let o = symdet(&["table", "--n", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("beyond supported degree"));
}

#[test]
fn refined_examples() {
    let o = symdet(&["refined", "2,1", "--format", "json"]);
    let r: RefinedReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.constituents.len(), 1);
    assert_eq!(r.constituents[0].gamma, "(1)");
    assert_eq!(r.constituents[0].c_reduced, "2(N-1)");

    let text = stdout(&symdet(&["refined", "4,2"]));
    assert!(text.contains("m = 2"));
    assert!(text.contains("c = 5(N-2)N(N+1)(N+4)"));

    let text = stdout(&symdet(&["refined", "1,1,1"]));
    assert!(text.contains("no constituents"));

    assert_eq!(symdet(&["refined", "8"]).status.code(), Some(2));
}

#[test]
fn output_is_independent_of_jobs() {
    let a = symdet(&["--jobs", "1", "table", "--n", "5", "--format", "json"]);
    let b = symdet(&["--jobs", "3", "table", "--n", "5", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(
        a.stdout,
        symdet(&["table", "--n", "5", "--format", "json"]).stdout
    );
}

#[test]
fn verify_builtin_passes() {
    let o = symdet(&["verify", "--scope", "sym", "--format", "json"]);
    assert!(o.status.success());
    let v: VerifyReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v.checks
            .iter()
            .filter(|c| c.name.starts_with("sym "))
            .count(),
        43
    );
    assert_eq!(v.failed, 0);

    let o = symdet(&["verify", "--scope", "refined", "--format", "json"]);
    assert!(o.status.success());
    let v: VerifyReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v.checked,
        golden_json()["refined"].as_array().unwrap().len()
    );
}

#[test]
fn corrupted_golden_entry_is_named() {
    let mut g = golden_json();
    let rows = g["symmetrization"].as_array_mut().unwrap();
    let row = rows.iter_mut().find(|r| r["shape"] == "2,1").unwrap();
    row["c"] = serde_json::json!([{ "base": 5, "ks": [3] }]);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("golden.json");
    std::fs::write(&path, serde_json::to_string(&g).unwrap()).unwrap();

    let o = symdet(&[
        "--golden",
        path.to_str().unwrap(),
        "verify",
        "--scope",
        "sym",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let fails: Vec<String> = stdout(&o)
        .lines()
        .filter(|l| l.starts_with("FAIL"))
        .map(String::from)
        .collect();
    assert_eq!(fails.len(), 1);
    assert!(fails[0].contains("sym 2,1:"), "{}", fails[0]);
}

#[test]
fn unreadable_golden_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{ not json").unwrap();
    let o = symdet(&["--golden", path.to_str().unwrap(), "verify"]);
    assert_eq!(o.status.code(), Some(2));
}
