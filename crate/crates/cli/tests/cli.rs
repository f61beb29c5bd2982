use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use influence::PosetDocument;
use serde_json::Value;

const VALID: &str = r#"{
  "version": 1,
  "events": [
    {"id": "p1", "chain": "P"}, {"id": "p2", "chain": "P"}, {"id": "p3", "chain": "P"},
    {"id": "q1", "chain": "Q"}, {"id": "q2", "chain": "Q"}, {"id": "lone", "chain": "Q"}
  ],
  "chains": {"P": ["p1", "p2", "p3"], "Q": ["q1", "q2", "lone"]},
  "influence": [["p1", "q2"], ["q1", "p2"], ["q2", "p3"]]
}"#;

const CYCLIC: &str = r#"{
  "version": 1,
  "events": [
    {"id": "a1", "chain": "A"}, {"id": "a2", "chain": "A"},
    {"id": "b1", "chain": "B"}, {"id": "b2", "chain": "B"}
  ],
  "chains": {"A": ["a1", "a2"], "B": ["b1", "b2"]},
  "influence": [["a2", "b1"], ["b2", "a1"]]
}"#;

fn influence(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_influence"))
        .args(args)
        .env_remove("INFLUENCE_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    csv::Reader::from_reader(text.as_bytes())
        .records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect()
}

#[test]
fn validate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let ok = write(dir.path(), "ok.json", VALID);
    let cyclic = write(dir.path(), "cyclic.json", CYCLIC);

    let out = influence(&["validate", &ok]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));

    let out = influence(&["validate", &cyclic, "--emit", "json"]);
    assert_eq!(out.status.code(), Some(1));
    for id in ["a1", "a2", "b1", "b2"] {
        assert!(stderr(&out).contains(id), "{}", stderr(&out));
    }
    let report = json(&out);
    assert_eq!(report["ok"], Value::Bool(false));
    assert_eq!(report["violations"][0]["rule"], "cycle-detected");

    let missing = dir.path().join("absent.json");
    let out = influence(&["validate", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("absent.json"));
}

#[test]
fn schema_and_parse_errors_are_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let no_chains = write(dir.path(), "a.json", r#"{"version": 1, "events": []}"#);
    let garbage = write(dir.path(), "b.json", "{not json");
    let future = write(dir.path(), "c.json", r#"{"version": 9, "events": [], "chains": {}}"#);
    for file in [no_chains, garbage, future] {
        assert_eq!(influence(&["validate", &file]).status.code(), Some(2), "{file}");
    }
}

#[test]
fn document_round_trip_is_stable() {
    let doc = PosetDocument::parse(VALID).unwrap();
    let poset = doc.to_poset().unwrap();
    let text = PosetDocument::from_poset(&poset).to_json();
    let again = PosetDocument::from_poset(&PosetDocument::parse(&text).unwrap().to_poset().unwrap()).to_json();
    assert_eq!(text, again);
}

#[test]
fn quantify_single_chain_and_coordinates() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "ok.json", VALID);

    let out = influence(&["quantify", &file, "--chain", "P"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let rows = csv_rows(&stdout(&out));
    let row = |id: &str| rows.iter().find(|r| r[0] == id).unwrap().clone();
    assert_eq!(row("p2")[1..3], ["1", "1"]);
    assert_eq!(row("q1")[1..3], ["1", "null"]);
    assert_eq!(row("lone")[1..3], ["null", "0"]);

    let out = influence(&["quantify", &file, "--chain", "P", "--chain2", "Q"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&stdout(&out));
    let q2 = rows.iter().find(|r| r[0] == "q2").unwrap();
    assert_eq!(q2[5..7], ["3/2", "1/2"]);
    let lone = rows.iter().find(|r| r[0] == "lone").unwrap();
    assert_eq!(lone[5..7], ["null", "null"]);

    assert_eq!(influence(&["quantify", &file, "--chain", "Z"]).status.code(), Some(2));
}

#[test]
fn quantify_rejects_invalid_posets() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "cyclic.json", CYCLIC);
    assert_eq!(influence(&["quantify", &file, "--chain", "A"]).status.code(), Some(1));
}

#[test]
fn particle_counts() {
    let out = influence(&["particle", "--counts", "3,2", "--emit", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["orderings"], "10");

    let out = influence(&["particle", "--counts", "2,1", "--list", "--emit", "json"]);
    let listed: Vec<_> = json(&out)["enumeration"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    assert_eq!(listed, ["PPQ", "PQP", "QPP"]);
}

#[test]
fn particle_sequence_path() {
    let out = influence(&["particle", "--sequence", "PPQ"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[2][1..4], ["3/2", "1/2", "Q"]);

    assert_eq!(influence(&["particle", "--sequence", "PXQ"]).status.code(), Some(2));
}

#[test]
fn particle_kinematics() {
    let out = influence(&["particle", "--counts", "5,5", "--dp", "5", "--dq", "2", "--events", "10", "--emit", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let k = &json(&out)["kinematics"];
    assert_eq!(k["r_p"], "2");
    assert_eq!(k["r_q"], "5");
    assert_eq!(k["mass"], "√(10)");
    assert_eq!(k["mass_squared"], "10");
    assert_eq!(k["energy"], "7/2");
    assert_eq!(k["momentum"], "3/2");
    assert_eq!(k["beta"], "3/7");

    assert_eq!(influence(&["particle", "--counts", "1,1", "--dp", "5"]).status.code(), Some(2));
}

#[test]
fn particle_random_is_seeded() {
    let args = ["particle", "--random", "50,0.3,7", "--emit", "json"];
    let a = influence(&args);
    let b = influence(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["run"]["seed"], 7);
}

#[test]
fn checkerboard_methods_agree() {
    let out = influence(&["checkerboard", "--steps", "2", "--theta", "0.7853981633974483", "--method", "both", "--emit", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let d = json(&out)["discrepancy"].as_f64().unwrap();
    assert!(d <= 1e-12, "{d}");
}

#[test]
fn checkerboard_matrix_conserves_probability() {
    let dir = tempfile::tempdir().unwrap();
    let out = influence(&["checkerboard", "--steps", "200", "--method", "matrix", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let totals = csv_rows(&fs::read_to_string(dir.path().join("totals.csv")).unwrap());
    assert_eq!(totals.len(), 201);
    for row in totals {
        let p: f64 = row[1].parse().unwrap();
        assert!((p - 1.0).abs() <= 1e-12, "{row:?}");
    }
}

#[test]
fn checkerboard_pathsum_cap() {
    let out = influence(&["checkerboard", "--method", "pathsum", "--steps", "40"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("matrix"));
}

#[test]
fn svg_is_emitted() {
    let out = influence(&["checkerboard", "--steps", "4", "--emit", "svg"]);
    assert!(stdout(&out).starts_with("<svg"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "ok.json", VALID);
    let runs: [&[&str]; 3] = [
        &["quantify", &file, "--chain", "P", "--chain2", "Q", "--emit", "json"],
        &["particle", "--sequence", "PQQPQ", "--dp", "3", "--dq", "4", "--emit", "json"],
        &["checkerboard", "--steps", "12", "--mass", "0.5", "--eps", "0.1", "--method", "both", "--emit", "json"],
    ];
    for args in runs {
        let a = influence(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, influence(args).stdout, "{args:?}");
    }
}

#[test]
fn out_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_influence"))
        .args(["particle", "--sequence", "PQ"])
        .env("INFLUENCE_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(dir.path().join("particle.json").exists());
    assert!(dir.path().join("path.csv").exists());
}
