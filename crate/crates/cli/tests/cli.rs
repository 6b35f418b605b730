//! End-to-end tests against the built binary: exit-code contract, JSON
//! shapes, and the documented command surface.

use std::path::PathBuf;
use std::process::{Command, Output};

fn write_fixture(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("duality-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join(name);
    std::fs::write(&path, contents).expect("write fixture");
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_duality")).args(args).output().expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

const B2: &str =
    r#"{"elements":["0","a","b","1"],"leq":[["0","a"],["0","b"],["a","1"],["b","1"]]}"#;

const P3: &str =
    r#"{"elements":["p","q","m"],"leq":[["p","m"],["q","m"]],"x0":["p","q"],"point":"m"}"#;

#[test]
fn check_classifies_a_poset() {
    let file = write_fixture("b2.json", B2);
    let out = run(&["check", file.to_str().unwrap()]);
    assert!(out.status.success());
    let json = stdout_json(&out);
    assert_eq!(json["kind"], "poset");
    assert_eq!(json["frame_profile"]["is_boolean"], true);
    assert_eq!(json["classification"]["is_lattice"], true);
}

#[test]
fn check_accepts_valid_spaces_and_flags_broken_ones() {
    let file = write_fixture("p3.json", P3);
    let out = run(&["check", file.to_str().unwrap()]);
    assert!(out.status.success());
    let json = stdout_json(&out);
    assert_eq!(json["space_kind"]["is_pointed_priestley"], true);

    let broken = write_fixture(
        "p3-broken.json",
        r#"{"elements":["p","q","m"],"leq":[["p","m"],["q","m"]],"x0":["p"],"point":"m"}"#,
    );
    let out = run(&["check", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "axiom failure is a property violation");
}

#[test]
fn invalid_documents_exit_with_2() {
    let cycle = write_fixture(
        "cycle.json",
        r#"{"elements":["x","y"],"leq":[["x","y"],["y","x"]]}"#,
    );
    let out = run(&["check", cycle.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["check", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dualize_emits_the_spectrum() {
    let file = write_fixture("b2-dualize.json", B2);
    let out = run(&["dualize", file.to_str().unwrap(), "--functor", "X"]);
    assert!(out.status.success());
    let json = stdout_json(&out);
    assert_eq!(json["point"], "{0,a,b,1}");
    assert_eq!(json["x0"].as_array().unwrap().len(), 2);

    let out = run(&["dualize", file.to_str().unwrap(), "--functor", "X", "--bounded"]);
    let json = stdout_json(&out);
    assert!(json["point"].is_null(), "bounded spectrum has no adjoined point");
}

#[test]
fn apply_runs_functors_on_morphisms() {
    let map_doc = format!(
        r#"{{"dom":{B2},"cod":{B2},"map":{{"0":"0","a":"a","b":"b","1":"1"}}}}"#
    );
    let file = write_fixture("id-b2.json", &map_doc);
    let out = run(&["apply", "F", file.to_str().unwrap()]);
    assert!(out.status.success());
    let json = stdout_json(&out);
    assert_eq!(json["map"]["{1}"], "{1}", "F(identity) is the identity");

    let out = run(&["apply", "Y", file.to_str().unwrap()]);
    assert!(out.status.success());
    let json = stdout_json(&out);
    assert!(json["pairs"].as_array().unwrap().len() >= 3, "Y(identity) is the spectrum order");
}

#[test]
fn roundtrip_passes_on_good_objects_and_fails_on_bad_ones() {
    let good = write_fixture("b2-roundtrip.json", B2);
    let out = run(&["roundtrip", good.to_str().unwrap()]);
    assert!(out.status.success());
    let json = stdout_json(&out);
    assert_eq!(json["failed"], 0);

    let m3 = write_fixture(
        "m3.json",
        r#"{"elements":["0","a","b","c","1"],"leq":[["0","a"],["0","b"],["0","c"],["a","1"],["b","1"],["c","1"]]}"#,
    );
    let out = run(&["roundtrip", m3.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "M3 is not distributive");
}

#[test]
fn census_counts_match_the_small_table() {
    let out = run(&["census", "--class", "dl", "--size", "5"]);
    assert!(out.status.success());
    let json = stdout_json(&out);
    assert_eq!(json["counts_by_size"], serde_json::json!([0, 1, 1, 1, 2, 3]));
    assert_eq!(json["total"], 8);
}

#[test]
fn verify_exit_code_tracks_failures() {
    let out = run(&["verify", "--size", "3", "--maps", "0"]);
    assert!(out.status.success(), "default suite must be green");
    let json = stdout_json(&out);
    assert_eq!(json["failed"], 0);
    assert_eq!(json["seed"], 0xd0a117e5u64);
}

#[test]
fn apply_box_functor_to_a_relation() {
    // The identity relation on P3 is its order; A sends it to the identity
    // on the admissible-upset semilattice.
    let rel_doc = format!(
        r#"{{"dom":{P3},"cod":{P3},"pairs":[["p","p"],["p","m"],["q","q"],["q","m"],["m","m"]]}}"#
    );
    let file = write_fixture("id-p3.json", &rel_doc);
    let out = run(&["apply", "A", file.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let json = stdout_json(&out);
    assert_eq!(json["map"]["{m}"], "{m}");
    assert_eq!(json["map"]["{p,q,m}"], "{p,q,m}");

    let out = run(&["apply", "Va", file.to_str().unwrap()]);
    assert!(out.status.success());
}

#[test]
fn census_respects_the_size_cap_env_var() {
    let out = Command::new(env!("CARGO_BIN_EXE_duality"))
        .args(["census", "--class", "poset", "--size", "4"])
        .env("DUALITY_SIZE_CAP", "3")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2), "requested size above the cap is invalid input");

    let out = Command::new(env!("CARGO_BIN_EXE_duality"))
        .args(["census", "--class", "poset", "--size", "3"])
        .env("DUALITY_SIZE_CAP", "3")
        .output()
        .expect("binary runs");
    assert!(out.status.success());
}

#[test]
fn export_dot_prints_diagrams() {
    let file = write_fixture("b2-dot.json", B2);
    let out = run(&["export-dot", file.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches(" -> ").count(), 4);

    let out = run(&["export-dot", file.to_str().unwrap(), "--pair"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("subgraph cluster_").count(), 2);
}
