use std::process::{Command, Output};

use polyring::normal_form::{DMatrix, Trace};
use polyring::presentation::Relation;
use polyring::Tableau;
use serde_json::Value;

fn polyring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyring")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = polyring(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn square_generators() {
    let out = stdout(&["generators", "-w", "1,1,1,1"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(out.contains("[1 2 / 3 4]") && out.contains("[1 3 / 2 4]"));
}

#[test]
fn octagon_count() {
    assert_eq!(stdout(&["count", "-w", "1,1,1,1,1,1,1,1", "-N", "1"]), "14\n");
    assert_eq!(stdout(&["count", "-w", "2,2,2,2,2"]), "6\n");
}

#[test]
fn pentagon_relations_as_json() {
    let out = stdout(&["relations", "-w", "2,2,2,2,2", "--format", "json"]);
    let relations: Vec<Relation> = serde_json::from_str(&out).unwrap();
    assert_eq!(relations.len(), 5);
    assert!(relations.iter().all(|r| r.lhs.len() == 2));
    let again = serde_json::to_value(&relations).unwrap();
    assert_eq!(again, serde_json::from_str::<Value>(&out).unwrap());
}

#[test]
fn generator_json_holds_tableaux() {
    let out = stdout(&["generators", "-w", "1,1,1,1,1,1", "--format", "json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let gens = v["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 5);
    for g in gens {
        let t: Tableau = serde_json::from_value(g["tableau"].clone()).unwrap();
        assert_eq!(t.n(), 6);
    }
}

#[test]
fn pentagon_verifies() {
    let out = stdout(&["verify", "-w", "2,2,2,2,2", "--trials", "50", "--seed", "7"]);
    assert!(out.contains("5 of 5 relations pass 50 trials (seed 7)"), "{out}");
    assert!(!out.contains("FAIL"));
}

#[test]
fn hexagon_reports_the_cubic() {
    let out = stdout(&["verify", "-w", "1,1,1,1,1,1"]);
    assert!(out.contains("1 of 1 relations pass"), "{out}");
    assert!(out.contains("degree 3: 35 monomials, 34 lattice points, ideal rank 1, certified"), "{out}");
}

#[test]
fn infeasible_weights_are_reported() {
    let out = polyring(&["verify", "-w", "5,1,1,1"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "empty moduli space; trivial ring\n");
}

#[test]
fn ci_report_for_the_octagon() {
    let out = stdout(&["ci-check", "-w", "1,1,1,1,1,1,1,1"]);
    assert!(out.contains("256 > 120") && out.contains("not a complete intersection"), "{out}");
}

#[test]
fn normalization_trace_as_json() {
    let out = stdout(&["normal-form", "-w", "1,1,1,1", "--matrix", "2,0,2@2;1,2,1@1;1,0,1@1", "--format", "json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let input: DMatrix = serde_json::from_value(v["input"].clone()).unwrap();
    let nf: DMatrix = serde_json::from_value(v["normal_form"].clone()).unwrap();
    let trace: Trace = serde_json::from_value(v["trace"].clone()).unwrap();
    assert_eq!(trace.replay(&input).unwrap(), nf);
    assert_eq!(nf.sum(), vec![4, 2, 4]);
}

#[test]
fn normal_forms_by_degree() {
    let out = stdout(&["normal-form", "-w", "1,1,1,1", "-N", "2"]);
    assert_eq!(out.lines().count(), 3);
}

#[test]
fn output_is_deterministic() {
    let args = ["relations", "-w", "1,1,1,1,1,1,1,1", "--format", "json"];
    assert_eq!(stdout(&args), stdout(&args));
    let args = ["verify", "-w", "2,1,1,2", "--seed", "3"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn exit_codes() {
    assert_eq!(polyring(&["count", "-w", "1,0,1"]).status.code(), Some(2));
    assert_eq!(polyring(&["frobnicate"]).status.code(), Some(2));
    let many = vec!["1"; 17].join(",");
    let out = polyring(&["count", "-w", &many]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("at most 16"));
    let bad = polyring(&["normal-form", "-w", "1,1,1,1", "--matrix", "3,0,2@2"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(polyring(&["normal-form", "-w", "1,1,1,1"]).status.code(), Some(1));
}
