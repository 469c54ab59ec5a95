use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_rotsys");

const C5: &str = "[[2,3,4,5],[1,3,4,5],[1,2,4,5],[1,2,3,5],[1,2,3,4]]";

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("ROTSYS_SOLVER").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn lines(path: &Path) -> Vec<String> {
    std::fs::read_to_string(path).unwrap().lines().map(str::to_owned).collect()
}

#[test]
fn enumerates_drawable_six_systems() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d6.jsonl");
    let o = run(&["find", "6", "--enumerate", "--canonical", "--corpus-out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(lines(&out).len(), 102);
}

#[test]
fn enumeration_output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    for p in [&a, &b] {
        let o = run(&["find", "5", "--convex", "--enumerate", "--canonical", "--corpus-out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(lines(&a).len(), 3);
}

#[test]
fn instance_files_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.cnf");
    let b = dir.path().join("b.cnf");
    for p in [&a, &b] {
        run(&["find", "5", "--forbid-hc", "--instance-out", p.to_str().unwrap()]);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(dir.path().join("a.cnf.vars").exists());
}

#[test]
fn forbid_hc_is_unsat() {
    let o = run(&["find", "6", "--forbid-hc", "--expect", "unsat"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Unsat"));
    let o = run(&["find", "6", "--forbid-hc", "--expect", "sat"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn all_edges_crossed_witness_at_eight() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.jsonl");
    let o = run(&["find", "8", "--all-edges-crossed", "--expect", "sat", "--corpus-out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let w = rotsys::corpus::parse_line(text.lines().next().unwrap(), 1).unwrap().system;
    assert_eq!(w.n(), 8);
    assert!(rotsys::predicates::is_drawable(&w));
    assert!(!rotsys::predicates::has_uncrossed_edge(&w));
}

#[test]
fn conflicting_flags_are_configuration_errors() {
    assert_eq!(run(&["find", "6", "--forbid-hc", "--all-edges-crossed"]).status.code(), Some(2));
    assert_eq!(run(&["find", "6", "--unextendable-hc", "--natural"]).status.code(), Some(2));
    assert_eq!(run(&["find", "6", "--v5", "--convex"]).status.code(), Some(2));
    assert_eq!(run(&["find", "2"]).status.code(), Some(2));
}

#[test]
fn hamcycle_on_a_convex_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c6.jsonl");
    run(&["find", "6", "--convex", "--enumerate", "--canonical", "--corpus-out", corpus.to_str().unwrap()]);
    let o = run(&["hamcycle", "--in", corpus.to_str().unwrap(), "--all-stars"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 16 * 6);
    assert!(!out.contains("error"));
}

#[test]
fn hamcycle_rejects_non_convex_input() {
    let t5 = "[[2,3,4,5],[1,3,4,5],[1,4,5,2],[1,5,3,2],[1,4,3,2]]";
    let o = run(&["hamcycle", "--rows", t5, "--star", "5"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn hampath_through_a_diagonal() {
    let o = run(&["hampath", "--rows", C5, "--edge", "1,3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let path: Vec<u64> = v["path"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(path.len(), 5);
    assert!(path.windows(2).any(|w| (w[0], w[1]) == (1, 3) || (w[0], w[1]) == (3, 1)));
}

#[test]
fn drawability_exports_planarizations() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["drawability", "--rows", C5, "--planarization-out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("planarization_1.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(v.is_object());
    assert!(stdout(&o).contains("\"edges\":20"));
}

#[test]
fn certify_without_a_solver_is_a_tool_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["certify", "5", "--forbid-hc", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn crossing_pairs_and_nested_lemma() {
    assert_eq!(run(&["find", "5", "--check-crossing-pairs"]).status.code(), Some(0));
    assert_eq!(run(&["find", "6", "--nested-lemma", "part2-case3"]).status.code(), Some(0));
}

#[test]
fn reproduce_lists_and_runs_suites() {
    let o = run(&["reproduce", "--list"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rafla-extended"));
    let o = run(&["reproduce", "planarity"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS [12]"));
    let o = run(&["reproduce", "counterexamples", "--json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["id"], 13);
    assert_eq!(run(&["reproduce", "no-such-suite"]).status.code(), Some(2));
}
