use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pebblekit"))
        .args(args)
        .env_remove("PEBBLEKIT_MAX_STATES")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

fn path6(dir: &Path) -> String {
    write(dir, "path6.txt", "6 5\n0 1\n1 2\n2 3\n3 4\n4 5\n")
}

#[test]
fn cycle_formula() {
    let v = json(&["pi", "--family", "cycle", "--n", "5"]);
    assert_eq!(v["result"]["value"], 5);
    assert_eq!(v["provenance"], "formula");
}

#[test]
fn exhaustive_matches_formula_on_cycles() {
    for n in 3..=7 {
        let n = n.to_string();
        let f = json(&["pi", "--family", "cycle", "--n", &n]);
        let e = json(&["pi", "--family", "cycle", "--n", &n, "--exhaustive"]);
        assert_eq!(e["provenance"], "exhaustive");
        assert_eq!(f["result"]["value"], e["result"]["value"], "C_{n}");
    }
}

#[test]
fn path_pi_opt_exhaustive() {
    let dir = tempfile::tempdir().unwrap();
    let g = path6(dir.path());
    let v = json(&["pi-opt", "--graph", &g, "--exhaustive"]);
    assert_eq!(v["result"]["value"], 4);
    assert_eq!(v["provenance"], "exhaustive");
    let w: Vec<u64> = serde_json::from_value(v["result"]["witness"].clone()).unwrap();
    assert_eq!(w.iter().sum::<u64>(), 4);
}

#[test]
fn tree_pi_and_rooted() {
    let dir = tempfile::tempdir().unwrap();
    let g = path6(dir.path());
    assert_eq!(json(&["tree-pi", "--graph", &g])["result"]["value"], 32);
    assert_eq!(json(&["tree-pi", "--graph", &g, "--root", "2"])["result"]["value"], 11);
    let e = json(&["pi", "--graph", &g, "--root", "2", "--exhaustive"]);
    assert_eq!(e["result"]["value"], 11);
}

#[test]
fn reachable_and_transform() {
    let dir = tempfile::tempdir().unwrap();
    let g = path6(dir.path());
    let p = write(dir.path(), "d.txt", "0 4\n");
    let v = json(&["reachable", "--graph", &g, "--pebbles", &p, "--root", "2"]);
    assert_eq!(v["result"]["reachable"], true);
    let v = json(&["reachable", "--graph", &g, "--pebbles", &p, "--root", "3"]);
    assert_eq!(v["result"]["reachable"], false);
    let v = json(&["reachable", "--graph", &g, "--pebbles", &p]);
    assert_eq!(v["result"]["solvable"], false);
    let s = json(&["transform", "--graph", &g, "--pebbles", &p, "--op", "smooth"]);
    let counts: Vec<u64> = serde_json::from_value(s["result"].clone()).unwrap();
    assert_eq!(counts.iter().sum::<u64>(), 4);
}

#[test]
fn gen_round_trips_through_graph_flag() {
    let out = run(&["gen", "--family", "hypercube", "--k", "3"]);
    assert!(out.status.success());
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "q3.txt", std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(json(&["pi", "--graph", &g])["result"]["value"], 8);
}

#[test]
fn bounds_lists_reports() {
    let v = json(&["bounds", "--family", "hrs", "--r", "5", "--s", "3"]);
    let reports = v["result"].as_array().unwrap();
    assert!(reports.iter().any(|r| r["kind"] == "lower" && r["value_num"] == 4));
    assert!(reports.iter().any(|r| r["kind"] == "upper" && r["value_num"] == 4 && r["witness"].is_object()));
}

#[test]
fn verify_suite_is_deterministic() {
    let a = run(&["--json", "--seed", "5", "verify", "--suite", "squishing", "--max-n", "5", "--cases", "40"]);
    let b = run(&["--json", "--seed", "5", "verify", "--suite", "squishing", "--max-n", "5", "--cases", "40"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["pi"]).status.code(), Some(2));
    assert_eq!(run(&["pi", "--family", "cycle", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["pi", "--family", "hypercube", "--k", "3", "--exhaustive", "--max-states", "5"]).status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_pebblekit"))
        .args(["pi", "--family", "hypercube", "--k", "3", "--exhaustive"])
        .env("PEBBLEKIT_MAX_STATES", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(run(&["pi", "--graph", "/nonexistent/graph.txt"]).status.code(), Some(1));
}
