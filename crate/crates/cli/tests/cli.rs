use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bchromatic"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn run_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().expect("wait")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn temp_file(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("bchromatic-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn crown_spectrum_through_a_pipe() {
    let g = run(&["gen", "crown", "4"]);
    assert!(g.status.success());
    assert!(String::from_utf8_lossy(&g.stdout).starts_with("p edge 8 12"));
    let out = run_stdin(&["spectrum", "-"], &g.stdout);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "v1");
    assert_eq!(v["command"], "spectrum");
    assert_eq!(v["spectrum"], serde_json::json!([2, 4]));
    assert_eq!(v["gaps"], serde_json::json!([3]));
}

#[test]
fn chi_of_triangle() {
    let out = run(&["chi", "K:3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["value"], 3);
}

#[test]
fn graph_from_file() {
    let path = temp_file(
        "c5.col",
        "c five cycle\np edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n",
    );
    let v = json(&run(&["chib", &path]));
    assert_eq!(v["value"], 3);
    assert_eq!(v["n"], 5);
}

#[test]
fn bad_flags_exit_64() {
    assert_eq!(run(&["--bogus"]).status.code(), Some(64));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(run(&["bfind", "K:3"]).status.code(), Some(64));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn errors_exit_1() {
    let out = run(&["chi", "nosuchfamily:3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    let c = temp_file("short.txt", "1 2 3 1 2\n");
    assert_eq!(
        run(&["descend-chordal", "K:1", "K:2", "--coloring", &c]).status.code(),
        Some(1)
    );
}

#[test]
fn exhausted_budget_exits_2() {
    let out = run(&["--budget", "1", "bfind", "crown:6", "-k", "6"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["result"], "unknown");
    assert_eq!(run(&["--budget", "1", "spectrum", "Q:4"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["spectrum", "spider:3,1"];
    let a = run(&args);
    let b = run(&args);
    let c = run(&["--jobs", "3", "spectrum", "spider:3,1"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let r1 = run(&["--seed", "5", "reproduce", "--claim", "4"]);
    let r2 = run(&["--seed", "5", "reproduce", "--claim", "4"]);
    assert_eq!(r1.status.code(), Some(0));
    assert_eq!(r1.stdout, r2.stdout);
}

#[test]
fn bfind_respects_precoloring() {
    // the only 2-coloring of C_4 alternates
    let pre = temp_file("pre.txt", "2 0 0 0\n");
    let v = json(&run(&["bfind", "C:4", "-k", "2", "--pre", &pre]));
    assert_eq!(v["result"], "found");
    assert_eq!(v["coloring"], serde_json::json!([2, 1, 2, 1]));
    let v = json(&run(&["bfind", "P:4", "-k", "3"]));
    assert_eq!(v["result"], "none");
}

#[test]
fn verify_reports_b_vertices() {
    let c = temp_file("c4.txt", "1 2 1 2\n");
    let v = json(&run(&["verify", "C:4", "--coloring", &c]));
    assert_eq!(v["b_coloring"], true);
    let bad = temp_file("bad.txt", "1 1 2 2\n");
    let v = json(&run(&["verify", "C:4", "--coloring", &bad]));
    assert_eq!(v["proper"], false);
    assert_eq!(v["b_coloring"], false);
}

#[test]
fn product_with_legend() {
    let legend = temp_file("legend.txt", "");
    let out = run(&["product", "P:3", "K:2", "--legend", &legend]);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("p edge 6 11"));
    let text = std::fs::read_to_string(&legend).unwrap();
    assert_eq!(text.lines().nth(2), Some("3 2 1"));
}

#[test]
fn hom_subcommands() {
    let f = temp_file("f.txt", "0 1 0 1\n");
    let v = json(&run(&["hom", "verify", "C:4", "K:2", "--map", &f]));
    assert_eq!(v["b_homomorphism"], true);
    let v = json(&run(&["hom", "lift-left", "K:2", "C:4", "K:2", "--map", &f]));
    assert_eq!(v["map"], serde_json::json!([0, 1, 0, 1, 2, 3, 2, 3]));
    let v = json(&run(&["hom", "lift-right", "C:4", "K:2", "K:1", "--map", &f]));
    assert_eq!(v["map"], serde_json::json!([0, 1, 0, 1]));
    let id = temp_file("id.txt", "0 1\n");
    let v = json(&run(&[
        "hom", "compose", "C:4", "K:2", "K:2", "--map", &f, "--map2", &id,
    ]));
    assert_eq!(v["map"], serde_json::json!([0, 1, 0, 1]));
    assert_eq!(v["b_homomorphism"], true);
}

#[test]
fn descents() {
    let k4 = temp_file("k4.txt", "1 2 3 4\n");
    let v = json(&run(&["descend-p4", "K:4", "-l", "1", "--coloring", &k4]));
    assert_eq!(v["outcome"], "clique");
    let p5 = temp_file("p5.txt", "1 2 3 1 2\n");
    let v = json(&run(&["descend-kl", "1", "P:5", "--coloring", &p5]));
    assert_eq!(v["coloring"]["k"], 2);
    let out = run(&["descend-chordal", "P:3", "K:2", "--coloring", &k4]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&run(&["decompose", "P:4"]));
    assert_eq!(v["command"], "decompose");
}

#[test]
fn relations_and_corollary() {
    let v = json(&run(&["relations", "P:3", "K:2"]));
    assert!(v["clauses"].as_array().unwrap().iter().all(|c| c["verdict"] == "pass"));
    let v = json(&run(&["corollary", "P:3", "K:2"]));
    assert_eq!(v["inclusion"], "pass");
    assert_eq!(run(&["corollary", "C:4", "K:2"]).status.code(), Some(1));
}

#[test]
fn reproduce_table() {
    let out = run(&["reproduce", "--claim", "10", "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().nth(1).unwrap().starts_with("10       pass"));
    assert_eq!(run(&["reproduce", "--claim", "nope"]).status.code(), Some(1));
}
