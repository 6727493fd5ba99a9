use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn matchram(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matchram"))
        .args(args)
        .env_remove("MATCHRAM_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn arrow_on_k5() {
    let out = matchram(&["arrow", "--graph", "K5", "--t", "2,2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["arrows"], true);
    assert_eq!(v["method"], "exhaustive");
}

#[test]
fn arrow_on_k4_returns_a_witness() {
    let v = json(&matchram(&["arrow", "--graph", "K4", "--t", "2,2"]));
    assert_eq!(v["arrows"], false);
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 1);
}

#[test]
fn rho_of_c5() {
    let v = json(&matchram(&["arrow", "--graph", "C5", "--rho", "--q", "2"]));
    assert_eq!(v["rho"], "3/2");
}

#[test]
fn guard_names_the_flag() {
    let out = matchram(&[
        "arrow",
        "--graph",
        "K9",
        "--t",
        "3,3",
        "--guard-edges",
        "20",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--guard-edges"));
}

#[test]
fn construct_sharp_has_five_vertices() {
    let out = matchram(&["construct", "sharp", "--t", "2,2", "--s", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["n"], 5);
    assert_eq!(v["q"], 2);
}

#[test]
fn every_construction_emits_a_loadable_file() {
    for args in [
        vec!["construct", "cl", "--t", "3,2"],
        vec!["construct", "split-star", "--q", "2", "--s", "2"],
        vec!["construct", "konig", "--graph", "C6", "--t", "2,3"],
        vec!["construct", "gnp-adversary", "--graph", "P6", "--t", "2,3"],
    ] {
        let out = matchram(&args);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let text = String::from_utf8(out.stdout).unwrap();
        matchram::ColouredGraph::from_json(text.trim(), None).unwrap();
    }
}

#[test]
fn verify_suites() {
    let out = matchram(&["verify", "--suite", "ge", "--max-n", "9", "--trials", "20"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);

    let out = matchram(&[
        "verify", "--suite", "decycle", "--trials", "200", "--seed", "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["suites"][0]["instances"], 200);

    let out = matchram(&["verify", "--suite", "cl", "--q", "2", "--max-r", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let table = &json(&out)["suites"][0]["details"];
    assert_eq!(table.as_array().unwrap().len(), 8);
}

#[test]
fn config_errors_exit_two() {
    assert_eq!(
        matchram(&["verify", "--suite", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(
        matchram(&["arrow", "--graph", "K5", "--t", "0,2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        matchram(&["arrow", "--graph", "no-such-file.txt", "--t", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn distil_writes_a_trace() {
    let colouring = scratch("cl32.json");
    let trace = scratch("cl32.jsonl");
    let out = matchram(&[
        "construct",
        "cl",
        "--t",
        "3,2",
        "--out",
        colouring.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = matchram(&[
        "distil",
        "--graph",
        "K6",
        "--colouring",
        colouring.to_str().unwrap(),
        "--s",
        "1",
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let summary = json(&out);
    assert!(summary["eta"].as_u64().unwrap() >= 1);
    let lines: Vec<Value> = std::fs::read_to_string(&trace)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(lines
        .iter()
        .any(|l| l["stage"] == "k_prime" && l["detail"]["kappa"].is_u64()));
}

#[test]
fn experiment_is_reproducible() {
    let args = [
        "experiment",
        "--graph",
        "connector:12:2",
        "--t",
        "3,3",
        "--s",
        "2",
        "--trials",
        "20",
        "--seed",
        "9",
        "--format",
        "csv",
    ];
    let a = matchram(&args);
    let b = matchram(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("trial,n,s,q,t,colour,nu,threshold,pass"));
    assert_eq!(lines.count(), 40);
}

#[test]
fn seed_falls_back_to_environment() {
    let run = |seed: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_matchram"));
        cmd.args([
            "experiment",
            "--graph",
            "gnp:10:0.5",
            "--t",
            "2,2",
            "--trials",
            "5",
        ]);
        match seed {
            Some(s) => cmd.env("MATCHRAM_SEED", s),
            None => cmd.env_remove("MATCHRAM_SEED"),
        };
        cmd.output().unwrap().stdout
    };
    let from_env = run(Some("41"));
    assert_eq!(json_seed(&from_env), 41);
    assert_eq!(json_seed(&run(None)), 0);
}

fn json_seed(stdout: &[u8]) -> u64 {
    let v: Value = serde_json::from_slice(stdout).unwrap();
    v["seed"].as_u64().unwrap()
}
