use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn deds(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deds")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const CYCLE3: &str = "3 3\n0 1\n1 2\n2 0\n";
const TRANSITIVE4: &str = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

#[test]
fn fpt11_on_a_triangle() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c3.txt", CYCLE3);
    let out = deds(&["solve", "--pq", "1,1", "--engine", "fpt11", "--k", "1", s(&g)]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["size"], 1);
    assert_eq!(v["feasible"], true);
    assert_eq!(v["pq"], serde_json::json!([1, 1]));
}

#[test]
fn infeasible_budget_exits_one() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c4.txt", "4 4\n0 1\n1 2\n2 3\n3 0\n");
    let out = deds(&["solve", "--pq", "0,1", "--engine", "fpt01", "--k", "1", s(&g)]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["feasible"], false);
}

#[test]
fn empty_solution_does_not_verify() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c3.txt", CYCLE3);
    let sol = write(&dir, "empty.sol", "k 0\n");
    let out = deds(&["verify", "--pq", "1,1", s(&g), s(&sol)]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["undominated"].as_array().unwrap().len(), 3);
    let sol = write(&dir, "one.sol", "k 1\n0 1\n");
    assert_eq!(code(&deds(&["verify", "--pq", "1,1", s(&g), s(&sol)])), 0);
}

#[test]
fn transitive_tournament_needs_n_minus_one() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "t4.txt", TRANSITIVE4);
    let out = deds(&["solve", "--pq", "0,1", "--engine", "tournament", s(&g)]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["size"], 3);
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c3.txt", CYCLE3);
    assert_eq!(code(&deds(&["solve", "--pq", "1,1", "--bogus", s(&g)])), 2);
    assert_eq!(code(&deds(&["solve", "--pq", "1", s(&g)])), 2);
    assert_eq!(code(&deds(&["solve", "--pq", "1,1", "--engine", "nope", s(&g)])), 2);
    assert_eq!(code(&deds(&["solve", "--pq", "2,2", "--engine", "fpt11", "--k", "1", s(&g)])), 2);
    let bad = write(&dir, "bad.txt", "3 2\n0 1\n");
    assert_eq!(code(&deds(&["solve", "--pq", "1,1", s(&bad)])), 2);
    let missing = dir.path().join("missing.txt");
    assert_eq!(code(&deds(&["solve", "--pq", "1,1", s(&missing)])), 2);
}

#[test]
fn resource_limit_exits_three() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("t.txt");
    // Large enough that the quasi-polynomial search refuses it.
    for seed in 0.. {
        assert_eq!(code(&deds(&["gen", "tournament", "--n", "20", "--seed", &seed.to_string(), "--out", s(&g)])), 0);
        let text = fs::read_to_string(&g).unwrap();
        let has_source = (0..20).any(|v| !text.lines().skip(1).any(|l| l.split_whitespace().nth(1) == Some(&v.to_string())));
        if !has_source {
            break;
        }
    }
    let out = deds(&["solve", "--pq", "1,2", "--engine", "tournament", s(&g)]);
    assert_eq!(code(&out), 3, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn deterministic_output_is_stable() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "t4.txt", TRANSITIVE4);
    let run = || deds(&["solve", "--pq", "1,1", "--deterministic", "--seed", "3", s(&g)]).stdout;
    let a = run();
    assert_eq!(a, run());
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["elapsed_ms"], 0.0);
    assert_eq!(v["seed"], 3);
}

#[test]
fn twdp_with_a_pace_file() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "p.txt", "3 2\n0 1\n1 2\n");
    let td = write(&dir, "p.td", "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n");
    let out = deds(&["solve", "--pq", "0,0", "--engine", "twdp", "--td", s(&td), s(&g)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["size"], 2);
    let broken = write(&dir, "bad.td", "s td 2 1 3\nb 1 1\nb 2 3\n1 2\n");
    assert_eq!(code(&deds(&["solve", "--pq", "0,0", "--engine", "twdp", "--td", s(&broken), s(&g)])), 2);
}

#[test]
fn kernelize_reports_verdicts() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c3.txt", CYCLE3);
    let out_path = dir.path().join("kernel.txt");
    let out = deds(&["kernelize", "--pq", "1,1", "--k", "1", "--out", s(&out_path), s(&g)]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["verdict"], "reduced");
    assert!(v["certificate"]["vertices"].as_u64().unwrap() <= 20);
    assert!(fs::read_to_string(&out_path).unwrap().starts_with("3 3"));
    let star = write(&dir, "star.txt", "5 4\n0 1\n0 2\n0 3\n0 4\n");
    let out = deds(&["kernelize", "--pq", "0,1", "--k", "3", s(&star)]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["verdict"], "rejected-no");
    assert_eq!(code(&deds(&["kernelize", "--pq", "2,2", "--k", "1", s(&g)])), 2);
}

#[test]
fn gen_writes_graph_and_lineage() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("d.txt");
    let r = deds(&["gen", "digraph", "--n", "6", "--m", "9", "--seed", "4", "--out", s(&out)]);
    assert_eq!(code(&r), 0);
    assert!(fs::read_to_string(&out).unwrap().starts_with("6 9\n"));
    let lineage: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("d.txt.lineage.json")).unwrap()).unwrap();
    assert_eq!(lineage["lineage"]["construction"], "digraph");
    assert_eq!(lineage["lineage"]["seed"], 4);

    let mc = write(&dir, "mc.txt", "4 1\n0 2\n");
    let red = dir.path().join("red.txt");
    assert_eq!(code(&deds(&["gen", "mcc-reduce", "--k", "2", "--n", "2", s(&mc), "--out", s(&red)])), 0);
    assert!(fs::read_to_string(&red).unwrap().contains(" opt"));
    let full = dir.path().join("full.txt");
    assert_eq!(code(&deds(&["gen", "mcc-reduce", "--k", "2", "--n", "2", "--full", s(&mc), "--out", s(&full)])), 0);
    let side: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("full.txt.lineage.json")).unwrap()).unwrap();
    assert_eq!(side["threshold"], 3);
    assert!(side["lineage"]["marks"]["u1u2_arc"].is_u64());

    let aim = dir.path().join("aim.txt");
    assert_eq!(code(&deds(&["gen", "aim-reduce", "--n", "4", "--l", "4", "--seed", "2", "--out", s(&aim)])), 0);
    assert!(fs::read_to_string(&aim).unwrap().starts_with("24 276\n"));
    assert_eq!(code(&deds(&["gen", "aim-reduce", "--n", "4", "--l", "3", "--out", s(&aim)])), 2);
}

#[test]
fn bench_suite_is_reproducible() {
    let run = || deds(&["bench", "--suite", "tournament", "--deterministic"]);
    let a = run();
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, run().stdout);
    let lines = String::from_utf8(a.stdout).unwrap();
    assert_eq!(lines.lines().count(), 12);
    assert!(lines.lines().all(|l| l.contains("\"suite\":\"tournament\"")));
}
