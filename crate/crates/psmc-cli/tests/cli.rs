//! End-to-end tests of the `psmc` binary: file formats, exit codes, and
//! golden outputs.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_psmc"))
}

fn run(args: &[&str]) -> Output {
    binary().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn temp_path(name: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("psmc-cli-test-{}-{name}", std::process::id()));
    path
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

#[test]
fn gen_example1_writes_the_expected_costs() {
    let out_path = temp_path("ex1.json");
    let out = run(&["gen", "example1", "--M", "100", "--out", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "n=2 m=3 r_max=2 q=1\n");
    let file: Value = serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(file["costs"], serde_json::json!([1, 1, 100]));
    assert_eq!(file["version"], 1);
    fs::remove_file(out_path).ok();
}

#[test]
fn gen_appendix_has_ratio_two_thirds() {
    let out_path = temp_path("appendix.json");
    run(&["gen", "appendix", "--out", out_path.to_str().unwrap()]);
    let file: Value = serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(file["q"], serde_json::json!([2, 3]));
    assert_eq!(file["sets"].as_array().unwrap().len(), 3);
    fs::remove_file(out_path).ok();
}

#[test]
fn gen_example42_density_is_one_half() {
    // One set alone fully covers the two requirement-1 elements.
    let path = temp_path("ex42.json");
    run(&["gen", "example42", "--out", path.to_str().unwrap()]);
    let report = stdout_json(&run(&["solve", path.to_str().unwrap(), "--algo", "mdsc-exact"]));
    assert_eq!(report["chosen"], serde_json::json!([0]));
    assert_eq!(report["density"], serde_json::json!([1, 2]));
    fs::remove_file(path).ok();
}

#[test]
fn gen_random_matches_the_committed_fixture() {
    let out_path = temp_path("rand1.json");
    let out = run(&["gen", "random", "--seed", "1", "--out", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    let generated = fs::read(&out_path).unwrap();
    let golden = fs::read(fixture("random_seed1.json")).unwrap();
    assert_eq!(generated, golden, "generator output drifted from the fixture");
    fs::remove_file(out_path).ok();
}

#[test]
fn instance_files_round_trip() {
    let a = temp_path("roundtrip-a.json");
    let b = temp_path("roundtrip-b.json");
    run(&["gen", "threedm", "--k", "2", "--out", a.to_str().unwrap()]);
    // Re-emitting a loaded instance reproduces the bytes.
    let text = fs::read_to_string(&a).unwrap();
    fs::write(&b, &text).unwrap();
    let solve_a = run(&["solve", a.to_str().unwrap(), "--algo", "mdsc-exact"]);
    let solve_b = run(&["solve", b.to_str().unwrap(), "--algo", "mdsc-exact"]);
    assert_eq!(solve_a.stdout, solve_b.stdout);
    fs::remove_file(a).ok();
    fs::remove_file(b).ok();
}

#[test]
fn solve_greedy_on_the_triangle() {
    let path = temp_path("triangle.json");
    run(&["gen", "appendix", "--out", path.to_str().unwrap()]);
    let out = run(&[
        "solve",
        path.to_str().unwrap(),
        "--algo",
        "greedy+exact-mdsc",
        "--epsilon",
        "0.1",
    ]);
    let report = stdout_json(&out);
    assert_eq!(report["cost"], 3);
    assert_eq!(report["covered"], 3);
    assert_eq!(report["epsilon"], serde_json::json!([1, 10]));
    assert_eq!(report["trace"]["iterations"].as_array().unwrap().len(), 1);
    fs::remove_file(path).ok();
}

#[test]
fn solve_relaxations_on_the_gap_family() {
    let path = temp_path("gap.json");
    run(&["gen", "example1", "--M", "100", "--out", path.to_str().unwrap()]);
    let natural = stdout_json(&run(&["solve", path.to_str().unwrap(), "--algo", "lp-natural"]));
    assert!((natural["objective"].as_f64().unwrap() - 2.0).abs() < 1e-6);
    let lp1 = stdout_json(&run(&["solve", path.to_str().unwrap(), "--algo", "lp1"]));
    assert!((lp1["objective"].as_f64().unwrap() - 51.0).abs() < 1e-6);
    fs::remove_file(path).ok();
}

#[test]
fn solve_is_deterministic() {
    let path = fixture("random_seed1.json");
    let a = run(&["solve", path.to_str().unwrap(), "--algo", "mdsc-approx"]);
    let b = run(&["solve", path.to_str().unwrap(), "--algo", "mdsc-approx"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_fixture_matches_the_golden_report() {
    let path = fixture("random_seed1.json");
    let out = run(&["verify", path.to_str().unwrap(), "--epsilon", "0.25"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let golden = fs::read(fixture("verify_seed1.json")).unwrap();
    assert_eq!(out.stdout, golden, "verify report drifted from the golden file");
}

#[test]
fn verify_supports_repeated_trials() {
    let path = fixture("random_seed1.json");
    let out = run(&["verify", path.to_str().unwrap(), "--epsilon", "0.25", "--trials", "3"]);
    assert!(out.status.success());
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["pass"], true);
    assert_eq!(report["trials"], 3);
}

#[test]
fn infeasible_instances_exit_two() {
    let path = temp_path("infeasible.json");
    fs::write(
        &path,
        r#"{"version":1,"n":2,"q":[1,1],"sets":[[0]],"costs":[1],"reqs":[1,1]}"#,
    )
    .unwrap();
    let out = run(&["solve", path.to_str().unwrap(), "--algo", "exact"]);
    assert_eq!(out.status.code(), Some(2));
    fs::remove_file(path).ok();
}

#[test]
fn oversized_instances_exit_four() {
    let sets: Vec<Vec<usize>> = (0..25).map(|_| vec![0]).collect();
    let file = serde_json::json!({
        "version": 1, "n": 1, "q": [1, 1], "sets": sets,
        "costs": vec![1; 25], "reqs": [1],
    });
    let path = temp_path("big.json");
    fs::write(&path, file.to_string()).unwrap();
    let out = run(&["verify", path.to_str().unwrap(), "--epsilon", "0.1"]);
    assert_eq!(out.status.code(), Some(4));
    fs::remove_file(path).ok();
}

#[test]
fn malformed_files_exit_one() {
    let path = temp_path("unknown.json");
    fs::write(
        &path,
        r#"{"version":1,"n":1,"q":[1,1],"sets":[[0]],"costs":[1],"reqs":[1],"bogus":5}"#,
    )
    .unwrap();
    let out = run(&["solve", path.to_str().unwrap(), "--algo", "exact"]);
    assert_eq!(out.status.code(), Some(1));

    fs::write(&path, r#"{"version":9,"n":1,"q":[1,1],"sets":[[0]],"costs":[1],"reqs":[1]}"#)
        .unwrap();
    let out = run(&["solve", path.to_str().unwrap(), "--algo", "exact"]);
    assert_eq!(out.status.code(), Some(1));
    fs::remove_file(path).ok();
}

#[test]
fn greedy_without_epsilon_exits_one() {
    let path = fixture("random_seed1.json");
    let out = run(&["solve", path.to_str().unwrap(), "--algo", "greedy+exact-mdsc"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bench_empty_suite_is_header_only() {
    let path = temp_path("empty.csv");
    let out = run(&["bench", "--suite", "empty", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let csv = fs::read_to_string(&path).unwrap();
    assert_eq!(csv, "seed,n,m,r_max,q,epsilon,algo,cost,covered,opt,ratio,wall_ms\n");
    fs::remove_file(path).ok();
}

#[test]
fn bench_gap_suite_reports_the_growing_gap() {
    let path = temp_path("gap.csv");
    let out = run(&["bench", "--suite", "example1-gap", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let csv = fs::read_to_string(&path).unwrap();
    let mut natural_ratios = Vec::new();
    let mut lp1_ratios = Vec::new();
    for line in csv.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        let ratio: f64 = cells[10].parse().unwrap();
        match cells[6] {
            "lp-natural" => natural_ratios.push(ratio),
            "lp1" => lp1_ratios.push(ratio),
            other => panic!("unexpected algo {other}"),
        }
    }
    // Gap (2 + M) / 4 for M in {10, 100, 1000}; closed by the cover-set
    // relaxation.
    assert_eq!(natural_ratios, vec![3.0, 25.5, 250.5]);
    for r in lp1_ratios {
        assert!((r - 1.0).abs() < 1e-6);
    }
    fs::remove_file(path).ok();
}

#[test]
fn unknown_suite_exits_one() {
    let path = temp_path("nope.csv");
    let out = run(&["bench", "--suite", "nope", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}
