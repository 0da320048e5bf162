use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn fcc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fcc"))
        .args(args)
        .env_remove("FCC_THREADS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gray_plain_output() {
    let out = fcc(&["gray", "--n", "3", "--format", "plain"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# config: "));
    assert!(text.contains("sequence: 000 001 011 010 110 111 101 100"));
}

#[test]
fn construct_output_round_trips_through_verify_and_simulate() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("t3.json");
    let out = fcc(&[
        "construct",
        "wt",
        "--k",
        "8",
        "--t",
        "3",
        "--out",
        path_str(&table),
    ]);
    assert!(out.status.success());
    assert_eq!(json(&out)["result"]["r"], 10);

    let verified = fcc(&["verify", "--table", path_str(&table), "--full"]);
    assert!(verified.status.success());
    let v = json(&verified);
    assert_eq!(v["result"]["passed"], true);
    assert_eq!(v["config"]["command"]["verify"]["full"], true);

    let sim = fcc(&[
        "simulate",
        "--table",
        path_str(&table),
        "--trials",
        "2000",
        "--seed",
        "9",
    ]);
    assert!(sim.status.success());
    assert_eq!(json(&sim)["result"]["success_rate"], 1.0);
    let again = fcc(&[
        "simulate",
        "--table",
        path_str(&table),
        "--trials",
        "2000",
        "--seed",
        "9",
    ]);
    assert_eq!(sim.stdout, again.stdout);

    // the wrapped stdout of construct is accepted as well
    let wrapped = dir.path().join("wrapped.json");
    std::fs::write(&wrapped, &out.stdout).unwrap();
    assert!(fcc(&["verify", "--table", path_str(&wrapped)])
        .status
        .success());
}

#[test]
fn distribution_tables() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("dist.json");
    let out = fcc(&[
        "construct",
        "dist",
        "--k",
        "10",
        "--t",
        "7",
        "--bin-width",
        "3",
        "--out",
        path_str(&table),
    ]);
    assert!(out.status.success());
    assert_eq!(json(&out)["result"]["r"], 23);
    assert_eq!(json(&out)["result"]["T"], 3);
    let verified = fcc(&["verify", "--table", path_str(&table), "--full"]);
    assert_eq!(json(&verified)["result"]["passed"], true);

    let bad = fcc(&[
        "construct",
        "dist",
        "--k",
        "8",
        "--t",
        "2",
        "--bin-width",
        "0",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn failing_table_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("zero.json");
    std::fs::write(
        &table,
        r#"{"mode":"weight","k":4,"t":1,"r":2,"table":["00","00","00","00","00"]}"#,
    )
    .unwrap();
    let out = fcc(&["verify", "--table", path_str(&table)]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["result"]["passed"], false);
    assert_eq!(v["result"]["counterexample"]["u"], "0000");
    assert_eq!(v["result"]["counterexample"]["distance"], 1);
}

#[test]
fn exit_codes() {
    let infeasible = fcc(&["code", "belov", "--t", "32"]);
    assert_eq!(infeasible.status.code(), Some(3));
    let err = json(&infeasible);
    assert_eq!(err["error"]["kind"], "construction_infeasible");
    assert!(err["error"]["suggestion"]
        .as_str()
        .unwrap()
        .contains("m = 8"));

    let invalid = fcc(&["construct", "wt", "--k", "2", "--t", "3"]);
    assert_eq!(invalid.status.code(), Some(2));
    assert_eq!(json(&invalid)["error"]["kind"], "invalid_argument");

    let unknown = fcc(&["frobnicate"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("Usage"));

    let missing = fcc(&["verify", "--table", "/nonexistent/table.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn solve_and_unknown() {
    let dir = tempfile::tempdir().unwrap();
    let drm = dir.path().join("w.drm");
    let out = fcc(&[
        "drm",
        "weight",
        "--k",
        "6",
        "--t",
        "2",
        "--out",
        path_str(&drm),
    ]);
    assert!(out.status.success());
    assert!(std::fs::read_to_string(&drm)
        .unwrap()
        .starts_with("7\n0 4 3 2 1 0 0\n"));

    let solved = fcc(&["solve", "--drm", path_str(&drm)]);
    assert!(solved.status.success());
    let v = json(&solved);
    assert_eq!(v["result"]["n_value"], 6);
    assert_eq!(v["result"]["witness"].as_array().unwrap().len(), 7);
    assert!(v["result"]["nodes_explored"].as_u64().unwrap() > 0);

    let capped = fcc(&["solve", "--drm", path_str(&drm), "--r-max", "5"]);
    assert_eq!(capped.status.code(), Some(4));
    assert_eq!(json(&capped)["result"]["n_value"], "unknown above 5");

    let small = dir.path().join("s.drm");
    fcc(&[
        "drm",
        "weight",
        "--k",
        "4",
        "--t",
        "1",
        "--out",
        path_str(&small),
    ]);
    let ordered = fcc(&["solve", "--drm", path_str(&small), "--orderings"]);
    assert_eq!(json(&ordered)["result"]["n_value"], 3);
}

#[test]
fn reproduce_rows() {
    let out = fcc(&["reproduce"]);
    assert!(out.status.success());
    let rows = json(&out)["result"].as_array().unwrap().clone();
    let ts: Vec<u64> = rows.iter().map(|r| r["t"].as_u64().unwrap()).collect();
    assert_eq!(ts, [1, 2, 3, 5, 7]);

    assert_eq!(rows[0]["lower"], 3);
    assert_eq!(rows[0]["lower_source"], "exact");
    assert_eq!(rows[0]["constructed_r"], 3);
    assert_eq!(rows[0]["exact_n"], 3);
    assert_eq!(rows[1]["exact_n"], 6);

    assert_eq!(rows[2]["constructed_r"], 10);
    // (4t - 2) / (1 - 2 sqrt(ln(2t) / 2t)) has a negative denominator at t = 3
    assert!(rows[2]["prior_upper"].is_null());
    let upper5 = rows[3]["prior_upper"].as_f64().unwrap();
    assert!(upper5 > rows[3]["constructed_r"].as_f64().unwrap());
    assert_eq!(rows[3]["constructed_r"], 18);
    assert_eq!(rows[3]["closed_form_ceil"], 15);
}

#[test]
fn csv_flattens_reports() {
    let out = fcc(&["bounds", "--k", "10", "--t", "5", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# config: "));
    let header = lines.next().unwrap();
    assert!(header.contains("plotkin.exact"));
    assert!(header.contains("closed_form_lower.in_stated_range"));
    assert_eq!(lines.count(), 1);
}

#[test]
fn pairdist_and_threads() {
    let out = fcc(&["pairdist", "--x", "0000", "--y", "0100", "--threads", "1"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["result"]["hamming"], 1);
    assert_eq!(v["result"]["symbol_pair"], 2);
    assert_eq!(v["config"]["threads"], 1);

    let env = Command::new(env!("CARGO_BIN_EXE_fcc"))
        .args(["pairdist", "--x", "000", "--y", "111"])
        .env("FCC_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(json(&env)["config"]["threads"], 2);
    assert_eq!(json(&env)["result"]["symbol_pair"], 3);
}

#[test]
fn code_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let out = fcc(&[
        "code",
        "dps",
        "--m",
        "3",
        "--verify",
        "--out",
        path_str(&path),
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["result"]["n"], 13);
    assert_eq!(v["result"]["verified_distance"], 7);
    assert_eq!(v["result"]["meets_griesmer"], true);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("3 13\n"));
    assert_eq!(text.lines().count(), 4);
}
