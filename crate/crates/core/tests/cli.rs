use std::path::{Path, PathBuf};
use std::process::Command;

use ia_workbench::cli::run_command;
use ia_workbench::cli::sweep::{run_sweep, to_csv, SweepConfig, COLUMNS};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_iawb"))
}

fn run(args: &[&str]) -> i32 {
    let mut argv = vec!["iawb".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    run_command(argv)
}

fn path(dir: &Path, name: &str) -> PathBuf {
    dir.join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn bounds_for_three_users_and_one_period() {
    let out = bin().args(["bounds", "--k", "3", "--l", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["bresler_eq1"]["value"], "1");
    assert_eq!(v["bresler_eq1"]["exact"], true);
    assert!(v["thm1"].is_null());
}

#[test]
fn generate_build_verify_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "inst.json");
    let scheme = path(dir.path(), "scheme.json");
    let report = path(dir.path(), "report.json");
    assert_eq!(run(&["gen", "--k", "4", "--l", "8", "--seed", "7", "--out", s(&inst)]), 0);
    assert_eq!(run(&["scheme", "orthogonal", "--k", "4", "--l", "8", "--d", "2", "--out", s(&scheme)]), 0);
    assert_eq!(run(&["verify", s(&inst), s(&scheme), "--out", s(&report)]), 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["feasible"], true);
    assert_eq!(v["dof"], "1");
    assert_eq!(run(&["analyze", "widths", s(&inst), s(&scheme), "--out", s(&report)]), 0);
    assert_eq!(run(&["analyze", "sparsity", s(&inst), s(&scheme), "--out", s(&report)]), 0);
    assert_eq!(run(&["walk", s(&inst), s(&scheme), "--out", s(&report)]), 0);
    let w: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(w["width_guarantee_holds"], true);
}

#[test]
fn infeasible_scheme_exits_with_failure() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "inst.json");
    let scheme = path(dir.path(), "scheme.json");
    assert_eq!(run(&["gen", "--k", "3", "--l", "2", "--out", s(&inst)]), 0);
    std::fs::write(
        &scheme,
        r#"{"k": 3, "dims": [2, 2, 2], "bases": [[["1","0"],["0","1"]], [["1","0"],["0","1"]], [["1","0"],["0","1"]]]}"#,
    )
    .unwrap();
    assert_eq!(run(&["verify", s(&inst), s(&scheme)]), 3);
    assert_eq!(run(&["analyze", "widths", s(&inst), s(&scheme)]), 2);
}

#[test]
fn chain_and_search_schemes() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "inst.json");
    let scheme = path(dir.path(), "scheme.json");
    let pattern = concat!(env!("CARGO_MANIFEST_DIR"), "/patterns/cj3_n1.json");
    assert_eq!(run(&["gen", "--k", "3", "--l", "3", "--seed", "2", "--out", s(&inst)]), 0);
    assert_eq!(run(&["scheme", "chain", s(&inst), "--pattern", pattern, "--out", s(&scheme)]), 0);
    assert_eq!(run(&["verify", s(&inst), s(&scheme)]), 0);
    assert_eq!(run(&["analyze", "widths", s(&inst), s(&scheme)]), 0);
    assert_eq!(run(&["scheme", "search", s(&inst), "--d", "1", "--out", s(&scheme)]), 0);
    assert_eq!(run(&["verify", s(&inst), s(&scheme)]), 0);
    assert_eq!(run(&["gen", "--k", "3", "--l", "1", "--out", s(&inst)]), 0);
    assert_eq!(run(&["scheme", "search", s(&inst), "--d", "1", "--out", s(&scheme)]), 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&scheme).unwrap()).unwrap();
    assert!(v["scheme"].is_null());
}

#[test]
fn exit_codes_for_bad_input() {
    assert_eq!(run(&["bounds", "--k", "2", "--l", "4"]), 2);
    assert_eq!(run(&["bounds", "--k", "3"]), 2);
    assert_eq!(run(&["nonsense"]), 2);
    assert_eq!(run(&["--help"]), 0);
    assert_eq!(run(&["gen", "--k", "3", "--l", "2", "--bits", "2"]), 2);
    assert_eq!(run(&["verify", "/nonexistent/a.json", "/nonexistent/b.json"]), 2);
    assert_eq!(run(&["scheme", "orthogonal", "--k", "4", "--l", "4", "--d", "2"]), 2);
}

#[test]
fn capacity_cap_exits_with_four() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "inst.json");
    let scheme = path(dir.path(), "scheme.json");
    assert_eq!(run(&["gen", "--k", "4", "--l", "28", "--out", s(&inst)]), 0);
    assert_eq!(run(&["scheme", "orthogonal", "--k", "4", "--l", "28", "--d", "2", "--out", s(&scheme)]), 0);
    assert_eq!(run(&["analyze", "sparsity", s(&inst), s(&scheme)]), 4);
}

fn sweep_config(text: &str) -> SweepConfig {
    SweepConfig::from_json(text).unwrap()
}

#[test]
fn empty_grid_gives_header_only() {
    let rows = run_sweep(&sweep_config(r#"{"grid": []}"#), None).unwrap();
    assert_eq!(to_csv(&rows).unwrap(), COLUMNS.join(",") + "\n");
}

#[test]
fn orthogonal_sweep_rows() {
    let cfg = sweep_config(
        r#"{"grid": [{"k": [4], "l": [4, 8], "d": ["max_orthogonal"], "seeds": [0, 1, 2], "schemes": ["orthogonal"]}]}"#,
    );
    let rows = run_sweep(&cfg, None).unwrap();
    assert_eq!(rows.len(), 6);
    for r in &rows {
        assert_eq!(r.feasible, Some(true));
        assert_eq!(r.dof, Some(ia_workbench::rational::int(1)));
        assert_eq!(r.consistent, Some(true));
        assert_eq!(r.error, None);
    }
}

#[test]
fn capacity_error_lands_in_the_row() {
    let cfg = sweep_config(r#"{"grid": [{"k": [3], "l": [26], "seeds": [0], "schemes": ["orthogonal"]}]}"#);
    let rows = run_sweep(&cfg, None).unwrap();
    assert_eq!(rows.len(), 1);
    assert!(rows[0].error.as_deref().unwrap().contains("capacity"));
    let dir = tempfile::tempdir().unwrap();
    let config = path(dir.path(), "cfg.json");
    let out = path(dir.path(), "out.csv");
    std::fs::write(&config, r#"{"grid": [{"k": [3], "l": [26], "seeds": [0], "schemes": ["orthogonal"]}]}"#).unwrap();
    assert_eq!(run(&["sweep", "--config", s(&config), "--out", s(&out)]), 0);
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 2);
}

#[test]
fn sweep_is_deterministic_across_parallelism() {
    let text = r#"{"restarts": 10, "grid": [
        {"k": [3], "l": [3, 4], "d": [1, "max_orthogonal"], "seeds": [0, 1, 2], "schemes": ["orthogonal", "search", "chain:cj3_n1.json"]},
        {"k": [4], "l": [4], "t": [1, 2], "d": [1], "seeds": [5, 6], "schemes": ["search"]}
    ]}"#;
    let mut cfg = sweep_config(text);
    let serial = to_csv(&run_sweep(&cfg, None).unwrap()).unwrap();
    assert_eq!(serial, to_csv(&run_sweep(&cfg, None).unwrap()).unwrap());
    cfg.parallel = 4;
    assert_eq!(serial, to_csv(&run_sweep(&cfg, None).unwrap()).unwrap());
    assert_eq!(serial.lines().count(), 1 + 2 * (2 * 3 * 2 + 3) + 2 * 2);
}

#[test]
fn malformed_sweep_config_is_rejected() {
    assert!(SweepConfig::from_json(r#"{"grid": [{"k": [3], "l": [3], "seeds": [0], "schemes": ["magic"]}]}"#).is_err());
    assert!(SweepConfig::from_json(
        r#"{"grid": [{"k": [3], "l": [3], "d": ["most"], "seeds": [0], "schemes": ["orthogonal"]}]}"#
    )
    .is_err());
    assert!(SweepConfig::from_json(r#"{"grids": []}"#).is_err());
    let dir = tempfile::tempdir().unwrap();
    let config = path(dir.path(), "cfg.json");
    std::fs::write(&config, "{").unwrap();
    assert_eq!(run(&["sweep", "--config", s(&config)]), 2);
}
