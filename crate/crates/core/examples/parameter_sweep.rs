//! Runs a small sweep in-process and prints the CSV; pass a config path to
//! run that instead.
//!
//!     cargo run --example parameter_sweep -- [config.json]

use ia_workbench::cli::sweep::{run_sweep, to_csv, SweepConfig};

const SMALL: &str = r#"{
  "restarts": 10,
  "grid": [
    {"k": [3], "l": [3, 4], "d": [1, "max_orthogonal"], "seeds": [0, 1], "schemes": ["orthogonal", "search"]},
    {"k": [3], "l": [3, 5], "seeds": [0], "schemes": ["chain:cj3_n1.json", "chain:cj3_n2.json"]},
    {"k": [4], "l": [4, 8], "d": ["max_orthogonal"], "seeds": [0], "schemes": ["orthogonal"]}
  ]
}"#;

fn main() -> ia_workbench::Result<()> {
    let (cfg, base) = match std::env::args().nth(1) {
        Some(p) => {
            let p = std::path::PathBuf::from(p);
            (SweepConfig::load(&p)?, p.parent().map(|d| d.to_path_buf()))
        }
        None => (SweepConfig::from_json(SMALL)?, None),
    };
    let rows = run_sweep(&cfg, base.as_deref())?;
    print!("{}", to_csv(&rows)?);
    let feasible = rows.iter().filter(|r| r.feasible == Some(true)).count();
    eprintln!(
        "{} rows, {feasible} feasible, all consistent: {}",
        rows.len(),
        rows.iter().all(|r| r.consistent != Some(false))
    );
    Ok(())
}
