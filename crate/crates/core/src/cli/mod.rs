//! Command-line front end. Every subcommand writes JSON (or CSV for
//! `sweep`) and maps errors onto exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 2 | invalid input, config or unmet precondition |
//! | 3 | verification or invariant failure |
//! | 4 | capacity cap exceeded |

pub mod selftest;
pub mod sweep;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::alignment::{adaptive_walk, average_width, WalkMode};
use crate::channel::{sample_any, t_family, ChannelInstance, FAMILY_USER};
use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};
use crate::verify::builders::{build_chain_scheme, build_orthogonal_scheme, random_search, ChainPattern};
use crate::verify::{check_sparsity_requirement, check_width_requirement, eval_bounds, verify_decoding, Scheme};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_FAILED: i32 = 3;
pub const EXIT_CAPACITY: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "iawb", about = "Exact subspace tools for interference alignment", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample a channel instance.
    Gen {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long, default_value_t = 16)]
        bits: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a precoding scheme.
    Scheme {
        #[command(subcommand)]
        kind: SchemeKind,
    },
    /// Check the decoding condition at every receiver.
    Verify {
        instance: PathBuf,
        scheme: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Necessary-condition tables for a feasible uniform scheme.
    Analyze {
        what: AnalyzeKind,
        instance: PathBuf,
        scheme: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate every bound at (K, L, T).
    Bounds {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long)]
        eps: Option<String>,
        #[arg(long, default_value = "1")]
        c: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Adaptive walk of user 1's subspace through its map family.
    Walk {
        instance: PathBuf,
        scheme: PathBuf,
        /// Comma-separated thresholds; defaults to avg+1, avg+2, ...
        #[arg(long)]
        a: Option<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::Extension)]
        mode: ModeArg,
        /// Comma-separated family indices; defaults to all.
        #[arg(long)]
        s: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a parameter sweep and write CSV.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        parallel: Option<usize>,
    },
    /// Run the invariant suite.
    Selftest,
}

#[derive(Debug, Subcommand)]
enum SchemeKind {
    Orthogonal {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Chain {
        instance: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Search {
        instance: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 50)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AnalyzeKind {
    Widths,
    Sparsity,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Extension,
    Contraction,
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Capacity(_) => EXIT_CAPACITY,
        Error::InvariantViolation(_) => EXIT_FAILED,
        _ => EXIT_INPUT,
    }
}

/// Parses `argv` (program name first) and runs the subcommand.
pub fn run_command(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn emit(value: &serde_json::Value, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn read_json(path: &Path) -> Result<serde_json::Value> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

pub fn load_instance(path: &Path) -> Result<ChannelInstance> {
    ChannelInstance::from_json(&read_json(path)?)
}

pub fn load_scheme(path: &Path) -> Result<Scheme> {
    Scheme::from_json(&read_json(path)?)
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<T>().map_err(|_| Error::Input(format!("bad {what} entry {s:?}"))))
        .collect()
}

fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Gen { k, l, t, bits, seed, out } => {
            emit(&sample_any(k, l, t, bits, seed)?.to_json(), out.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::Scheme { kind } => scheme(kind),
        Command::Verify { instance, scheme, out } => {
            let report = verify_decoding(&load_instance(&instance)?, &load_scheme(&scheme)?)?;
            emit(&serde_json::to_value(&report)?, out.as_deref())?;
            Ok(if report.feasible { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Analyze { what, instance, scheme, out } => {
            let inst = load_instance(&instance)?;
            let s = load_scheme(&scheme)?;
            let result = match what {
                AnalyzeKind::Widths => check_width_requirement(&inst, &s).map(|rows| {
                    let ok = rows.iter().all(|r| r.pass);
                    (json!({ "all_pass": ok, "checks": rows }), ok)
                }),
                AnalyzeKind::Sparsity => check_sparsity_requirement(&inst, &s).map(|rows| {
                    let ok = rows.iter().all(|r| r.pass);
                    let certified = rows.iter().all(|r| r.certified);
                    (json!({ "all_pass": ok, "all_certified": certified, "checks": rows }), ok)
                }),
            };
            match result {
                Ok((value, ok)) => {
                    emit(&value, out.as_deref())?;
                    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
                }
                Err(Error::NotApplicable(msg)) => {
                    emit(&json!({ "not_applicable": msg }), out.as_deref())?;
                    Ok(EXIT_OK)
                }
                Err(e) => Err(e),
            }
        }
        Command::Bounds { k, l, t, eps, c, out } => {
            let eps = eps.as_deref().map(rational::parse).transpose()?;
            let table = eval_bounds(k, l, t, eps.as_ref(), &rational::parse(&c)?)?;
            emit(&serde_json::to_value(&table)?, out.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::Walk { instance, scheme, a, mode, s, out } => {
            let inst = load_instance(&instance)?;
            let sch = load_scheme(&scheme)?;
            if sch.k() != inst.k() || sch.ambient_dim() != inst.ambient_dim() {
                return Err(Error::Input("scheme does not match the instance".into()));
            }
            let family = t_family(&inst, FAMILY_USER)?;
            let w = sch.subspace(FAMILY_USER);
            let s: Vec<usize> = match s {
                Some(text) => parse_list(&text, "index")?,
                None => (0..family.m()).collect(),
            };
            let a: Vec<Rational> = match a {
                Some(text) => text
                    .split(',')
                    .filter(|x| !x.trim().is_empty())
                    .map(|x| rational::parse(x.trim()))
                    .collect::<Result<_>>()?,
                None => {
                    let avg = average_width(w, &family)?;
                    let n = s.len().saturating_sub(family.m().div_ceil(2));
                    (1..=n as i64).map(|i| &avg + int(i)).collect()
                }
            };
            let mode = match mode {
                ModeArg::Extension => WalkMode::Extension,
                ModeArg::Contraction => WalkMode::Contraction,
            };
            let result = adaptive_walk(w, &family, &s, &a, mode)?;
            let width_ok = result.width_guarantee_holds(&a);
            let mut value = serde_json::to_value(&result)?;
            value["width_guarantee_holds"] = json!(width_ok);
            emit(&value, out.as_deref())?;
            Ok(if width_ok { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Sweep { config, out, parallel } => {
            let mut cfg = sweep::SweepConfig::load(&config)?;
            if let Some(p) = parallel {
                cfg.parallel = p;
            }
            let out = out.or_else(|| cfg.out.as_ref().map(|o| config.parent().unwrap_or(Path::new(".")).join(o)));
            let base = config.parent().map(Path::to_path_buf);
            let rows = sweep::run_sweep(&cfg, base.as_deref())?;
            let text = sweep::to_csv(&rows)?;
            match out {
                Some(p) => std::fs::write(p, text)?,
                None => print!("{text}"),
            }
            Ok(EXIT_OK)
        }
        Command::Selftest => {
            let reports = selftest::run_all(true);
            Ok(if reports.iter().all(|r| r.passed) { EXIT_OK } else { EXIT_FAILED })
        }
    }
}

fn scheme(kind: SchemeKind) -> Result<i32> {
    match kind {
        SchemeKind::Orthogonal { k, l, t, d, out } => {
            emit(&build_orthogonal_scheme(k, l, t, d)?.to_json(), out.as_deref())?;
        }
        SchemeKind::Chain { instance, pattern, out } => {
            let inst = load_instance(&instance)?;
            emit(&build_chain_scheme(&inst, &ChainPattern::load(&pattern)?)?.to_json(), out.as_deref())?;
        }
        SchemeKind::Search { instance, d, restarts, seed, out } => {
            let inst = load_instance(&instance)?;
            let found = random_search(&inst, d, restarts, seed)?;
            let value = match &found.scheme {
                Some(s) => s.to_json(),
                None => json!({
                    "scheme": null,
                    "trials": found.trials,
                    "failures_per_receiver": found.failures_per_receiver,
                }),
            };
            emit(&value, out.as_deref())?;
        }
    }
    Ok(EXIT_OK)
}
