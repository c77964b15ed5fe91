//! Parameter sweeps: a JSON grid of instance and scheme parameters in, one
//! CSV row per grid point and seed out.

use std::path::Path;

use rayon::prelude::*;
use serde::Deserialize;

use crate::channel::{sample_instance, ChannelInstance};
use crate::error::{input, Error, Result};
use crate::rational::{self, Rational};
use crate::sparsity::SparsityValue;
use crate::verify::bounds::lower_text;
use crate::verify::builders::{
    build_chain_scheme, build_orthogonal_scheme, max_orthogonal_dim, random_search, ChainPattern,
};
use crate::verify::{
    check_consistency, check_sparsity_requirement, check_width_requirement, eval_bounds, verify_decoding,
};

pub const COLUMNS: [&str; 18] = [
    "k",
    "l",
    "t",
    "bits",
    "seed",
    "scheme_kind",
    "d",
    "feasible",
    "dof",
    "eps",
    "max_width",
    "min_sparsity_margin",
    "bound_eq1",
    "bound_thm1",
    "bound_thm2",
    "bound_thm3",
    "consistent",
    "error",
];

/// Patterns shipped with the crate, found by file name when a `chain:` path
/// does not resolve on disk.
const BUILTIN_PATTERNS: [(&str, &str); 3] = [
    ("cj3_n1.json", include_str!("../../patterns/cj3_n1.json")),
    ("cj3_n2.json", include_str!("../../patterns/cj3_n2.json")),
    ("orthogonal_k3_l6.json", include_str!("../../patterns/orthogonal_k3_l6.json")),
];

pub const DEFAULT_CONFIG: &str = include_str!("../../configs/default_sweep.json");

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default)]
    pub grid: Vec<GridSpec>,
    #[serde(default = "default_restarts")]
    pub restarts: usize,
    #[serde(default)]
    pub out: Option<String>,
    #[serde(default = "default_parallel")]
    pub parallel: usize,
}

fn default_restarts() -> usize {
    20
}

fn default_parallel() -> usize {
    1
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub k: Vec<usize>,
    pub l: Vec<usize>,
    #[serde(default = "one")]
    pub t: Vec<usize>,
    #[serde(default = "sixteen")]
    pub bits: Vec<u32>,
    #[serde(default = "default_d")]
    pub d: Vec<DimSpec>,
    pub seeds: Vec<u64>,
    pub schemes: Vec<String>,
}

fn one() -> Vec<usize> {
    vec![1]
}

fn sixteen() -> Vec<u32> {
    vec![16]
}

fn default_d() -> Vec<DimSpec> {
    vec![DimSpec::Fixed(1)]
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum DimSpec {
    Fixed(usize),
    Named(String),
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SweepConfig = serde_json::from_str(text)?;
        for g in &cfg.grid {
            for s in &g.schemes {
                if s != "orthogonal" && s != "search" && !s.starts_with("chain:") {
                    return input(format!("unknown scheme kind {s:?}"));
                }
            }
            for d in &g.d {
                if let DimSpec::Named(n) = d {
                    if n != "max_orthogonal" {
                        return input(format!("unknown dimension {n:?}"));
                    }
                }
            }
        }
        if cfg.parallel == 0 {
            return input("parallel must be at least 1");
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// The shipped default sweep.
    pub fn default_sweep() -> Self {
        Self::from_json(DEFAULT_CONFIG).expect("default sweep config parses")
    }
}

/// One evaluation of the sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepPoint {
    pub k: usize,
    pub l: usize,
    pub t: usize,
    pub bits: u32,
    pub seed: u64,
    pub scheme_kind: String,
    /// `None` for chain schemes, whose dimensions come from the pattern.
    pub d: Option<DimSpec>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepRow {
    pub k: usize,
    pub l: usize,
    pub t: usize,
    pub bits: u32,
    pub seed: u64,
    pub scheme_kind: String,
    pub d: Option<usize>,
    pub feasible: Option<bool>,
    pub dof: Option<Rational>,
    pub eps: Option<Rational>,
    pub max_width: Option<usize>,
    pub min_sparsity_margin: Option<Rational>,
    pub bound_eq1: String,
    pub bound_thm1: String,
    pub bound_thm2: String,
    pub bound_thm3: String,
    pub consistent: Option<bool>,
    pub error: Option<String>,
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn opt_rational(x: &Option<Rational>) -> String {
    x.as_ref().map(rational::to_text).unwrap_or_default()
}

impl SweepRow {
    pub fn record(&self) -> Vec<String> {
        vec![
            self.k.to_string(),
            self.l.to_string(),
            self.t.to_string(),
            self.bits.to_string(),
            self.seed.to_string(),
            self.scheme_kind.clone(),
            opt(&self.d),
            opt(&self.feasible),
            opt_rational(&self.dof),
            opt_rational(&self.eps),
            opt(&self.max_width),
            opt_rational(&self.min_sparsity_margin),
            self.bound_eq1.clone(),
            self.bound_thm1.clone(),
            self.bound_thm2.clone(),
            self.bound_thm3.clone(),
            opt(&self.consistent),
            opt(&self.error),
        ]
    }
}

/// Grid points in order: grid entry, `k`, `l`, `t`, `bits`, scheme, `d`,
/// seed.
pub fn expand(cfg: &SweepConfig) -> Vec<SweepPoint> {
    let mut points = Vec::new();
    for g in &cfg.grid {
        for &k in &g.k {
            for &l in &g.l {
                for &t in &g.t {
                    for &bits in &g.bits {
                        for scheme in &g.schemes {
                            let ds: Vec<Option<DimSpec>> = if scheme.starts_with("chain:") {
                                vec![None]
                            } else {
                                g.d.iter().cloned().map(Some).collect()
                            };
                            for d in ds {
                                for &seed in &g.seeds {
                                    points.push(SweepPoint {
                                        k,
                                        l,
                                        t,
                                        bits,
                                        seed,
                                        scheme_kind: scheme.clone(),
                                        d: d.clone(),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    points
}

fn load_pattern(spec: &str, base: Option<&Path>) -> Result<ChainPattern> {
    if let Some(dir) = base {
        let p = dir.join(spec);
        if p.is_file() {
            return ChainPattern::load(&p);
        }
    }
    let p = Path::new(spec);
    if p.is_file() {
        return ChainPattern::load(p);
    }
    let name = p.file_name().and_then(|n| n.to_str()).unwrap_or(spec);
    match BUILTIN_PATTERNS.iter().find(|(n, _)| *n == name) {
        Some((_, text)) => ChainPattern::from_json(&serde_json::from_str(text)?),
        None => input(format!("pattern {spec:?} not found")),
    }
}

/// Evaluates one grid point; errors land in the row instead of propagating.
pub fn evaluate(point: &SweepPoint, restarts: usize, base: Option<&Path>) -> SweepRow {
    let mut row = SweepRow {
        k: point.k,
        l: point.l,
        t: point.t,
        bits: point.bits,
        seed: point.seed,
        scheme_kind: point.scheme_kind.clone(),
        ..SweepRow::default()
    };
    if let Err(e) = fill(point, restarts, base, &mut row) {
        row.error = Some(e.to_string());
    }
    row
}

fn fill(point: &SweepPoint, restarts: usize, base: Option<&Path>, row: &mut SweepRow) -> Result<()> {
    let table = eval_bounds(point.k, point.l, point.t, None, &rational::int(1))?;
    row.bound_eq1 = lower_text(&table.bresler_eq1);
    row.bound_thm1 = lower_text(&table.thm1);
    row.bound_thm2 = lower_text(&table.thm2);
    row.bound_thm3 = lower_text(&table.thm3);

    let inst: ChannelInstance = sample_instance(point.k, point.l, point.t, point.bits, point.seed)?;
    let d = point.d.as_ref().map(|d| match d {
        DimSpec::Fixed(d) => *d,
        DimSpec::Named(_) => max_orthogonal_dim(point.k, point.l, point.t),
    });
    row.d = d;
    let scheme = match point.scheme_kind.as_str() {
        "orthogonal" => build_orthogonal_scheme(point.k, point.l, point.t, d.expect("orthogonal has d"))?,
        "search" => match random_search(&inst, d.expect("search has d"), restarts, point.seed)?.scheme {
            Some(s) => s,
            None => {
                row.feasible = Some(false);
                row.consistent = Some(true);
                return Ok(());
            }
        },
        other => {
            let spec = other.strip_prefix("chain:").ok_or_else(|| Error::Input(format!("unknown scheme {other:?}")))?;
            let pattern = load_pattern(spec, base)?;
            build_chain_scheme(&inst, &pattern)?
        }
    };
    row.d = scheme.uniform_dim();
    let report = verify_decoding(&inst, &scheme)?;
    row.feasible = Some(report.feasible);
    row.dof = Some(report.dof.clone());
    row.eps = report.eps.clone();
    if !report.feasible {
        row.consistent = Some(true);
        return Ok(());
    }
    let consistency = check_consistency(&report.dof, &table);
    row.consistent = Some(consistency.consistent);
    if report.uniform_dim.is_none() {
        return Ok(());
    }
    row.max_width = check_width_requirement(&inst, &scheme)?.iter().map(|c| c.width).max();
    row.min_sparsity_margin = check_sparsity_requirement(&inst, &scheme)?
        .iter()
        .filter_map(|c| match c.sp {
            SparsityValue::Finite(sp) => Some(rational::int(sp as i64) - &c.bound),
            SparsityValue::Infinite => None,
        })
        .min();
    Ok(())
}

/// Runs every grid point. With `parallel > 1` the points are evaluated on a
/// dedicated pool; the output order is always the expansion order.
pub fn run_sweep(cfg: &SweepConfig, base: Option<&Path>) -> Result<Vec<SweepRow>> {
    let points = expand(cfg);
    if cfg.parallel <= 1 {
        return Ok(points.iter().map(|p| evaluate(p, cfg.restarts, base)).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallel)
        .build()
        .map_err(|e| Error::Input(format!("thread pool: {e}")))?;
    Ok(pool.install(|| points.par_iter().map(|p| evaluate(p, cfg.restarts, base)).collect()))
}

pub fn to_csv(rows: &[SweepRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(COLUMNS).map_err(io)?;
    for r in rows {
        w.write_record(r.record()).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
