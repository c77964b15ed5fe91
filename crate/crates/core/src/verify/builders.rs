//! Scheme constructions: orthogonal baselines, pattern-driven chain
//! schemes, and seeded random search.

use std::collections::BTreeMap;
use std::path::Path;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::scheme::{verify_decoding, Scheme};
use crate::alignment::grid_span;
use crate::channel::{derive_t, ChannelInstance};
use crate::error::{input, Error, Result};
use crate::rational::{self, Rational};
use crate::subspace::{DiagMap, Subspace};

/// User `i` gets the coordinates `i·d .. (i+1)·d`.
pub fn build_orthogonal_scheme(k: usize, l: usize, t: usize, d: usize) -> Result<Scheme> {
    if k == 0 || l == 0 || t == 0 {
        return input("K, L and T must be positive");
    }
    let n = l * t;
    if k * d > n {
        return input(format!("{k} users of dimension {d} do not fit in T·L = {n}"));
    }
    let subspaces = (0..k)
        .map(|i| Subspace::coordinate(&(i * d..(i + 1) * d).collect::<Vec<_>>(), n))
        .collect::<Result<Vec<_>>>()?;
    Scheme::new(subspaces)
}

/// The largest orthogonal dimension, `⌊T·L / K⌋`.
pub fn max_orthogonal_dim(k: usize, l: usize, t: usize) -> usize {
    l * t / k
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SeedVector {
    Named(String),
    Explicit(Vec<String>),
}

impl Default for SeedVector {
    fn default() -> Self {
        SeedVector::Named("ones".into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridAxis {
    pub map: String,
    pub max: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UserPattern {
    /// Map applied to the whole grid span.
    #[serde(default = "identity_expr")]
    pub prefix: String,
    #[serde(default)]
    pub grid: Vec<GridAxis>,
    /// Coordinates kept from the seed vector; all when absent.
    #[serde(default)]
    pub support: Option<Vec<usize>>,
}

fn identity_expr() -> String {
    "I".into()
}

/// Alignment pattern: for each user a prefix map applied to the grid span
/// of the seed vector along the listed axes.
///
/// Map expressions are products `A * B * ...` of factors `H(i,j)`,
/// `T(i,j,k)`, `I`, or a name from `maps`, each optionally raised to an
/// integer power with `^e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainPattern {
    #[serde(default)]
    pub name: String,
    pub k: usize,
    #[serde(default)]
    pub seed_vector: SeedVector,
    #[serde(default)]
    pub maps: BTreeMap<String, String>,
    pub users: Vec<UserPattern>,
}

impl ChainPattern {
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let p: ChainPattern = serde_json::from_value(value.clone())?;
        if p.users.len() != p.k {
            return input(format!("pattern declares k = {} but lists {} users", p.k, p.users.len()));
        }
        Ok(p)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&serde_json::from_str(&text)?)
    }
}

fn parse_indices(body: &str, expected: usize, factor: &str) -> Result<Vec<usize>> {
    let idx: Vec<usize> = body
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Input(format!("bad indices in factor {factor:?}")))?;
    if idx.len() != expected {
        return input(format!("factor {factor:?} needs {expected} indices"));
    }
    Ok(idx)
}

fn eval_factor(
    inst: &ChannelInstance,
    named: &BTreeMap<String, String>,
    factor: &str,
    depth: usize,
) -> Result<DiagMap> {
    let (base, exp) = match factor.split_once('^') {
        Some((b, e)) => {
            let e: i64 = e.trim().parse().map_err(|_| Error::Input(format!("bad exponent in {factor:?}")))?;
            (b.trim(), e)
        }
        None => (factor.trim(), 1),
    };
    let map = if base == "I" {
        DiagMap::identity(inst.l(), inst.t())
    } else if let Some(body) = base.strip_prefix("H(").and_then(|s| s.strip_suffix(')')) {
        let idx = parse_indices(body, 2, factor)?;
        if idx.iter().any(|&i| i >= inst.k()) {
            return input(format!("factor {factor:?} refers to a user outside 0..{}", inst.k()));
        }
        inst.h(idx[0], idx[1]).clone()
    } else if let Some(body) = base.strip_prefix("T(").and_then(|s| s.strip_suffix(')')) {
        let idx = parse_indices(body, 3, factor)?;
        derive_t(inst, idx[0], idx[1], idx[2])?
    } else if let Some(expr) = named.get(base) {
        if depth > 8 {
            return input(format!("map {base:?} is defined too deeply"));
        }
        eval_expr_at(inst, named, expr, depth + 1)?
    } else {
        return input(format!("unknown map factor {factor:?}"));
    };
    Ok(map.pow(exp))
}

fn eval_expr_at(inst: &ChannelInstance, named: &BTreeMap<String, String>, expr: &str, depth: usize) -> Result<DiagMap> {
    let mut acc = DiagMap::identity(inst.l(), inst.t());
    for factor in expr.split('*') {
        if factor.trim().is_empty() {
            return input(format!("empty factor in {expr:?}"));
        }
        acc = acc.compose(&eval_factor(inst, named, factor, depth)?)?;
    }
    Ok(acc)
}

/// Evaluates a map expression against an instance.
pub fn eval_map_expr(inst: &ChannelInstance, named: &BTreeMap<String, String>, expr: &str) -> Result<DiagMap> {
    eval_expr_at(inst, named, expr, 0)
}

fn seed_vector(pattern: &ChainPattern, n: usize) -> Result<Vec<Rational>> {
    match &pattern.seed_vector {
        SeedVector::Named(name) if name == "ones" => Ok(vec![Rational::one(); n]),
        SeedVector::Named(name) => input(format!("unknown seed vector {name:?}")),
        SeedVector::Explicit(v) => {
            if v.len() != n {
                return input(format!("seed vector of length {} in dimension {n}", v.len()));
            }
            rational::parse_vec(v)
        }
    }
}

/// `V_i = prefix_i · span{∏ G^α x_i}`; feasibility is not checked.
pub fn build_chain_scheme(inst: &ChannelInstance, pattern: &ChainPattern) -> Result<Scheme> {
    if pattern.k != inst.k() {
        return input(format!("pattern is for {} users, instance has {}", pattern.k, inst.k()));
    }
    let n = inst.ambient_dim();
    let seed = seed_vector(pattern, n)?;
    let mut subspaces = Vec::with_capacity(pattern.k);
    for (i, user) in pattern.users.iter().enumerate() {
        let mut x = seed.clone();
        if let Some(support) = &user.support {
            if let Some(&bad) = support.iter().find(|&&c| c >= n) {
                return input(format!("user {i}: support coordinate {bad} out of range"));
            }
            for (c, v) in x.iter_mut().enumerate() {
                if !support.contains(&c) {
                    *v = Rational::zero();
                }
            }
        }
        let axes = user.grid.iter().map(|a| eval_map_expr(inst, &pattern.maps, &a.map)).collect::<Result<Vec<_>>>()?;
        let refs: Vec<&DiagMap> = axes.iter().collect();
        let ns: Vec<usize> = user.grid.iter().map(|a| a.max).collect();
        let span = if refs.is_empty() { Subspace::canonicalize(&[x], n)? } else { grid_span(&x, &refs, &ns)? };
        subspaces.push(span.apply(&eval_map_expr(inst, &pattern.maps, &user.prefix)?)?);
    }
    Scheme::new(subspaces)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub scheme: Option<Scheme>,
    pub trials: usize,
    /// How often each receiver saw signal and interference overlap.
    pub failures_per_receiver: Vec<usize>,
    pub restart_index: Option<usize>,
}

/// Seed of restart `r`, independent of how restarts are scheduled.
pub fn restart_seed(seed: u64, r: usize) -> u64 {
    seed ^ (r as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

const ENTRY_RANGE: i64 = 16;

fn random_subspace(rng: &mut ChaCha8Rng, d: usize, n: usize) -> Result<Subspace> {
    loop {
        let rows: Vec<Vec<Rational>> = (0..d)
            .map(|_| (0..n).map(|_| rational::int(rng.gen_range(-ENTRY_RANGE..=ENTRY_RANGE))).collect())
            .collect();
        let v = Subspace::canonicalize(&rows, n)?;
        if v.dim() == d {
            return Ok(v);
        }
    }
}

/// Tries `restarts` schemes whose `d`-dimensional subspaces have random
/// integer bases; returns the first feasible one.
pub fn random_search(inst: &ChannelInstance, d: usize, restarts: usize, seed: u64) -> Result<SearchOutcome> {
    if d == 0 {
        return input("search dimension must be at least 1");
    }
    let n = inst.ambient_dim();
    let mut outcome =
        SearchOutcome { scheme: None, trials: 0, failures_per_receiver: vec![0; inst.k()], restart_index: None };
    if d > n {
        return Ok(outcome);
    }
    for r in 0..restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(restart_seed(seed, r));
        let subspaces = (0..inst.k()).map(|_| random_subspace(&mut rng, d, n)).collect::<Result<Vec<_>>>()?;
        let scheme = Scheme::new(subspaces)?;
        let report = verify_decoding(inst, &scheme)?;
        outcome.trials += 1;
        for rr in &report.per_receiver {
            if rr.overlap_dim > 0 {
                outcome.failures_per_receiver[rr.receiver] += 1;
            }
        }
        if report.feasible {
            outcome.scheme = Some(scheme);
            outcome.restart_index = Some(r);
            break;
        }
    }
    Ok(outcome)
}
