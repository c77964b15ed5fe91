//! N-sparsity: the smallest support of an N-dimensional subspace of `V`.
//!
//! With `T = 1` the search is exhaustive over coordinate sets. With block
//! maps (`T > 1`) the per-period subspaces are restricted to coordinate
//! subspaces of `R^T`, which gives an upper bound; a matching lower bound
//! from a period-level search certifies the value when the two agree.

use itertools::Itertools;
use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::echelon;
use crate::error::{input, Error, Result};
use crate::subspace::Subspace;

/// Largest `T·L` the exhaustive search accepts.
pub const MAX_SEARCH_DIM: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SparsityValue {
    Finite(usize),
    Infinite,
}

impl SparsityValue {
    pub fn finite(self) -> Option<usize> {
        match self {
            SparsityValue::Finite(v) => Some(v),
            SparsityValue::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, SparsityValue::Infinite)
    }
}

impl Serialize for SparsityValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SparsityValue::Finite(v) => s.serialize_u64(*v as u64),
            SparsityValue::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SparsityResult {
    pub n: usize,
    pub value: SparsityValue,
    /// Coordinates (0-based, in `R^{TL}`) of a support realizing `value`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_support: Option<Vec<usize>>,
    /// Block mode: for each period `k`, the positions `i` (`0..T`) whose
    /// unit vectors span `W̃_k`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub period_blocks: Option<Vec<Vec<usize>>>,
    /// Block mode, when it beats the coordinate allocation: periods `R`
    /// such that `W̃_k = P_k(V ∩ block(R))` realizes `value`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_periods: Option<Vec<usize>>,
    /// Certified lower bound; equals `value` whenever `exact` is set.
    pub lower_bound: SparsityValue,
    pub exact: bool,
}

/// `Σ_k dim(P_k V)`. For `T = 1` this is the largest support of a vector in
/// `V`.
pub fn support_dim(v: &Subspace, l: usize, t: usize) -> Result<usize> {
    if l == 0 || t == 0 || v.ambient_dim() != l * t {
        return input(format!("subspace in dimension {} with L = {l}, T = {t}", v.ambient_dim()));
    }
    if t == 1 {
        return Ok(v.support().len());
    }
    let mut total = 0;
    for k in 0..l {
        let coords: Vec<usize> = (0..t).map(|i| l * i + k).collect();
        total += v.project(&coords)?.dim();
    }
    Ok(total)
}

/// Integer basis rows with their residues, for repeated column-subset ranks.
struct ColumnRanker {
    rows: Vec<Vec<BigInt>>,
    residues: Vec<Vec<u64>>,
}

impl ColumnRanker {
    fn new(v: &Subspace) -> Self {
        let rows: Vec<Vec<BigInt>> = v.basis().iter().map(|r| echelon::integer_row(r)).collect();
        let residues = rows.iter().map(|r| r.iter().map(echelon::reduce_mod_p).collect()).collect();
        ColumnRanker { rows, residues }
    }

    /// Whether `rank(B[:, cols]) <= max_rank`. The modular rank never exceeds
    /// the rational one, so a large modular rank settles the question.
    fn rank_at_most(&self, cols: &[usize], max_rank: usize) -> bool {
        if cols.len() <= max_rank {
            return true;
        }
        let modular: Vec<Vec<u64>> = self.residues.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
        if echelon::rank_mod_p(modular, cols.len()) > max_rank {
            return false;
        }
        let exact: Vec<Vec<BigInt>> = self.rows.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect();
        echelon::rank(exact, cols.len()) <= max_rank
    }
}

/// `dim(V ∩ R^S) = dim V − rank(B[:, S^c])` for a basis `B` of `V`.
pub fn dim_on_support(v: &Subspace, s: &[usize]) -> Result<usize> {
    v.intersect(&Subspace::coordinate(s, v.ambient_dim())?).map(|w| w.dim())
}

/// Smallest union of `groups` (scanned by increasing count, then
/// lexicographically) whose coordinates carry an `n`-dimensional part of `v`.
/// Returns the chosen group indices.
fn min_groups(ranker: &ColumnRanker, d: usize, n: usize, groups: &[Vec<usize>], start: usize) -> Option<Vec<usize>> {
    for size in start..=groups.len() {
        for chosen in (0..groups.len()).combinations(size) {
            let mut keep = vec![false; groups.len()];
            for &g in &chosen {
                keep[g] = true;
            }
            let mut complement = Vec::new();
            for (g, coords) in groups.iter().enumerate() {
                if !keep[g] {
                    complement.extend(coords);
                }
            }
            complement.sort_unstable();
            if ranker.rank_at_most(&complement, d - n) {
                return Some(chosen);
            }
        }
    }
    None
}

fn check_args(v: &Subspace, n: usize, l: usize, t: usize) -> Result<()> {
    if n == 0 {
        return input("N must be at least 1");
    }
    if l == 0 || t == 0 || v.ambient_dim() != l * t {
        return input(format!("subspace in dimension {} with L = {l}, T = {t}", v.ambient_dim()));
    }
    if l * t > MAX_SEARCH_DIM {
        return Err(Error::Capacity(format!(
            "sparsity search over T·L = {} coordinates exceeds the limit {MAX_SEARCH_DIM}",
            l * t
        )));
    }
    Ok(())
}

fn infinite(n: usize) -> SparsityResult {
    SparsityResult {
        n,
        value: SparsityValue::Infinite,
        witness_support: None,
        period_blocks: None,
        witness_periods: None,
        lower_bound: SparsityValue::Infinite,
        exact: true,
    }
}

/// Block candidates beyond coordinate ones: for a period set `R` with
/// `dim(V ∩ block(R)) ≥ n`, the allocation `W̃_k = P_k(V ∩ block(R))` has
/// size `support_dim(V ∩ block(R))`. A set whose intersection misses some of
/// its periods repeats a smaller set, so sizes at or above `best` add nothing.
fn period_subspace_bound(
    v: &Subspace,
    ranker: &ColumnRanker,
    n: usize,
    l: usize,
    t: usize,
    from: usize,
    mut best: usize,
) -> Result<Option<(usize, Vec<usize>)>> {
    let d = v.dim();
    let mut found = None;
    let mut size = from;
    while size < best && size <= l {
        for chosen in (0..l).combinations(size) {
            let complement: Vec<usize> = (0..l * t).filter(|c| !chosen.contains(&(c % l))).collect();
            if !ranker.rank_at_most(&complement, d - n) {
                continue;
            }
            let coords: Vec<usize> = (0..l * t).filter(|c| chosen.contains(&(c % l))).collect();
            let u = v.intersect(&Subspace::coordinate(&coords, l * t)?)?;
            let s = support_dim(&u, l, t)?;
            if s < best {
                best = s;
                found = Some((s, chosen));
            }
        }
        size += 1;
    }
    Ok(found)
}

/// Returns the result and the size of the best coordinate support, which
/// seeds the next search of a profile.
fn search(
    v: &Subspace,
    ranker: &ColumnRanker,
    n: usize,
    l: usize,
    t: usize,
    start: usize,
) -> Result<(SparsityResult, usize)> {
    let d = v.dim();
    let singles: Vec<Vec<usize>> = (0..l * t).map(|c| vec![c]).collect();
    let chosen = min_groups(ranker, d, n, &singles, start.max(n)).expect("the full support always qualifies");
    let coord_value = chosen.len();
    if t == 1 {
        let r = SparsityResult {
            n,
            value: SparsityValue::Finite(coord_value),
            witness_support: Some(chosen),
            period_blocks: None,
            witness_periods: None,
            lower_bound: SparsityValue::Finite(coord_value),
            exact: true,
        };
        return Ok((r, coord_value));
    }
    let periods: Vec<Vec<usize>> = (0..l).map(|k| (0..t).map(|i| l * i + k).collect()).collect();
    let min_periods = min_groups(ranker, d, n, &periods, 1).expect("all periods always qualify").len();
    let lower = n.max(min_periods);
    let mut r = SparsityResult {
        n,
        value: SparsityValue::Finite(coord_value),
        witness_support: None,
        period_blocks: None,
        witness_periods: None,
        lower_bound: SparsityValue::Finite(lower),
        exact: false,
    };
    match period_subspace_bound(v, ranker, n, l, t, min_periods, coord_value)? {
        Some((value, periods)) => {
            r.value = SparsityValue::Finite(value);
            r.witness_periods = Some(periods);
        }
        None => {
            let mut blocks = vec![Vec::new(); l];
            for &c in &chosen {
                blocks[c % l].push(c / l);
            }
            r.witness_support = Some(chosen);
            r.period_blocks = Some(blocks);
        }
    }
    r.exact = r.value == r.lower_bound;
    Ok((r, coord_value))
}

/// `sp_N(V)` (block form when `t > 1`). Infinite when `n > dim V`.
pub fn n_sparsity(v: &Subspace, n: usize, l: usize, t: usize) -> Result<SparsityResult> {
    check_args(v, n, l, t)?;
    if n > v.dim() {
        return Ok(infinite(n));
    }
    search(v, &ColumnRanker::new(v), n, l, t, n).map(|(r, _)| r)
}

/// `sp_N(V)` for `N = 1..=dim V`, reusing each value as the starting size
/// of the next search.
pub fn sparsity_profile(v: &Subspace, l: usize, t: usize) -> Result<Vec<SparsityResult>> {
    if v.dim() == 0 {
        check_args(v, 1, l, t)?;
        return Ok(Vec::new());
    }
    check_args(v, 1, l, t)?;
    let ranker = ColumnRanker::new(v);
    let mut out: Vec<SparsityResult> = Vec::with_capacity(v.dim());
    let mut start = 1;
    for n in 1..=v.dim() {
        let (r, coord_value) = search(v, &ranker, n, l, t, start)?;
        start = coord_value;
        out.push(r);
    }
    Ok(out)
}
