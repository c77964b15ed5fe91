//! Channel instances with diagonal (block-fading) links, the cross-ratio
//! maps `T_ijk`, and exact linear independence tests.
//!
//! Users and receivers are 0-based. Receiver 0 is the anchor in
//! `T_ijk = H_0i^-1 H_0k H_jk^-1 H_ji`, and the per-user family is built for
//! user 1.

use itertools::Itertools;
use log::warn;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::echelon;
use crate::error::{input, Error, Result};
use crate::rational::{self, Rational};
use crate::subspace::{DiagMap, Subspace};

/// User whose family `{T_1jk}` is exposed.
pub const FAMILY_USER: usize = 1;

/// Largest exponent set accepted by the independence tests.
pub const MAX_EXPONENT_SET: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChannelInstance {
    k: usize,
    l: usize,
    t: usize,
    bits: u32,
    seed: u64,
    h: Vec<Vec<DiagMap>>,
}

#[derive(Serialize, Deserialize)]
struct InstanceWire {
    k: usize,
    l: usize,
    t: usize,
    bits: u32,
    seed: u64,
    h: Vec<Vec<Vec<String>>>,
}

fn check_shape(k: usize, l: usize, t: usize, bits: u32) -> Result<()> {
    if l == 0 || t == 0 {
        return input("L and T must be positive");
    }
    if !(4..=63).contains(&bits) {
        return input(format!("bits must lie in 4..=63, got {bits}"));
    }
    if k == 0 {
        return input("at least one user is required");
    }
    Ok(())
}

/// Like [`sample_instance`] but accepts any `k >= 1`. Small `k` is useful for
/// the degenerate regimes probed by the feasibility search.
pub fn sample_any(k: usize, l: usize, t: usize, bits: u32, seed: u64) -> Result<ChannelInstance> {
    check_shape(k, l, t, bits)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = 1u64 << bits;
    let mut h = Vec::with_capacity(k);
    for _ in 0..k {
        let mut row = Vec::with_capacity(k);
        for _ in 0..k {
            let entries = (0..l).map(|_| Rational::from_integer(BigInt::from(rng.gen_range(1..=top)))).collect();
            row.push(DiagMap::block_lift(entries, t)?);
        }
        h.push(row);
    }
    Ok(ChannelInstance { k, l, t, bits, seed, h })
}

/// Draws every coefficient uniformly from `1..=2^bits` with a ChaCha8 stream
/// seeded by `seed`, in the order (receiver, transmitter, period).
pub fn sample_instance(k: usize, l: usize, t: usize, bits: u32, seed: u64) -> Result<ChannelInstance> {
    if k < 3 {
        return Err(Error::Unsupported(format!("{k} users; at least 3 are required")));
    }
    sample_any(k, l, t, bits, seed)
}

/// Samples with `seed`, `seed + 1`, ... until the genericity screen passes.
/// Returns the instance (carrying the seed actually used) and the number of
/// rejected draws.
pub fn sample_generic(
    k: usize,
    l: usize,
    t: usize,
    bits: u32,
    seed: u64,
    max_resamples: u32,
) -> Result<(ChannelInstance, u32)> {
    for attempt in 0..=max_resamples {
        let s = seed.wrapping_add(attempt as u64);
        let inst = sample_instance(k, l, t, bits, s)?;
        match genericity_defect(&inst)? {
            None => return Ok((inst, attempt)),
            Some(reason) => warn!("instance k={k} l={l} t={t} seed={s} rejected: {reason}"),
        }
    }
    Err(Error::InvariantViolation(format!("no generic instance within {max_resamples} resamples from seed {seed}")))
}

impl ChannelInstance {
    /// Builds an instance from explicit positive integer coefficients,
    /// `coefficients[i][j][ℓ]` being the period-ℓ gain from transmitter `j`
    /// to receiver `i`.
    pub fn from_coefficients(l: usize, t: usize, bits: u32, seed: u64, coefficients: &[Vec<Vec<u64>>]) -> Result<Self> {
        let k = coefficients.len();
        check_shape(k, l, t, bits)?;
        let top = 1u64 << bits;
        let mut h = Vec::with_capacity(k);
        for (i, row) in coefficients.iter().enumerate() {
            if row.len() != k {
                return input(format!("receiver {i} has {} links, expected {k}", row.len()));
            }
            let mut maps = Vec::with_capacity(k);
            for (j, c) in row.iter().enumerate() {
                if c.len() != l {
                    return input(format!("link ({i},{j}) has {} coefficients, expected {l}", c.len()));
                }
                if let Some(bad) = c.iter().find(|&&x| x == 0 || x > top) {
                    return input(format!("coefficient {bad} on link ({i},{j}) outside 1..=2^{bits}"));
                }
                maps.push(DiagMap::block_lift(
                    c.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect(),
                    t,
                )?);
            }
            h.push(maps);
        }
        Ok(ChannelInstance { k, l, t, bits, seed, h })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// `T·L`.
    pub fn ambient_dim(&self) -> usize {
        self.t * self.l
    }

    /// `H_ij`: transmitter `j` as seen by receiver `i`.
    pub fn h(&self, i: usize, j: usize) -> &DiagMap {
        &self.h[i][j]
    }

    pub fn to_json(&self) -> serde_json::Value {
        let wire = InstanceWire {
            k: self.k,
            l: self.l,
            t: self.t,
            bits: self.bits,
            seed: self.seed,
            h: self.h.iter().map(|row| row.iter().map(|m| rational::vec_to_text(m.entries())).collect()).collect(),
        };
        serde_json::to_value(wire).expect("instance serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let wire: InstanceWire = serde_json::from_value(value.clone())?;
        let mut coefficients = Vec::with_capacity(wire.h.len());
        for row in &wire.h {
            let mut out_row = Vec::with_capacity(row.len());
            for link in row {
                let mut vals = Vec::with_capacity(link.len());
                for s in link {
                    let r = rational::parse(s)?;
                    if !r.is_integer() || !r.is_positive() {
                        return input(format!("channel coefficient {s:?} is not a positive integer"));
                    }
                    let v = r.to_integer();
                    let v: u64 =
                        v.try_into().map_err(|_| Error::Input(format!("channel coefficient {s:?} too large")))?;
                    vals.push(v);
                }
                out_row.push(vals);
            }
            coefficients.push(out_row);
        }
        if coefficients.len() != wire.k {
            return input(format!("\"k\" is {} but \"h\" has {} rows", wire.k, coefficients.len()));
        }
        Self::from_coefficients(wire.l, wire.t, wire.bits, wire.seed, &coefficients)
    }
}

/// `T_ijk = H_0i^-1 H_0k H_jk^-1 H_ji` for distinct `i, j, k`, none equal to
/// the anchor receiver 0.
pub fn derive_t(inst: &ChannelInstance, i: usize, j: usize, k: usize) -> Result<DiagMap> {
    if i == j || j == k || i == k {
        return input(format!("indices ({i},{j},{k}) are not distinct"));
    }
    if i == 0 || j == 0 || k == 0 {
        return input(format!("indices ({i},{j},{k}) include the anchor receiver 0"));
    }
    if let Some(&bad) = [i, j, k].iter().find(|&&x| x >= inst.k) {
        return input(format!("user {bad} out of range for K = {}", inst.k));
    }
    inst.h(0, i).inverse().compose(inst.h(0, k))?.compose(&inst.h(j, k).inverse())?.compose(inst.h(j, i))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub j: usize,
    pub k: usize,
    pub map: DiagMap,
}

/// The maps a single user's subspace must nearly align with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TFamily {
    pub user: usize,
    pub members: Vec<FamilyMember>,
}

impl TFamily {
    /// A family of arbitrary maps, labelled `(0, index)`.
    pub fn from_maps(user: usize, maps: Vec<DiagMap>) -> Result<Self> {
        if let Some(first) = maps.first() {
            if maps.iter().any(|m| m.l() != first.l() || m.t() != first.t()) {
                return input("family members must share L and T");
            }
        }
        let members = maps.into_iter().enumerate().map(|(k, map)| FamilyMember { j: 0, k, map }).collect();
        Ok(TFamily { user, members })
    }

    pub fn m(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn maps(&self) -> Vec<&DiagMap> {
        self.members.iter().map(|m| &m.map).collect()
    }

    pub fn map(&self, index: usize) -> &DiagMap {
        &self.members[index].map
    }
}

/// `{T_1jk : j, k ∈ {2..K-1}, j ≠ k}` in lexicographic `(j, k)` order; its
/// size is `(K-2)(K-3)`.
pub fn t_family(inst: &ChannelInstance, user: usize) -> Result<TFamily> {
    if user != FAMILY_USER {
        return Err(Error::Unsupported(format!("families are built for user {FAMILY_USER} only, got {user}")));
    }
    let mut members = Vec::new();
    for j in 2..inst.k {
        for k in 2..inst.k {
            if j != k {
                members.push(FamilyMember { j, k, map: derive_t(inst, user, j, k)? });
            }
        }
    }
    Ok(TFamily { user, members })
}

/// `∏ maps[i]^{x[i]}`.
pub fn monomial(maps: &[&DiagMap], x: &[i64]) -> Result<DiagMap> {
    if maps.len() != x.len() {
        return input(format!("exponent vector of length {} for {} maps", x.len(), maps.len()));
    }
    let Some(first) = maps.first() else {
        return input("monomial over an empty list of maps");
    };
    let mut acc = DiagMap::identity(first.l(), first.t());
    for (m, &e) in maps.iter().zip(x) {
        if e != 0 {
            acc = acc.compose(&m.pow(e))?;
        }
    }
    Ok(acc)
}

fn count_active_periods(v: &[Rational], l: usize) -> usize {
    (0..l).filter(|&k| v.iter().skip(k).step_by(l).any(|x| !x.is_zero())).count()
}

/// Whether `{∏ T_i^{x_i} v : x ∈ a}` are linearly independent, by exact rank.
///
/// For block maps (`T > 1`) every image of `v` restricted to one period is a
/// multiple of the same vector, so independence needs `|a|` to be at most the
/// number of periods where `v` is nonzero; for `T = 1` this is `‖v‖₀`.
pub fn check_lin_indep(maps: &[&DiagMap], a: &[Vec<i64>], v: &[Rational]) -> Result<bool> {
    let Some(first) = maps.first() else {
        return input("no maps given");
    };
    if v.len() != first.dim() {
        return input(format!("vector of length {} for maps on dimension {}", v.len(), first.dim()));
    }
    if a.len() > MAX_EXPONENT_SET {
        return Err(Error::Capacity(format!("exponent set of size {} exceeds {MAX_EXPONENT_SET}", a.len())));
    }
    let active = count_active_periods(v, first.l());
    if a.len() > active {
        return Err(Error::Precondition(format!(
            "{} exponent vectors but the vector is active in only {active} periods",
            a.len()
        )));
    }
    let rows = a.iter().map(|x| monomial(maps, x).and_then(|m| m.apply_vector(v))).collect::<Result<Vec<_>>>()?;
    let ints = rows.iter().map(|r| echelon::integer_row(r)).collect();
    Ok(echelon::rank(ints, v.len()) == a.len())
}

/// Block form: `dim Σ_{x∈a} (∏ T_i^{x_i}) V` equals the support dimension of
/// `V`. Requires `|a| = L`.
pub fn check_block_lin_indep(maps: &[&DiagMap], a: &[Vec<i64>], v: &Subspace) -> Result<bool> {
    let Some(first) = maps.first() else {
        return input("no maps given");
    };
    if a.len() != first.l() {
        return Err(Error::Precondition(format!("block test needs |A| = L = {}, got {}", first.l(), a.len())));
    }
    if a.len() > MAX_EXPONENT_SET {
        return Err(Error::Capacity(format!("exponent set of size {} exceeds {MAX_EXPONENT_SET}", a.len())));
    }
    let mut acc = Subspace::zero(v.ambient_dim());
    for x in a {
        acc = acc.sum(&v.apply(&monomial(maps, x)?)?)?;
    }
    Ok(acc.dim() == crate::sparsity::support_dim(v, first.l(), first.t())?)
}

/// Pair of maps screened by [`genericity_defect`]: the first two family
/// members when `K >= 4`, otherwise two cross-link ratios at receiver 0.
fn screen_pair(inst: &ChannelInstance) -> Result<Option<(DiagMap, DiagMap)>> {
    let flat = |m: DiagMap| DiagMap::new(m.entries().to_vec());
    if inst.k >= 4 {
        let fam = t_family(inst, FAMILY_USER)?;
        return Ok(Some((flat(fam.map(0).clone())?, flat(fam.map(1).clone())?)));
    }
    if inst.k == 3 {
        let base = inst.h(0, 0).inverse();
        return Ok(Some((flat(base.compose(inst.h(0, 1))?)?, flat(base.compose(inst.h(0, 2))?)?)));
    }
    Ok(None)
}

/// Screens an instance for measure-zero coincidences: for a pair of its
/// maps, every exponent set drawn from `{0,1,2}^2` of size `min(L, 9)` must
/// give independent images of the all-ones vector. Returns a description of
/// the first failure.
pub fn genericity_defect(inst: &ChannelInstance) -> Result<Option<String>> {
    let Some((t1, t2)) = screen_pair(inst)? else { return Ok(None) };
    let grid: Vec<Vec<i64>> = (0..3).cartesian_product(0..3).map(|(a, b)| vec![a, b]).collect();
    let size = inst.l.min(grid.len());
    let ones = vec![Rational::one(); inst.l];
    for a in grid.into_iter().combinations(size) {
        if !check_lin_indep(&[&t1, &t2], &a, &ones)? {
            return Ok(Some(format!("dependent monomial set {a:?}")));
        }
    }
    Ok(None)
}
