//! Precoding schemes, the decoding condition, and the width and sparsity
//! requirements every decodable uniform scheme must meet.

use serde::{Deserialize, Serialize};

use crate::alignment::width;
use crate::channel::{derive_t, ChannelInstance};
use crate::error::{input, Error, Result};
use crate::rational::{self, frac, Rational};
use crate::sparsity::{sparsity_profile, SparsityValue};
use crate::subspace::Subspace;

/// One transmit subspace per user, all in the same ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scheme {
    ambient_dim: usize,
    subspaces: Vec<Subspace>,
}

#[derive(Serialize, Deserialize)]
struct SchemeWire {
    k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ambient_dim: Option<usize>,
    dims: Vec<usize>,
    bases: Vec<Vec<Vec<String>>>,
}

impl Scheme {
    pub fn new(subspaces: Vec<Subspace>) -> Result<Self> {
        let Some(first) = subspaces.first() else {
            return input("a scheme needs at least one user");
        };
        let ambient_dim = first.ambient_dim();
        if subspaces.iter().any(|v| v.ambient_dim() != ambient_dim) {
            return input("all subspaces of a scheme must share the ambient dimension");
        }
        Ok(Scheme { ambient_dim, subspaces })
    }

    pub fn k(&self) -> usize {
        self.subspaces.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn subspace(&self, i: usize) -> &Subspace {
        &self.subspaces[i]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.subspaces.iter().map(Subspace::dim).collect()
    }

    /// The common dimension when every user has the same one.
    pub fn uniform_dim(&self) -> Option<usize> {
        let d = self.subspaces[0].dim();
        self.subspaces.iter().all(|v| v.dim() == d).then_some(d)
    }

    /// `{"k", "ambient_dim", "dims", "bases"}` with `"p/q"` entries.
    pub fn to_json(&self) -> serde_json::Value {
        let wire = SchemeWire {
            k: self.k(),
            ambient_dim: Some(self.ambient_dim),
            dims: self.dims(),
            bases: self.subspaces.iter().map(Subspace::to_text_rows).collect(),
        };
        serde_json::to_value(wire).expect("scheme serializes")
    }

    /// Parses scheme JSON. `ambient_dim` may be omitted when some basis row
    /// reveals it; `dims` must match the rank of each basis.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let wire: SchemeWire = serde_json::from_value(value.clone())?;
        if wire.bases.len() != wire.k || wire.dims.len() != wire.k {
            return input(format!(
                "\"k\" is {} but {} bases and {} dims are given",
                wire.k,
                wire.bases.len(),
                wire.dims.len()
            ));
        }
        let ambient = match wire.ambient_dim {
            Some(n) => n,
            None => match wire.bases.iter().flatten().next() {
                Some(row) => row.len(),
                None => return input("\"ambient_dim\" is required when every basis is empty"),
            },
        };
        let mut subspaces = Vec::with_capacity(wire.k);
        for (i, (rows, &d)) in wire.bases.iter().zip(&wire.dims).enumerate() {
            let rows = rows.iter().map(|r| rational::parse_vec(r)).collect::<Result<Vec<_>>>()?;
            let v = Subspace::canonicalize(&rows, ambient)?;
            if v.dim() != d {
                return input(format!("user {i}: declared dimension {d}, basis has rank {}", v.dim()));
            }
            subspaces.push(v);
        }
        Scheme::new(subspaces)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReceiverReport {
    pub receiver: usize,
    pub signal_dim: usize,
    pub interference_dim: usize,
    pub overlap_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub feasible: bool,
    pub per_receiver: Vec<ReceiverReport>,
    /// `Σ D_i / (T·L)`.
    #[serde(with = "rational::serde_text")]
    pub dof: Rational,
    /// `1 − 2D/(T·L)` for uniform schemes.
    #[serde(with = "rational::serde_text::option")]
    pub eps: Option<Rational>,
    pub uniform_dim: Option<usize>,
}

fn check_shapes(inst: &ChannelInstance, scheme: &Scheme) -> Result<()> {
    if scheme.k() != inst.k() {
        return input(format!("scheme has {} users, instance {}", scheme.k(), inst.k()));
    }
    if scheme.ambient_dim() != inst.ambient_dim() {
        return input(format!(
            "scheme lives in dimension {}, instance has T·L = {}",
            scheme.ambient_dim(),
            inst.ambient_dim()
        ));
    }
    Ok(())
}

/// `ε = 1 − 2D/(T·L)`.
pub fn eps_for(d: usize, ambient_dim: usize) -> Rational {
    Rational::from_integer(1.into()) - frac(2 * d as i64, ambient_dim as i64)
}

/// At every receiver `i`, intersects `H_ii V_i` with `Σ_{j≠i} H_ij V_j`.
pub fn verify_decoding(inst: &ChannelInstance, scheme: &Scheme) -> Result<VerifyReport> {
    check_shapes(inst, scheme)?;
    let n = scheme.ambient_dim();
    let mut per_receiver = Vec::with_capacity(inst.k());
    for i in 0..inst.k() {
        let signal = scheme.subspace(i).apply(inst.h(i, i))?;
        let mut interference = Subspace::zero(n);
        for j in (0..inst.k()).filter(|&j| j != i) {
            interference = interference.sum(&scheme.subspace(j).apply(inst.h(i, j))?)?;
        }
        let overlap = signal.intersect(&interference)?;
        per_receiver.push(ReceiverReport {
            receiver: i,
            signal_dim: signal.dim(),
            interference_dim: interference.dim(),
            overlap_dim: overlap.dim(),
        });
    }
    let total: usize = scheme.dims().iter().sum();
    let uniform_dim = scheme.uniform_dim();
    Ok(VerifyReport {
        feasible: per_receiver.iter().all(|r| r.overlap_dim == 0),
        per_receiver,
        dof: frac(total as i64, n as i64),
        eps: uniform_dim.map(|d| eps_for(d, n)),
        uniform_dim,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WidthCheck {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub width: usize,
    /// `2εTL`.
    #[serde(with = "rational::serde_text")]
    pub bound: Rational,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SparsityCheck {
    pub i: usize,
    pub n: usize,
    pub sp: SparsityValue,
    /// Certified lower bound on `sp` (equal to it when `T = 1`).
    pub sp_lower: SparsityValue,
    /// `2N − εTL`.
    #[serde(with = "rational::serde_text")]
    pub bound: Rational,
    pub pass: bool,
    /// Whether the certified lower bound already meets `bound`.
    pub certified: bool,
}

/// Feasibility and uniform dimension, required by both lemma checkers.
fn lemma_preconditions(inst: &ChannelInstance, scheme: &Scheme) -> Result<(usize, Rational)> {
    let report = verify_decoding(inst, scheme)?;
    if !report.feasible {
        return Err(Error::Precondition("the scheme does not satisfy the decoding condition".into()));
    }
    let Some(d) = report.uniform_dim else {
        return Err(Error::NotApplicable(format!("per-user dimensions {:?} are not uniform", scheme.dims())));
    };
    Ok((d, report.eps.expect("uniform")))
}

/// `Δ_{T_ijk} V_i ≤ 2εTL` for all distinct `i, j, k ≠ 0`.
pub fn check_width_requirement(inst: &ChannelInstance, scheme: &Scheme) -> Result<Vec<WidthCheck>> {
    let (_, eps) = lemma_preconditions(inst, scheme)?;
    let tl = Rational::from_integer((inst.ambient_dim() as i64).into());
    let bound = Rational::from_integer(2.into()) * eps * tl;
    let mut out = Vec::new();
    for i in 1..inst.k() {
        for j in (1..inst.k()).filter(|&j| j != i) {
            for k in (1..inst.k()).filter(|&k| k != i && k != j) {
                let w = width(scheme.subspace(i), &derive_t(inst, i, j, k)?)?;
                let pass = Rational::from_integer((w as i64).into()) <= bound;
                out.push(WidthCheck { i, j, k, width: w, bound: bound.clone(), pass });
            }
        }
    }
    Ok(out)
}

/// `sp_N(V_i) ≥ 2N − εTL` for every user and `N = 1..=D` (block sparsity
/// when `T > 1`).
pub fn check_sparsity_requirement(inst: &ChannelInstance, scheme: &Scheme) -> Result<Vec<SparsityCheck>> {
    let (_, eps) = lemma_preconditions(inst, scheme)?;
    let tl = Rational::from_integer((inst.ambient_dim() as i64).into());
    let mut out = Vec::new();
    for (i, v) in scheme.subspaces().iter().enumerate() {
        for r in sparsity_profile(v, inst.l(), inst.t())? {
            let bound = Rational::from_integer((2 * r.n as i64).into()) - &eps * &tl;
            let meets = |s: SparsityValue| match s {
                SparsityValue::Infinite => true,
                SparsityValue::Finite(x) => Rational::from_integer((x as i64).into()) >= bound,
            };
            out.push(SparsityCheck {
                i,
                n: r.n,
                sp: r.value,
                sp_lower: r.lower_bound,
                pass: meets(r.value),
                certified: meets(r.lower_bound),
                bound,
            });
        }
    }
    Ok(out)
}
