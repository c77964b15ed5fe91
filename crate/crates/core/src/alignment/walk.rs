//! Repeated extension along distinct family members, stopping with a single
//! opposite step as soon as the average width would grow too fast.

use num_traits::Zero;
use serde::Serialize;

use super::{average_width, contract, extend, width};
use crate::channel::TFamily;
use crate::error::{input, Error, Result};
use crate::rational::{self, Rational};
use crate::sparsity::{n_sparsity, SparsityValue};
use crate::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WalkMode {
    Extension,
    Contraction,
}

/// How the walk ended. The names follow the extension mode; in contraction
/// mode `ContractionBreak` means the chain was broken by one extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WalkCase {
    ContractionBreak,
    FullExtension,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepOp {
    Extend,
    Contract,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub op: StepOp,
    /// Position of the map in the family.
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WalkResult {
    pub mode: WalkMode,
    pub ambient_dim: usize,
    #[serde(serialize_with = "rows")]
    pub w_tilde: Subspace,
    pub n_tilde: usize,
    /// `2(a_0 + ... + a_{ñ-1})` with `a_0` the average width of the input.
    #[serde(with = "rational::serde_text")]
    pub delta: Rational,
    pub case_tag: WalkCase,
    pub op_sequence: Vec<Step>,
    #[serde(with = "rational::serde_text")]
    pub avg_width_before: Rational,
    #[serde(with = "rational::serde_text")]
    pub avg_width_after: Rational,
}

fn rows<S: serde::Serializer>(v: &Subspace, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.to_text_rows())
}

/// Walks from `w` through family members indexed by `s`.
///
/// At step `i` the smallest remaining index `k` with
/// `Δ_{T_k} W ≤ 2·avg(W)` is chosen. In extension mode, if extending by
/// `T_k` would push the average width above `a[i]`, the walk contracts by
/// `T_k` instead and stops; otherwise it extends and continues without `k`.
/// Contraction mode swaps the two operators.
///
/// Requires `2·|a| ≤ 2·|s| − M`, `a` strictly increasing, and
/// `a[0] > avg(w)`.
pub fn adaptive_walk(
    w: &Subspace,
    family: &TFamily,
    s: &[usize],
    a: &[Rational],
    mode: WalkMode,
) -> Result<WalkResult> {
    if family.is_empty() {
        return input("walk over an empty family");
    }
    let m = family.m();
    let mut remaining: Vec<usize> = s.to_vec();
    remaining.sort_unstable();
    if remaining.windows(2).any(|p| p[0] == p[1]) {
        return input("index set contains duplicates");
    }
    if let Some(&bad) = remaining.iter().find(|&&k| k >= m) {
        return input(format!("index {bad} outside a family of size {m}"));
    }
    if 2 * a.len() + m > 2 * remaining.len() {
        return input(format!("{} thresholds need |S| ≥ {} + M/2, got |S| = {}", a.len(), a.len(), remaining.len()));
    }
    if a.windows(2).any(|p| p[0] >= p[1]) {
        return input("thresholds must be strictly increasing");
    }
    let start_avg = average_width(w, family)?;
    if let Some(a1) = a.first() {
        if *a1 <= start_avg {
            return input(format!(
                "first threshold {} must exceed the average width {}",
                rational::to_text(a1),
                rational::to_text(&start_avg)
            ));
        }
    }

    let mut cur = w.clone();
    let mut cur_avg = start_avg.clone();
    let mut ops = Vec::new();
    let mut case_tag = WalkCase::FullExtension;
    for threshold in a {
        let mut pick = None;
        for (pos, &k) in remaining.iter().enumerate() {
            let wk = Rational::from_integer(width(&cur, family.map(k))?.into());
            if wk <= &cur_avg * Rational::from_integer(2.into()) {
                pick = Some((pos, k));
                break;
            }
        }
        let Some((pos, k)) = pick else {
            return Err(Error::InvariantViolation("no index with width at most twice the average".into()));
        };
        let map = family.map(k);
        let (forward, backward, fwd_op, back_op) = match mode {
            WalkMode::Extension => (extend(&cur, map, 1)?, contract(&cur, map, 1)?, StepOp::Extend, StepOp::Contract),
            WalkMode::Contraction => (contract(&cur, map, 1)?, extend(&cur, map, 1)?, StepOp::Contract, StepOp::Extend),
        };
        let forward_avg = average_width(&forward, family)?;
        if forward_avg > *threshold {
            cur_avg = average_width(&backward, family)?;
            cur = backward;
            ops.push(Step { op: back_op, index: k });
            case_tag = WalkCase::ContractionBreak;
            break;
        }
        cur = forward;
        cur_avg = forward_avg;
        ops.push(Step { op: fwd_op, index: k });
        remaining.remove(pos);
    }

    let n_tilde = ops.len();
    let mut delta = Rational::zero();
    if n_tilde > 0 {
        delta = start_avg.clone() + a[..n_tilde - 1].iter().cloned().sum::<Rational>();
        delta *= Rational::from_integer(2.into());
    }
    let change = (cur.dim() as i64 - w.dim() as i64).abs();
    if Rational::from_integer(change.into()) > delta {
        return Err(Error::InvariantViolation(format!(
            "dimension moved by {change}, more than delta {}",
            rational::to_text(&delta)
        )));
    }
    Ok(WalkResult {
        mode,
        ambient_dim: w.ambient_dim(),
        w_tilde: cur,
        n_tilde,
        delta,
        case_tag,
        op_sequence: ops,
        avg_width_before: start_avg,
        avg_width_after: cur_avg,
    })
}

impl WalkResult {
    /// `avg(W̃) ≤ 2a_{ñ-1} − a_ñ` after a break, `avg(W̃) ≤ a_n` after a full
    /// chain, with `a_0 = avg(W)`.
    pub fn width_guarantee_holds(&self, a: &[Rational]) -> bool {
        let at = |i: usize| if i == 0 { self.avg_width_before.clone() } else { a[i - 1].clone() };
        match self.case_tag {
            WalkCase::ContractionBreak => {
                let n = self.n_tilde;
                self.avg_width_after <= at(n - 1) * Rational::from_integer(2.into()) - at(n)
            }
            WalkCase::FullExtension => self.avg_width_after <= at(a.len()),
        }
    }

    /// `sp_{N+δ}(W̃) ≥ sp_N(W)` for every `N = 1..=dim W`, rounding a
    /// fractional index up.
    pub fn sparsity_guarantee_holds(&self, w: &Subspace, l: usize, t: usize) -> Result<bool> {
        let delta_ceil = self.delta.ceil().to_integer();
        let delta_ceil: usize = delta_ceil.try_into().map_err(|_| Error::Input("delta too large".into()))?;
        for n in 1..=w.dim() {
            let before = n_sparsity(w, n, l, t)?;
            let after = n_sparsity(&self.w_tilde, n + delta_ceil, l, t)?;
            // block values are upper bounds; compare the certified lower one
            let after_value = if after.exact { after.value } else { after.lower_bound };
            let before_value: SparsityValue = before.value;
            if after_value < before_value {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{sample_instance, t_family};
    use crate::rational::{frac, int};
    use crate::subspace::DiagMap;

    #[test]
    fn zero_thresholds_return_input() {
        let w = Subspace::from_int_rows(&[vec![1, 1, 1]], 3).unwrap();
        let fam = TFamily::from_maps(1, vec![DiagMap::from_ints(&[1, 2, 3], 1).unwrap(); 2]).unwrap();
        let r = adaptive_walk(&w, &fam, &[0, 1], &[], WalkMode::Extension).unwrap();
        assert_eq!(r.w_tilde, w);
        assert_eq!(r.n_tilde, 0);
        assert_eq!(r.delta, int(0));
        assert_eq!(r.case_tag, WalkCase::FullExtension);
        assert!(r.op_sequence.is_empty());
    }

    #[test]
    fn identity_family_extends_trivially() {
        let w = Subspace::from_int_rows(&[vec![1, 2, 0, 1]], 4).unwrap();
        let fam = TFamily::from_maps(1, vec![DiagMap::identity(4, 1); 4]).unwrap();
        let a = [frac(1, 2), int(1)];
        let r = adaptive_walk(&w, &fam, &[0, 1, 2, 3], &a, WalkMode::Extension).unwrap();
        assert_eq!(r.case_tag, WalkCase::FullExtension);
        assert_eq!(r.w_tilde, w);
        assert_eq!(r.n_tilde, 2);
        assert_eq!(r.op_sequence.iter().map(|s| s.index).collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn generic_walk_respects_guarantees() {
        let inst = sample_instance(4, 6, 1, 16, 5).unwrap();
        let fam = t_family(&inst, 1).unwrap();
        let w = Subspace::from_int_rows(&[vec![1, 0, 2, 0, 1, 1], vec![0, 1, 1, 3, 0, 2], vec![2, 1, 0, 0, 1, 5]], 6)
            .unwrap();
        let avg = average_width(&w, &fam).unwrap();
        let a = [avg + int(1)];
        for mode in [WalkMode::Extension, WalkMode::Contraction] {
            let r = adaptive_walk(&w, &fam, &[0, 1], &a, mode).unwrap();
            let change = Rational::from_integer(((r.w_tilde.dim() as i64) - 3).abs().into());
            assert!(change <= r.delta);
            assert!(r.width_guarantee_holds(&a));
            assert!(r.sparsity_guarantee_holds(&w, 6, 1).unwrap());
        }
    }

    #[test]
    fn preconditions_are_checked() {
        let w = Subspace::from_int_rows(&[vec![1, 1, 1]], 3).unwrap();
        let fam = TFamily::from_maps(1, vec![DiagMap::from_ints(&[1, 2, 3], 1).unwrap(); 2]).unwrap();
        // |S| too small for one threshold with M = 2
        assert!(adaptive_walk(&w, &fam, &[0], &[int(5)], WalkMode::Extension).is_err());
        // first threshold not above the average width (1)
        assert!(adaptive_walk(&w, &fam, &[0, 1], &[int(1)], WalkMode::Extension).is_err());
        assert!(adaptive_walk(&w, &fam, &[0, 1], &[int(3), int(2)], WalkMode::Extension).is_err());
    }

    #[test]
    fn walk_serializes_sequence() {
        let w = Subspace::from_int_rows(&[vec![1, 1, 1]], 3).unwrap();
        let fam = TFamily::from_maps(1, vec![DiagMap::from_ints(&[1, 2, 3], 1).unwrap(); 2]).unwrap();
        let r = adaptive_walk(&w, &fam, &[0, 1], &[int(2)], WalkMode::Extension).unwrap();
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["op_sequence"].as_array().unwrap().len(), r.n_tilde);
        assert_eq!(j["ambient_dim"], 3);
    }
}
