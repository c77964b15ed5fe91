//! Extension and contraction of subspaces along diagonal maps, alignment
//! widths and their second-order variants.

mod walk;

pub use walk::{adaptive_walk, Step, StepOp, WalkCase, WalkMode, WalkResult};

use serde::Serialize;

use crate::channel::TFamily;
use crate::error::{input, Error, Result};
use crate::rational::{self, Rational};
use crate::subspace::{DiagMap, Subspace};

/// `e_M^n V = V + MV + ... + M^n V`, built one image at a time.
pub fn extend(v: &Subspace, m: &DiagMap, n: usize) -> Result<Subspace> {
    check_dims(v, m)?;
    let mut acc = v.clone();
    let mut image = v.clone();
    for _ in 0..n {
        image = image.apply(m)?;
        let next = acc.sum(&image)?;
        if next == acc {
            break;
        }
        acc = next;
    }
    Ok(acc)
}

/// `c_M^n V = V ∩ MV ∩ ... ∩ M^n V`.
///
/// Uses `c^{i+1} V = c^i V ∩ M(c^i V)`, which holds because `M` is
/// invertible and images distribute over intersections.
pub fn contract(v: &Subspace, m: &DiagMap, n: usize) -> Result<Subspace> {
    check_dims(v, m)?;
    let mut acc = v.clone();
    for _ in 0..n {
        let next = acc.intersect(&acc.apply(m)?)?;
        if next == acc {
            break;
        }
        acc = next;
    }
    Ok(acc)
}

fn check_dims(v: &Subspace, m: &DiagMap) -> Result<()> {
    if v.ambient_dim() != m.dim() {
        return input(format!("subspace in dimension {} with a map on dimension {}", v.ambient_dim(), m.dim()));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WidthReport {
    pub width: usize,
    pub dim_before: usize,
    pub dim_after_extend: usize,
    pub dim_after_contract: usize,
}

/// `Δ_M V`, computed both as `dim e_M V − dim V` and `dim V − dim c_M V`.
pub fn alignment_width(v: &Subspace, m: &DiagMap) -> Result<WidthReport> {
    check_dims(v, m)?;
    let image = v.apply(m)?;
    let e = v.sum(&image)?.dim();
    let c = v.intersect(&image)?.dim();
    let d = v.dim();
    if e + c != 2 * d {
        return Err(Error::InvariantViolation(format!("extension dim {e} and contraction dim {c} around dim {d}")));
    }
    Ok(WidthReport { width: e - d, dim_before: d, dim_after_extend: e, dim_after_contract: c })
}

/// Shortcut for the width alone.
pub fn width(v: &Subspace, m: &DiagMap) -> Result<usize> {
    alignment_width(v, m).map(|r| r.width)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SecondOrderReport {
    /// `Δ_{M1}(e_{M2} V) − Δ_{M1} V`.
    pub ext2: i64,
    /// `Δ_{M1} V − Δ_{M1}(c_{M2} V)`.
    pub con2: i64,
}

/// Second-order widths of `V` along `m1` after one step along `m2`.
pub fn second_order(v: &Subspace, m1: &DiagMap, m2: &DiagMap) -> Result<SecondOrderReport> {
    check_dims(v, m1)?;
    check_dims(v, m2)?;
    let base = width(v, m1)? as i64;
    let ext = width(&extend(v, m2, 1)?, m1)? as i64;
    let con = width(&contract(v, m2, 1)?, m1)? as i64;
    let report = SecondOrderReport { ext2: ext - base, con2: base - con };
    if report.ext2 > report.con2 {
        return Err(Error::InvariantViolation(format!(
            "second-order extension width {} above contraction width {}",
            report.ext2, report.con2
        )));
    }
    Ok(report)
}

/// `(1/M) Σ_j Δ_{T_j} V`.
pub fn average_width(v: &Subspace, family: &TFamily) -> Result<Rational> {
    if family.is_empty() {
        return input("average width over an empty family");
    }
    let mut total = 0usize;
    for m in family.maps() {
        total += width(v, m)?;
    }
    Ok(rational::frac(total as i64, family.m() as i64))
}

/// Span of `{∏ maps[i]^{α_i} x : 0 ≤ α_i ≤ ns[i]}`.
pub fn grid_span(x: &[Rational], maps: &[&DiagMap], ns: &[usize]) -> Result<Subspace> {
    if maps.len() != ns.len() {
        return input(format!("{} maps but {} exponent bounds", maps.len(), ns.len()));
    }
    if maps.iter().any(|m| m.dim() != x.len()) {
        return input("maps and vector disagree on dimension");
    }
    let mut acc = Subspace::canonicalize(&[x.to_vec()], x.len())?;
    for (m, &n) in maps.iter().zip(ns) {
        acc = extend(&acc, m, n)?;
    }
    Ok(acc)
}
