//! Canonical subspaces of an ambient rational space, diagonal maps with
//! block structure, and coordinate / block projections.
//!
//! A [`Subspace`] always stores the reduced row echelon basis of its row
//! span, so two values compare equal exactly when they span the same space.
//! Coordinate indices are 0-based throughout.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::echelon;
use crate::error::{input, Error, Result};
use crate::rational::{self, Rational};

/// Default ceiling on the ambient dimension of a [`Subspace`].
pub const DEFAULT_MAX_AMBIENT_DIM: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self.basis.iter().map(|r| rational::vec_to_text(r)).collect();
        f.debug_struct("Subspace").field("ambient", &self.ambient).field("basis", &rows).finish()
    }
}

impl Subspace {
    /// RREF basis of the row span of `rows` inside a space of dimension
    /// `ambient_dim`.
    pub fn canonicalize(rows: &[Vec<Rational>], ambient_dim: usize) -> Result<Self> {
        Self::canonicalize_with_limit(rows, ambient_dim, DEFAULT_MAX_AMBIENT_DIM)
    }

    pub fn canonicalize_with_limit(rows: &[Vec<Rational>], ambient_dim: usize, max_ambient: usize) -> Result<Self> {
        if ambient_dim == 0 {
            return input("ambient dimension must be positive");
        }
        if ambient_dim > max_ambient {
            return Err(Error::Capacity(format!("ambient dimension {ambient_dim} exceeds the limit {max_ambient}")));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != ambient_dim) {
            return input(format!("row of length {} in ambient dimension {ambient_dim}", bad.len()));
        }
        Ok(Self::span_unchecked(rows, ambient_dim))
    }

    /// Convenience constructor from small integer rows.
    pub fn from_int_rows(rows: &[Vec<i64>], ambient_dim: usize) -> Result<Self> {
        let rows: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| rational::int(x)).collect()).collect();
        Self::canonicalize(&rows, ambient_dim)
    }

    pub(crate) fn span_unchecked(rows: &[Vec<Rational>], ambient: usize) -> Self {
        let ints = rows.iter().map(|r| echelon::integer_row(r)).collect();
        let (reduced, pivots) = echelon::rref(ints, ambient);
        Subspace { ambient, basis: echelon::to_unit_pivot(&reduced, &pivots), pivots }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient: ambient_dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim).map(|i| unit(ambient_dim, i)).collect();
        Subspace { ambient: ambient_dim, basis, pivots: (0..ambient_dim).collect() }
    }

    /// `R^S`: all vectors vanishing outside the index set `s`.
    pub fn coordinate(s: &[usize], ambient_dim: usize) -> Result<Self> {
        if let Some(&i) = s.iter().find(|&&i| i >= ambient_dim) {
            return input(format!("coordinate {i} out of range for ambient dimension {ambient_dim}"));
        }
        let mut idx: Vec<usize> = s.to_vec();
        idx.sort_unstable();
        idx.dedup();
        let basis = idx.iter().map(|&i| unit(ambient_dim, i)).collect();
        Ok(Subspace { ambient: ambient_dim, basis, pivots: idx })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    fn same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return input(format!("ambient mismatch: {} vs {}", self.ambient, other.ambient));
        }
        Ok(())
    }

    /// `V + W`.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        if other.is_zero() || self.is_full() {
            return Ok(self.clone());
        }
        if self.is_zero() || other.is_full() {
            return Ok(other.clone());
        }
        let rows: Vec<Vec<Rational>> = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Self::span_unchecked(&rows, self.ambient))
    }

    /// `V ∩ W` by the Zassenhaus construction: reduce `[V V; W 0]` and read
    /// the intersection off the rows whose left half vanishes.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        if self.is_zero() || other.is_full() {
            return Ok(self.clone());
        }
        if other.is_zero() || self.is_full() {
            return Ok(other.clone());
        }
        let n = self.ambient;
        let zeros = vec![Rational::zero(); n];
        let mut stacked: Vec<Vec<Rational>> = Vec::with_capacity(self.dim() + other.dim());
        for r in &self.basis {
            stacked.push(r.iter().chain(r.iter()).cloned().collect());
        }
        for r in &other.basis {
            stacked.push(r.iter().chain(zeros.iter()).cloned().collect());
        }
        let ints = stacked.iter().map(|r| echelon::integer_row(r)).collect();
        let (reduced, pivots) = echelon::rref(ints, 2 * n);
        let right: Vec<Vec<Rational>> = echelon::to_unit_pivot(&reduced, &pivots)
            .into_iter()
            .zip(&pivots)
            .filter(|(_, &p)| p >= n)
            .map(|(row, _)| row[n..].to_vec())
            .collect();
        Ok(Self::span_unchecked(&right, n))
    }

    /// Membership test for a single vector.
    pub fn contains(&self, x: &[Rational]) -> Result<bool> {
        if x.len() != self.ambient {
            return input(format!("vector of length {} in ambient dimension {}", x.len(), self.ambient));
        }
        let mut residual = x.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if residual[p].is_zero() {
                continue;
            }
            let c = residual[p].clone();
            for (r, b) in residual.iter_mut().zip(row) {
                if !b.is_zero() {
                    *r -= &c * b;
                }
            }
        }
        Ok(residual.iter().all(Zero::is_zero))
    }

    /// `W ⊆ V`.
    pub fn contains_subspace(&self, w: &Subspace) -> Result<bool> {
        self.same_ambient(w)?;
        for row in &w.basis {
            if !self.contains(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Image `{Mx : x ∈ V}` under an invertible diagonal map.
    pub fn apply(&self, m: &DiagMap) -> Result<Subspace> {
        if m.dim() != self.ambient {
            return input(format!("map acts on dimension {} but subspace lives in {}", m.dim(), self.ambient));
        }
        // Scaling columns keeps the echelon pattern; renormalise each pivot.
        let basis = self
            .basis
            .iter()
            .zip(&self.pivots)
            .map(|(row, &p)| {
                let scale = m.coefficient(p).recip();
                row.iter()
                    .enumerate()
                    .map(|(c, x)| if x.is_zero() { Rational::zero() } else { x * m.coefficient(c) * &scale })
                    .collect()
            })
            .collect();
        Ok(Subspace { ambient: self.ambient, basis, pivots: self.pivots.clone() })
    }

    /// Restriction of every vector to the given coordinates, as a subspace of
    /// `R^{coords.len()}`. With a block projection this is `P_k V`.
    pub fn project(&self, coords: &[usize]) -> Result<Subspace> {
        if let Some(&c) = coords.iter().find(|&&c| c >= self.ambient) {
            return input(format!("coordinate {c} out of range"));
        }
        if coords.is_empty() {
            return input("projection onto an empty coordinate set");
        }
        let rows: Vec<Vec<Rational>> =
            self.basis.iter().map(|r| coords.iter().map(|&c| r[c].clone()).collect()).collect();
        Ok(Self::span_unchecked(&rows, coords.len()))
    }

    /// Coordinates on which some vector of the subspace is nonzero.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ambient).filter(|&c| self.basis.iter().any(|r| !r[c].is_zero())).collect()
    }

    pub fn to_text_rows(&self) -> Vec<Vec<String>> {
        self.basis.iter().map(|r| rational::vec_to_text(r)).collect()
    }

    /// JSON array of row arrays of `"p/q"` strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_text_rows()).expect("strings serialize")
    }

    pub fn from_json(value: &serde_json::Value, ambient_dim: usize) -> Result<Self> {
        let rows: Vec<Vec<String>> = serde_json::from_value(value.clone())?;
        let rows = rows.iter().map(|r| rational::parse_vec(r)).collect::<Result<Vec<_>>>()?;
        Self::canonicalize(&rows, ambient_dim)
    }
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

/// Invertible diagonal map `I_T ⊗ diag(h_1, ..., h_L)` on `R^{TL}`.
///
/// Coordinate `c` is scaled by `entries[c % L]`, so coordinates `{L*i + k}`
/// for `i = 0..T` share the coefficient of coherence period `k`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiagMap {
    l: usize,
    t: usize,
    #[serde(with = "rational::serde_text::vec")]
    entries: Vec<Rational>,
}

impl fmt::Debug for DiagMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiagMap(t={}, {:?})", self.t, rational::vec_to_text(&self.entries))
    }
}

impl DiagMap {
    /// Lifts per-period coefficients to the block map `I_T ⊗ diag(entries)`.
    pub fn block_lift(entries: Vec<Rational>, t: usize) -> Result<Self> {
        if entries.is_empty() {
            return input("a diagonal map needs at least one coefficient");
        }
        if t == 0 {
            return input("coherence length must be positive");
        }
        if let Some(i) = entries.iter().position(Zero::is_zero) {
            return input(format!("coefficient {i} is zero; the map would not be invertible"));
        }
        Ok(DiagMap { l: entries.len(), t, entries })
    }

    /// Plain `diag(entries)` (coherence length one).
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        Self::block_lift(entries, 1)
    }

    pub fn from_ints(entries: &[i64], t: usize) -> Result<Self> {
        Self::block_lift(entries.iter().map(|&x| rational::int(x)).collect(), t)
    }

    pub fn identity(l: usize, t: usize) -> Self {
        DiagMap { l, t, entries: vec![Rational::one(); l] }
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Dimension of the space the map acts on, `T·L`.
    pub fn dim(&self) -> usize {
        self.l * self.t
    }

    /// Per-period coefficients.
    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    /// Diagonal entry of the acting matrix at coordinate `c`.
    pub fn coefficient(&self, c: usize) -> &Rational {
        &self.entries[c % self.l]
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().all(One::is_one)
    }

    fn same_shape(&self, other: &DiagMap) -> Result<()> {
        if self.l != other.l || self.t != other.t {
            return input(format!(
                "diagonal maps of shape (L={}, T={}) and (L={}, T={})",
                self.l, self.t, other.l, other.t
            ));
        }
        Ok(())
    }

    /// Matrix product (entry-wise for diagonal maps).
    pub fn compose(&self, other: &DiagMap) -> Result<DiagMap> {
        self.same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a * b).collect();
        Ok(DiagMap { l: self.l, t: self.t, entries })
    }

    pub fn inverse(&self) -> DiagMap {
        DiagMap { l: self.l, t: self.t, entries: self.entries.iter().map(|x| x.recip()).collect() }
    }

    /// Integer power; negative exponents use the inverse.
    pub fn pow(&self, e: i64) -> DiagMap {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let n = e.unsigned_abs();
        let entries = base.entries.iter().map(|x| num_traits::pow(x.clone(), n as usize)).collect();
        DiagMap { l: self.l, t: self.t, entries }
    }

    pub fn apply_vector(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.dim() {
            return input(format!("vector of length {} for a map on dimension {}", x.len(), self.dim()));
        }
        Ok(x.iter().enumerate().map(|(c, v)| v * self.coefficient(c)).collect())
    }
}

/// `P_k`: selects the `T` coordinates `{L*i + k : i = 0..T}` of coherence
/// period `k` (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockProjection {
    k: usize,
    l: usize,
    t: usize,
}

impl BlockProjection {
    pub fn new(k: usize, l: usize, t: usize) -> Result<Self> {
        if l == 0 || t == 0 {
            return input("block projection needs positive L and T");
        }
        if k >= l {
            return input(format!("period {k} out of range for L = {l}"));
        }
        Ok(BlockProjection { k, l, t })
    }

    pub fn coordinates(&self) -> Vec<usize> {
        (0..self.t).map(|i| self.l * i + self.k).collect()
    }

    pub fn apply(&self, v: &Subspace) -> Result<Subspace> {
        if v.ambient_dim() != self.l * self.t {
            return input(format!(
                "subspace in dimension {} projected with T·L = {}",
                v.ambient_dim(),
                self.l * self.t
            ));
        }
        v.project(&self.coordinates())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn ints(rows: &[&[i64]], n: usize) -> Subspace {
        Subspace::from_int_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), n).unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        let v = ints(&[&[2, 4], &[1, 2]], 2);
        assert_eq!(v.dim(), 1);
        assert_eq!(v.basis(), &[vec![int(1), int(2)]]);
        let id = ints(&[&[1, 0], &[0, 1]], 2);
        assert_eq!(id.basis(), &[vec![int(1), int(0)], vec![int(0), int(1)]]);
        assert_eq!(ints(&[], 3).dim(), 0);
    }

    #[test]
    fn canonicalize_rejects_ragged_rows() {
        let rows = vec![vec![int(1), int(0)], vec![int(1)]];
        assert!(matches!(Subspace::canonicalize(&rows, 2), Err(Error::Input(_))));
    }

    #[test]
    fn ambient_limit_is_enforced() {
        assert!(matches!(Subspace::canonicalize(&[], 65), Err(Error::Capacity(_))));
        assert!(Subspace::canonicalize_with_limit(&[], 65, 80).is_ok());
    }

    #[test]
    fn sum_examples() {
        let e1 = Subspace::coordinate(&[0], 3).unwrap();
        let e2 = Subspace::coordinate(&[1], 3).unwrap();
        assert_eq!(e1.sum(&e2).unwrap(), Subspace::coordinate(&[0, 1], 3).unwrap());
        assert_eq!(e1.sum(&e1).unwrap(), e1);
        let a = ints(&[&[1, 1, 0]], 3);
        let b = ints(&[&[0, 1, 1]], 3);
        assert_eq!(a.sum(&b).unwrap().dim(), 2);
        assert!(e1.sum(&Subspace::zero(2)).is_err());
    }

    #[test]
    fn intersect_examples() {
        let a = Subspace::coordinate(&[0, 1], 3).unwrap();
        let b = Subspace::coordinate(&[1, 2], 3).unwrap();
        assert_eq!(a.intersect(&b).unwrap(), Subspace::coordinate(&[1], 3).unwrap());
        assert_eq!(a.intersect(&a).unwrap(), a);
        let e1 = Subspace::coordinate(&[0], 3).unwrap();
        let e2 = Subspace::coordinate(&[1], 3).unwrap();
        assert!(e1.intersect(&e2).unwrap().is_zero());
        assert!(a.intersect(&Subspace::zero(4)).is_err());
    }

    #[test]
    fn intersect_non_coordinate() {
        // span{(1,1,0),(0,0,1)} ∩ span{(1,0,1),(0,1,0)} = span{(1,1,1)}
        let a = ints(&[&[1, 1, 0], &[0, 0, 1]], 3);
        let b = ints(&[&[1, 0, 1], &[0, 1, 0]], 3);
        assert_eq!(a.intersect(&b).unwrap(), ints(&[&[1, 1, 1]], 3));
    }

    #[test]
    fn apply_examples() {
        let v = ints(&[&[1, 1]], 2);
        assert_eq!(v.apply(&DiagMap::identity(2, 1)).unwrap(), v);
        let m = DiagMap::from_ints(&[2, 3], 1).unwrap();
        let image = v.apply(&m).unwrap();
        assert_eq!(image.basis(), &[vec![int(1), frac(3, 2)]]);
        let e1 = Subspace::coordinate(&[0], 2).unwrap();
        assert_eq!(e1.apply(&m).unwrap(), e1);
        assert!(v.apply(&DiagMap::identity(3, 1)).is_err());
    }

    #[test]
    fn coordinate_examples() {
        let s = Subspace::coordinate(&[0, 2], 3).unwrap();
        assert_eq!(s.basis(), &[vec![int(1), int(0), int(0)], vec![int(0), int(0), int(1)]]);
        assert!(Subspace::coordinate(&[], 3).unwrap().is_zero());
        assert!(Subspace::coordinate(&[0, 1, 2], 3).unwrap().is_full());
        assert!(matches!(Subspace::coordinate(&[3], 3), Err(Error::Input(_))));
    }

    #[test]
    fn contains_examples() {
        let v = Subspace::coordinate(&[0, 1], 2).unwrap();
        assert!(v.contains(&[int(1), int(0)]).unwrap());
        let e1 = Subspace::coordinate(&[0], 2).unwrap();
        assert!(!e1.contains(&[int(1), int(1)]).unwrap());
        assert!(e1.contains(&[int(0), int(0)]).unwrap());
        assert!(e1.contains(&[int(0)]).is_err());
    }

    #[test]
    fn block_lift_and_projection() {
        let m = DiagMap::from_ints(&[5], 2).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.coefficient(0), &int(5));
        assert_eq!(m.coefficient(1), &int(5));
        let p = BlockProjection::new(0, 2, 2).unwrap();
        assert_eq!(p.coordinates(), vec![0, 2]);
        assert!(DiagMap::from_ints(&[1, 0], 1).is_err());
    }

    #[test]
    fn diag_map_algebra() {
        let m = DiagMap::from_ints(&[2, -3], 1).unwrap();
        assert!(m.compose(&m.inverse()).unwrap().is_identity());
        assert_eq!(m.pow(-2).entries(), &[frac(1, 4), frac(1, 9)]);
        assert_eq!(m.pow(0), DiagMap::identity(2, 1));
    }
}
