//! Explicit grid witness for the quadratic diversity bound: a dense vector
//! inside a repeated contraction whose two-map grid span is squeezed
//! between its own size and the sparsity of the subspace.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::bounds::floor;
use crate::alignment::{contract, extend, grid_span, width};
use crate::error::{Error, Result};
use crate::rational::{self, frac, int, Rational};
use crate::sparsity::n_sparsity;
use crate::subspace::{DiagMap, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridWitness {
    pub n: usize,
    pub d: usize,
    #[serde(with = "rational::serde_text")]
    pub eps: Rational,
    /// `⌊(D − N)/(2εL)⌋`.
    pub n1: i64,
    /// `⌊(sp_N(V) − 1 − D)/(2εL)⌋`; negative values give an empty grid.
    pub n2: i64,
    pub sp_n: usize,
    #[serde(with = "rational::serde_text::vec")]
    pub x: Vec<Rational>,
    pub x_support: usize,
    /// `dim c^{n1}_{T1^-1} V`.
    pub dim_contracted: usize,
    /// `dim e^{n2}_{T2} V` (when `n2 ≥ 0`).
    pub dim_extended: Option<usize>,
    pub grid_dim: usize,
    /// `grid_dim = min{(n1+1)(n2+1), ‖x‖₀}`.
    pub grid_law_holds: bool,
    /// `sp_N(V) − 1 ≥ (n1+1)(n2+1)`.
    pub inequality_holds: bool,
}

fn precondition<T>(msg: String) -> Result<T> {
    Err(Error::Precondition(msg))
}

/// Vector of maximal support in `u`: `Σ s^i b_i` over the basis, trying
/// `s = 1, 2, ...`. Each coordinate is a nonzero polynomial in `s` of degree
/// below `dim u`, so few values of `s` can fail.
pub fn dense_vector(u: &Subspace) -> Vec<Rational> {
    let target = u.support().len();
    let mut s = 1i64;
    loop {
        let mut x = vec![Rational::zero(); u.ambient_dim()];
        let mut power = int(1);
        for row in u.basis() {
            for (xi, b) in x.iter_mut().zip(row) {
                *xi += &power * b;
            }
            power *= int(s);
        }
        if rational::support_size(&x) == target {
            return x;
        }
        s += 1;
    }
}

/// Runs the two-map construction on `V` with target dimension `n`.
///
/// Requires `dim V = (1 − ε)L/2`, `ε > 0`, `1 ≤ n ≤ dim V`, and widths of
/// `V` under both maps at most `2εL`. The maps act on `R^L` (`T = 1`).
pub fn grid_witness(
    v: &Subspace,
    m1: &DiagMap,
    m2: &DiagMap,
    n: usize,
    eps: &Rational,
    l: usize,
) -> Result<GridWitness> {
    if v.ambient_dim() != l || m1.dim() != l || m2.dim() != l {
        return precondition(format!("expected subspace and maps on R^{l}"));
    }
    if !eps.is_positive() {
        return precondition("eps must be positive".into());
    }
    let d = v.dim();
    let lr = int(l as i64);
    if (int(1) - eps) * &lr / int(2) != int(d as i64) {
        return precondition(format!("dim V = {d} differs from (1 − ε)L/2"));
    }
    if n == 0 || n > d {
        return precondition(format!("N = {n} outside 1..={d}"));
    }
    let cap = int(2) * eps * &lr;
    for (name, m) in [("first", m1), ("second", m2)] {
        let w = width(v, m)?;
        if int(w as i64) > cap {
            return precondition(format!("width {w} under the {name} map exceeds 2εL = {}", rational::to_text(&cap)));
        }
    }

    let sp = n_sparsity(v, n, l, 1)?.value.finite().expect("n ≤ dim V");
    let n1 = floor(&(frac((d - n) as i64, 1) / &cap));
    let n1: i64 = n1.try_into().map_err(|_| Error::Input("n1 out of range".into()))?;
    let n2 = floor(&(int(sp as i64 - 1 - d as i64) / &cap));
    let n2: i64 = n2.try_into().map_err(|_| Error::Input("n2 out of range".into()))?;

    let u = contract(v, &m1.inverse(), n1 as usize)?;
    if u.dim() < n {
        return Err(Error::InvariantViolation(format!("contraction kept dimension {} < N = {n}", u.dim())));
    }
    let x = dense_vector(&u);
    let x_support = rational::support_size(&x);
    if x_support < sp {
        return Err(Error::InvariantViolation(format!("dense vector has support {x_support} < sp_N = {sp}")));
    }
    let line = Subspace::canonicalize(std::slice::from_ref(&x), l)?;
    if !v.contains_subspace(&extend(&line, m1, n1 as usize)?)? {
        return Err(Error::InvariantViolation("extension of the dense vector left V".into()));
    }

    let (grid_dim, dim_extended) = if n2 >= 0 {
        let ext = extend(v, m2, n2 as usize)?;
        let grid = grid_span(&x, &[m1, m2], &[n1 as usize, n2 as usize])?;
        if !ext.contains_subspace(&grid)? {
            return Err(Error::InvariantViolation("grid span escaped the extension of V".into()));
        }
        (grid.dim(), Some(ext.dim()))
    } else {
        (0, None)
    };
    let product = (n1 + 1) * (n2 + 1);
    let grid_law_holds = n2 < 0 || grid_dim as i64 == product.min(x_support as i64);
    Ok(GridWitness {
        n,
        d,
        eps: eps.clone(),
        n1,
        n2,
        sp_n: sp,
        x,
        x_support,
        dim_contracted: u.dim(),
        dim_extended,
        grid_dim,
        grid_law_holds,
        inequality_holds: sp as i64 > product,
    })
}
