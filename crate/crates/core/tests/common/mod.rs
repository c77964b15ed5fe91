//! Independent reference routines: plain Gaussian elimination over ℚ and
//! exhaustive searches. Nothing here calls into the library's linear algebra.
#![allow(dead_code, clippy::needless_range_loop)]

use ia_workbench::rational::{int, Rational};
use ia_workbench::Subspace;
use num_traits::Zero;

pub fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

/// Rank by textbook elimination with rational pivots.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in c..ncols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

pub fn stack(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    a.iter().chain(b).cloned().collect()
}

pub fn in_span(rows: &[Vec<Rational>], x: &[Rational]) -> bool {
    rank(rows) == rank(&stack(rows, &[x.to_vec()]))
}

/// Whether the row space of `a` lies inside that of `b`.
pub fn span_le(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    rank(b) == rank(&stack(a, b))
}

pub fn sum_dim(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> usize {
    rank(&stack(a, b))
}

pub fn intersection_dim(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> usize {
    rank(a) + rank(b) - sum_dim(a, b)
}

pub fn diag_apply(entries: &[Rational], rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    rows.iter().map(|r| r.iter().zip(entries).map(|(x, e)| x * e).collect()).collect()
}

pub fn basis(v: &Subspace) -> Vec<Vec<Rational>> {
    v.basis().to_vec()
}

/// `dim(V ∩ span{e_s : s ∈ S})` as `dim V − rank(B restricted to the other
/// columns)`.
pub fn dim_on(rows: &[Vec<Rational>], mask: u32, n: usize) -> usize {
    let outside: Vec<Vec<Rational>> =
        rows.iter().map(|r| (0..n).filter(|&c| mask >> c & 1 == 0).map(|c| r[c].clone()).collect()).collect();
    let d = rank(rows);
    if outside.first().is_none_or(|r| r.is_empty()) {
        return d;
    }
    d - rank(&outside)
}

/// Exhaustive `sp_N` for `T = 1`: the least `|S|` over all `2^n` supports.
pub fn brute_sparsity(rows: &[Vec<Rational>], n_target: usize, n: usize) -> Option<usize> {
    (0u32..1 << n).filter(|&mask| dim_on(rows, mask, n) >= n_target).map(|mask| mask.count_ones() as usize).min()
}
