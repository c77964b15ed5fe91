//! Fraction-free row reduction over the integers.
//!
//! Rational rows are scaled to primitive integer rows before elimination.
//! Every elimination step is followed by division by the row content, which
//! keeps entry sizes close to the size of the minors involved.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::Rational;

/// Scales a rational row by the lcm of its denominators and divides out the
/// content. Zero rows stay zero.
pub(crate) fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in row {
        if !x.denom().is_one() {
            lcm = lcm.lcm(x.denom());
        }
    }
    let mut out: Vec<BigInt> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    make_primitive(&mut out);
    out
}

/// Divides the row by the gcd of its entries and makes the leading nonzero
/// entry positive.
pub(crate) fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
    }
    if g.is_zero() {
        return;
    }
    let lead_negative = row.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    if lead_negative {
        g = -g;
    }
    if !g.is_one() {
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x = &*x / &g;
            }
        }
    }
}

fn is_zero_row(row: &[BigInt]) -> bool {
    row.iter().all(Zero::is_zero)
}

/// Reduced row echelon form of integer rows. Returns the nonzero rows, each
/// primitive with a positive pivot, and zero in every other row's pivot
/// column, together with the pivot columns (strictly increasing).
pub(crate) fn rref(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    rows.retain(|r| !is_zero_row(r));
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        // smallest nonzero entry in the column as pivot to limit growth
        let pick = (rank..rows.len()).filter(|&i| !rows[i][col].is_zero()).min_by_key(|&i| rows[i][col].bits());
        let Some(p) = pick else { continue };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank);
        let (pivot_row, tail) = tail.split_first_mut().expect("rank < len");
        for other in head.iter_mut().chain(tail.iter_mut()) {
            eliminate(other, pivot_row, col);
        }
        make_primitive(pivot_row);
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    (rows, pivots)
}

/// `target <- a*target - b*pivot` with `a, b` chosen to clear `target[col]`.
fn eliminate(target: &mut [BigInt], pivot: &[BigInt], col: usize) {
    if target[col].is_zero() {
        return;
    }
    let g = target[col].gcd(&pivot[col]);
    let a = &pivot[col] / &g;
    let b = &target[col] / &g;
    for (t, p) in target.iter_mut().zip(pivot) {
        if p.is_zero() {
            if !t.is_zero() && !a.is_one() {
                *t = &*t * &a;
            }
        } else {
            *t = &*t * &a - p * &b;
        }
    }
    make_primitive(target);
}

/// Converts reduced integer rows to rational rows with unit pivots.
pub(crate) fn to_unit_pivot(rows: &[Vec<BigInt>], pivots: &[usize]) -> Vec<Vec<Rational>> {
    rows.iter()
        .zip(pivots)
        .map(|(row, &p)| {
            let d = &row[p];
            row.iter().map(|x| Rational::new(x.clone(), d.clone())).collect()
        })
        .collect()
}

/// Exact rank over the rationals of integer rows.
pub(crate) fn rank(rows: Vec<Vec<BigInt>>, ncols: usize) -> usize {
    let mut rows = rows;
    rows.retain(|r| !is_zero_row(r));
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let pick = (rank..rows.len()).find(|&i| !rows[i][col].is_zero());
        let Some(p) = pick else { continue };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for other in tail.iter_mut() {
            eliminate(other, pivot_row, col);
        }
        rank += 1;
    }
    rank
}

/// Prime used by the modular rank filter: 2^61 - 1.
pub(crate) const MOD_P: u64 = (1u64 << 61) - 1;

pub(crate) fn reduce_mod_p(x: &BigInt) -> u64 {
    let p = BigInt::from(MOD_P);
    x.mod_floor(&p).to_u64().expect("reduced below p")
}

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MOD_P as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

/// Rank over GF(p). Never exceeds the rank over the rationals, so a small
/// modular rank is only a hint, a large one is a certificate.
pub(crate) fn rank_mod_p(mut rows: Vec<Vec<u64>>, ncols: usize) -> usize {
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else { continue };
        rows.swap(rank, p);
        let inv = pow_mod(rows[rank][col], MOD_P - 2);
        for i in rank + 1..rows.len() {
            let f = rows[i][col];
            if f == 0 {
                continue;
            }
            let factor = mul_mod(f, inv);
            let (top, rest) = rows.split_at_mut(i);
            for (x, &p) in rest[0][col..ncols].iter_mut().zip(&top[rank][col..ncols]) {
                *x = (*x + MOD_P - mul_mod(factor, p)) % MOD_P;
            }
        }
        rank += 1;
    }
    rank
}
