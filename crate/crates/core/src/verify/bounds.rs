//! Closed-form degrees-of-freedom curves and lower bounds on the diversity.
//!
//! Values involving roots are carried as rational intervals whose endpoints
//! are decimal truncations, so comparisons against them can be made
//! conservative.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Serialize, Serializer};

use crate::error::{input, Result};
use crate::rational::{self, frac, int, Rational, Rounding};

/// Significant digits printed for inexact bounds.
pub const SIG_DIGITS: usize = 50;

/// Decimal digits kept after the point when bracketing roots.
const ROOT_DIGITS: u32 = 70;

/// Closed rational interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn exact(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn exact_value(&self) -> Option<&Rational> {
        self.is_exact().then_some(&self.lo)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let p = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = p.iter().min().expect("four products").clone();
        let hi = p.iter().max().expect("four products").clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, c: &Rational) -> Interval {
        self.mul(&Interval::exact(c.clone()))
    }

    /// Reciprocal of an interval not containing zero.
    pub fn recip(&self) -> Interval {
        assert!(self.lo.is_positive() || self.hi.is_negative(), "reciprocal of an interval containing 0");
        Interval { lo: self.hi.recip(), hi: self.lo.recip() }
    }

    pub fn min(&self, o: &Interval) -> Interval {
        Interval { lo: self.lo.clone().min(o.lo.clone()), hi: self.hi.clone().min(o.hi.clone()) }
    }

    /// Bracket of the real `n`-th root of a nonnegative rational.
    pub fn nth_root(x: &Rational, n: u32) -> Interval {
        assert!(!x.is_negative() && n >= 1);
        let scale = num_traits::pow(BigInt::from(10), ROOT_DIGITS as usize);
        let scaled = x.numer() * num_traits::pow(scale.clone(), n as usize) / x.denom();
        let r = scaled.nth_root(n);
        let lo = Rational::new(r.clone(), scale.clone());
        if num_traits::pow(lo.clone(), n as usize) == *x {
            return Interval::exact(lo);
        }
        Interval { lo, hi: Rational::new(r + BigInt::one(), scale) }
    }

    /// Value text: `"p/q"` when exact, otherwise decimal endpoints.
    fn describe(&self) -> serde_json::Value {
        match self.exact_value() {
            Some(v) => serde_json::json!({ "exact": true, "value": rational::to_text(v) }),
            None => serde_json::json!({
                "exact": false,
                "lower": rational::to_decimal(&self.lo, SIG_DIGITS, Rounding::Down),
                "upper": rational::to_decimal(&self.hi, SIG_DIGITS, Rounding::Up),
            }),
        }
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.describe().serialize(s)
    }
}

/// Whether `x ≤ value` is certain, i.e. `x` does not exceed the lower end.
pub fn certainly_at_most(x: &Rational, bound: &Interval) -> bool {
    x <= &bound.lo
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundTable {
    pub k: usize,
    pub l: usize,
    pub t: usize,
    /// Three-user optimum `(3/2)(1 − 1/(4L − 2⌊L/2⌋ − 1))`; `K = 3` only.
    pub bresler_eq1: Option<Interval>,
    /// Achievable `(K/2)(1 − C·N/(L/2)^{1/N})`, `N = (K−1)(K−2) − 1`.
    pub cj_eq2: Interval,
    #[serde(with = "rational::serde_text")]
    pub cj_c: Rational,
    pub cj_n: usize,
    /// `(K/2)(1 − 1/(11√L))`, `K ≥ 4`.
    pub thm1: Option<Interval>,
    /// `(K/2)(1 − 1/(20√L))`, `K ≥ 4`.
    pub thm2: Option<Interval>,
    /// `(K/2)(1 − 2^-17 min{L^{-1/4}, 2^{M/4}/√L})`, `K ≥ 4`.
    pub thm3: Option<Interval>,
    #[serde(with = "rational::serde_text::option")]
    pub eps: Option<Rational>,
    /// `ε^-2 / 121`.
    pub thm4_l_min: Option<Interval>,
    /// `ε^-2 / 400`.
    pub thm5_l_min: Option<Interval>,
    /// `2^-34 ε^-2 min{2^{M/2}, ε^-2}`, `M = (K−2)(K−3)`.
    pub thm6_l_min: Option<Interval>,
    pub m: usize,
}

fn half_k(k: usize) -> Rational {
    frac(k as i64, 2)
}

pub fn eq1(l: usize) -> Rational {
    let l = l as i64;
    frac(3, 2) * (int(1) - frac(1, 4 * l - 2 * (l / 2) - 1))
}

pub fn eq2(k: usize, l: usize, c: &Rational) -> (Interval, usize) {
    let n = (k - 1) * (k - 2) - 1;
    let root = Interval::nth_root(&frac(l as i64, 2), n as u32);
    let gap = root.recip().scale(&(c * int(n as i64)));
    (Interval::exact(int(1)).sub(&gap).scale(&half_k(k)), n)
}

fn sqrt_l_gap(k: usize, l: usize, denom: i64) -> Interval {
    let sqrt_l = Interval::nth_root(&int(l as i64), 2);
    let gap = sqrt_l.scale(&int(denom)).recip();
    Interval::exact(int(1)).sub(&gap).scale(&half_k(k))
}

pub fn thm1(k: usize, l: usize) -> Interval {
    sqrt_l_gap(k, l, 11)
}

pub fn thm2(k: usize, l: usize) -> Interval {
    sqrt_l_gap(k, l, 20)
}

pub fn thm3(k: usize, l: usize) -> Interval {
    let m = (k - 2) * (k - 3);
    let quarter = Interval::nth_root(&int(l as i64), 4).recip();
    let two_pow = Interval::nth_root(&Rational::from_integer(num_traits::pow(BigInt::from(2), m)), 4);
    let second = two_pow.mul(&Interval::nth_root(&int(l as i64), 2).recip());
    let gap = quarter.min(&second).scale(&frac(1, 1 << 17));
    Interval::exact(int(1)).sub(&gap).scale(&half_k(k))
}

fn inv_sq(eps: &Rational) -> Rational {
    (eps * eps).recip()
}

pub fn thm4_l_min(eps: &Rational) -> Rational {
    inv_sq(eps) / int(121)
}

pub fn thm5_l_min(eps: &Rational) -> Rational {
    inv_sq(eps) / int(400)
}

/// `M` is even for every `K`, so `2^{M/2}` is an integer.
pub fn thm6_l_min(eps: &Rational, m: usize) -> Rational {
    let two_half_m = Rational::from_integer(num_traits::pow(BigInt::from(2), m / 2));
    let scale = Rational::new(BigInt::one(), num_traits::pow(BigInt::from(2), 34));
    scale * inv_sq(eps) * two_half_m.min(inv_sq(eps))
}

/// Evaluates every curve at `(K, L, T)`; `eps` feeds the diversity lower
/// bounds and `c` the achievability curve.
pub fn eval_bounds(k: usize, l: usize, t: usize, eps: Option<&Rational>, c: &Rational) -> Result<BoundTable> {
    if k < 3 {
        return input(format!("bounds need K ≥ 3, got {k}"));
    }
    if l == 0 || t == 0 {
        return input("L and T must be positive");
    }
    let m = (k - 2) * (k - 3);
    let (cj_eq2, cj_n) = eq2(k, l, c);
    let positive_eps = eps.filter(|e| e.is_positive());
    let four = k >= 4;
    Ok(BoundTable {
        k,
        l,
        t,
        bresler_eq1: (k == 3).then(|| Interval::exact(eq1(l))),
        cj_eq2,
        cj_c: c.clone(),
        cj_n,
        thm1: four.then(|| thm1(k, l)),
        thm2: four.then(|| thm2(k, l)),
        thm3: four.then(|| thm3(k, l)),
        eps: eps.cloned(),
        thm4_l_min: positive_eps.map(|e| Interval::exact(thm4_l_min(e))),
        thm5_l_min: positive_eps.map(|e| Interval::exact(thm5_l_min(e))),
        thm6_l_min: positive_eps.filter(|_| four).map(|e| Interval::exact(thm6_l_min(e, m))),
        m,
    })
}

/// Outcome of comparing a measured DoF with the applicable upper bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Consistency {
    pub consistent: bool,
    /// Names of bounds the value is not certainly below.
    pub violated: Vec<String>,
    /// Names of bounds that were compared.
    pub applied: Vec<String>,
}

/// Checks `dof` against Eq. 1 (`K = 3`, `T = 1`), the fast-fading bound
/// (`K ≥ 4`, `T = 1`) and the two block-fading bounds (`K ≥ 4`).
pub fn check_consistency(dof: &Rational, table: &BoundTable) -> Consistency {
    let mut candidates: Vec<(&str, &Interval)> = Vec::new();
    if table.t == 1 {
        if let Some(b) = &table.bresler_eq1 {
            candidates.push(("bresler_eq1", b));
        }
        if let Some(b) = &table.thm1 {
            candidates.push(("thm1", b));
        }
    }
    if let Some(b) = &table.thm2 {
        candidates.push(("thm2", b));
    }
    if let Some(b) = &table.thm3 {
        candidates.push(("thm3", b));
    }
    let violated: Vec<String> =
        candidates.iter().filter(|(_, b)| !certainly_at_most(dof, b)).map(|(n, _)| n.to_string()).collect();
    Consistency {
        consistent: violated.is_empty(),
        violated,
        applied: candidates.iter().map(|(n, _)| n.to_string()).collect(),
    }
}

/// Lower end of an optional bound as a decimal (empty when absent), for
/// tabular output.
pub fn lower_text(b: &Option<Interval>) -> String {
    match b {
        None => String::new(),
        Some(i) => match i.exact_value() {
            Some(v) => rational::to_text(v),
            None => rational::to_decimal(&i.lo, SIG_DIGITS, Rounding::Down),
        },
    }
}

/// `⌊x⌋` for a rational.
pub fn floor(x: &Rational) -> BigInt {
    x.numer().div_floor(x.denom())
}
