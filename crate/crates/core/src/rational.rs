//! Exact rational scalars and their textual forms.
//!
//! Every value is a reduced `BigRational` (positive denominator, coprime
//! numerator/denominator). On the wire a rational is the decimal string
//! `"p/q"`, or `"p"` when `q = 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p/q` reduced. Panics if `q == 0`.
pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn to_text(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Input(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Input(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
    }
}

pub fn parse_vec(items: &[String]) -> Result<Vec<Rational>> {
    items.iter().map(|s| parse(s)).collect()
}

pub fn vec_to_text(v: &[Rational]) -> Vec<String> {
    v.iter().map(to_text).collect()
}

/// Number of nonzero entries.
pub fn support_size(v: &[Rational]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

/// Direction used when truncating to a finite decimal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    Down,
    Up,
}

/// Decimal expansion of `r` with `sig` significant digits, rounded toward
/// negative (`Down`) or positive (`Up`) infinity. Exact values with short
/// expansions are printed without trailing zeros.
pub fn to_decimal(r: &Rational, sig: usize, rounding: Rounding) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let abs = r.abs();
    // exponent e with 10^e <= |r| < 10^(e+1)
    let mut e: i64 = (abs.numer().to_string().len() as i64) - (abs.denom().to_string().len() as i64);
    loop {
        let lower = pow10(e);
        if abs < lower {
            e -= 1;
            continue;
        }
        if abs >= pow10(e + 1) {
            e += 1;
            continue;
        }
        break;
    }
    // scale so that sig digits sit left of the point
    let shift = sig as i64 - 1 - e;
    let scaled = r * pow10(shift);
    let floor = scaled.numer().div_floor(scaled.denom());
    let exact = Rational::from_integer(floor.clone()) == scaled;
    let digits_int = match rounding {
        Rounding::Down => floor,
        Rounding::Up if exact => floor,
        Rounding::Up => floor + BigInt::one(),
    };
    let negative = digits_int.is_negative();
    let mut digits = digits_int.abs().to_string();
    let mut point: i64 = digits.len() as i64 - shift;
    if point <= 0 {
        digits = format!("{}{}", "0".repeat((1 - point) as usize), digits);
        point = 1;
    }
    let point = point as usize;
    if digits.len() < point {
        digits.push_str(&"0".repeat(point - digits.len()));
    }
    let (whole, frac_part) = digits.split_at(point);
    let frac_part = frac_part.trim_end_matches('0');
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(whole);
    if !frac_part.is_empty() {
        out.push('.');
        out.push_str(frac_part);
    }
    out
}

fn pow10(e: i64) -> Rational {
    let p = num_traits::pow(BigInt::from(10), e.unsigned_abs() as usize);
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Serde adapters for rationals as `"p/q"` strings.
pub mod serde_text {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_text(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(de::Error::custom)
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(to_text))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            parse_vec(&v).map_err(de::Error::custom)
        }
    }

    pub mod rows {
        use super::*;

        pub fn serialize<S: Serializer>(rows: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
            s.collect_seq(rows.iter().map(|r| vec_to_text(r)))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<Rational>>, D::Error> {
            let v = Vec::<Vec<String>>::deserialize(d)?;
            v.iter().map(|r| parse_vec(r)).collect::<Result<_>>().map_err(de::Error::custom)
        }
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.serialize_some(&to_text(r)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
            let v = Option::<String>::deserialize(d)?;
            v.map(|s| parse(&s)).transpose().map_err(de::Error::custom)
        }
    }
}
