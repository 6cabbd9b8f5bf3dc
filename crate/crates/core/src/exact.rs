//! Small helpers for exact rational arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::ToPrimitive;

/// Nearest integer, halves rounded up.
pub fn round_half_up(x: &BigRational) -> BigInt {
    let two = BigInt::from(2);
    let num = x.numer() * &two + x.denom();
    let den = x.denom() * two;
    num.div_floor(&den)
}

/// `round(num / den)` with halves rounded up; `den > 0`.
pub fn round_div(num: i128, den: i128) -> i128 {
    debug_assert!(den > 0);
    (2 * num + den).div_euclid(2 * den)
}

pub fn big(r: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

pub fn big_int(v: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Exact area from a twice-area integer.
pub fn half(twice: i128) -> BigRational {
    BigRational::new(BigInt::from(twice), BigInt::from(2))
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parses a decimal literal (`1.25`, `-3`) or a fraction (`3/4`). Exponents
/// are not accepted.
pub fn parse_ratio(s: &str) -> Option<Rational64> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().ok()?;
        let d: i64 = d.trim().parse().ok()?;
        return (d != 0).then(|| Rational64::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    if frac_part.len() > 15 {
        return None;
    }
    let den = 10i64.pow(frac_part.len() as u32);
    let int_v: i64 = if int_part.is_empty() {
        0
    } else {
        int_part.parse().ok()?
    };
    let frac_v: i64 = if frac_part.is_empty() {
        0
    } else {
        frac_part.parse().ok()?
    };
    let v = Rational64::new(int_v.checked_mul(den)?.checked_add(frac_v)?, den);
    Some(if neg { -v } else { v })
}
