//! Exact arithmetic: rationals, polynomials in the parameter `k`, rational
//! functions, PSD certification and real-root isolation.

mod poly;
mod psd;
mod ratfunc;
mod sturm;
mod surd;

pub use poly::KPolynomial;
pub use psd::{psd_check, LdlWitness, PsdVerdict, SymMatrix};
pub use ratfunc::RatFunc;
pub use sturm::{
    count_roots_above, isolate_largest_real_root, nonneg_on_ray, positive_on_ray, RootBracket,
    SturmSequence,
};
pub use surd::QuadSurd;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational, always normalised with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, an integer, or a plain decimal such as `"-0.97212"`.
/// Decimals become exact rationals with a power-of-ten denominator.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Number(s.to_string());
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole
        .chars()
        .chain(frac.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{whole}{frac}");
    let num: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| bad())?
    };
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let r = Rational::new(num, den);
    Ok(if neg { -r } else { r })
}

/// `"p/q"`, or `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Decimal rendering rounded to `digits` places, ties to even (the rule
/// `printf` applies to exactly representable values).
pub fn format_decimal(r: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = r.abs() * Rational::from_integer(scale.clone());
    let floor = scaled.floor();
    let rest = &scaled - &floor;
    let mut rounded = floor.to_integer();
    let half = rat(1, 2);
    if rest > half || (rest == half && rounded.is_odd()) {
        rounded += 1;
    }
    let neg = r.is_negative() && !rounded.is_zero();
    let int_part = &rounded / &scale;
    let frac_part = &rounded % &scale;
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!(
            "{sign}{int_part}.{:0>width$}",
            frac_part.to_string(),
            width = digits
        )
    }
}

/// `10^-digits` as a rational.
pub fn ten_pow_neg(digits: usize) -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), digits))
}
