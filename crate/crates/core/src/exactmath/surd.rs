//! Elements `a + b·√d` of a real quadratic field, with exact sign and
//! certified decimal rendering.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{format_decimal, ten_pow_neg, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct QuadSurd {
    rational: Rational,
    coeff: Rational,
    radicand: Rational,
}

impl QuadSurd {
    /// `a + b·√d`; panics for negative `d`.
    pub fn new(a: Rational, b: Rational, d: Rational) -> Self {
        assert!(!d.is_negative(), "negative radicand");
        if b.is_zero() || d.is_zero() {
            return Self::rational(a);
        }
        if let Some(r) = rational_sqrt(&d) {
            return Self::rational(a + b * r);
        }
        let (c, m) = squarefree(&d);
        QuadSurd {
            rational: a,
            coeff: b * c,
            radicand: m,
        }
    }

    pub fn rational(a: Rational) -> Self {
        QuadSurd {
            rational: a,
            coeff: Rational::zero(),
            radicand: Rational::zero(),
        }
    }

    /// `√d`.
    pub fn sqrt(d: Rational) -> Self {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeff.is_zero().then_some(&self.rational)
    }

    pub fn parts(&self) -> (&Rational, &Rational, &Rational) {
        (&self.rational, &self.coeff, &self.radicand)
    }

    fn field(&self, other: &Self) -> Rational {
        match (self.coeff.is_zero(), other.coeff.is_zero()) {
            (true, _) => other.radicand.clone(),
            (_, true) => self.radicand.clone(),
            _ => {
                assert_eq!(self.radicand, other.radicand, "surds from different fields");
                self.radicand.clone()
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = self.field(other);
        Self::new(
            &self.rational + &other.rational,
            &self.coeff + &other.coeff,
            d,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        QuadSurd {
            rational: -&self.rational,
            coeff: -&self.coeff,
            radicand: self.radicand.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.field(other);
        let a = &self.rational * &other.rational + &self.coeff * &other.coeff * &d;
        let b = &self.rational * &other.coeff + &self.coeff * &other.rational;
        Self::new(a, b, d)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(&self.rational * c, &self.coeff * c, self.radicand.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::rational(Rational::one()), |acc, _| acc.mul(self))
    }

    pub fn signum(&self) -> Ordering {
        let a = &self.rational;
        let b = &self.coeff;
        if b.is_zero() {
            return a.cmp(&Rational::zero());
        }
        let a_sq = a * a;
        let b_sq_d = b * b * &self.radicand;
        match (a.is_negative(), b.is_negative()) {
            (false, false) => Ordering::Greater,
            (true, true) => Ordering::Less,
            (false, true) => a_sq.cmp(&b_sq_d),
            (true, false) => b_sq_d.cmp(&a_sq),
        }
    }

    /// Exact comparison; both values must live in a common field or be
    /// rational.
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        self.sub(other).signum()
    }

    /// Rational interval `[lo, hi]` of width at most `10^-digits` (times
    /// `|b|`) containing the value.
    pub fn enclose(&self, digits: usize) -> (Rational, Rational) {
        if self.coeff.is_zero() {
            return (self.rational.clone(), self.rational.clone());
        }
        let (slo, shi) = sqrt_bounds(&self.radicand, digits);
        let x = &self.rational + &self.coeff * &slo;
        let y = &self.rational + &self.coeff * &shi;
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    }

    /// Rational within `10^-digits` of the value.
    pub fn approx(&self, digits: usize) -> Rational {
        let scale = self.coeff.abs().ceil().to_integer().to_string().len();
        self.enclose(digits + scale + 1).0
    }

    pub fn to_f64(&self) -> f64 {
        super::to_f64(&self.approx(20))
    }

    /// Decimal string rounded like [`format_decimal`], exact: precision grows
    /// until the enclosure pins down the rounded digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        if let Some(r) = self.as_rational() {
            return format_decimal(r, digits);
        }
        let mut extra = 10;
        loop {
            let (lo, hi) = self.enclose(digits + extra);
            let a = format_decimal(&lo, digits);
            if a == format_decimal(&hi, digits) {
                return a;
            }
            extra *= 2;
        }
    }
}

impl fmt::Debug for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use super::format_rational as fr;
        if self.coeff.is_zero() {
            write!(f, "{}", fr(&self.rational))
        } else {
            write!(
                f,
                "{} + {}*sqrt({})",
                fr(&self.rational),
                fr(&self.coeff),
                fr(&self.radicand)
            )
        }
    }
}

fn rational_sqrt(d: &Rational) -> Option<Rational> {
    let n = d.numer().sqrt();
    let m = d.denom().sqrt();
    (&n * &n == *d.numer() && &m * &m == *d.denom()).then(|| Rational::new(n, m))
}

/// `[s/10^k, (s+1)/10^k]` containing `√d`.
fn sqrt_bounds(d: &Rational, digits: usize) -> (Rational, Rational) {
    let scale = num_traits::pow(BigInt::from(10), 2 * digits);
    let scaled = (d * Rational::from_integer(scale)).floor().to_integer();
    let s = scaled.sqrt();
    let unit = ten_pow_neg(digits);
    let lo = Rational::from_integer(s) * &unit;
    let hi = &lo + &unit;
    (lo, hi)
}

// √(p/q) = (c/q)·√m with m = pq/c² squarefree. After removing every prime
// up to the cube root of what is left, the remainder has at most two prime
// factors, so it is either a square or squarefree. Products beyond u128 are
// left unreduced.
fn squarefree(d: &Rational) -> (Rational, Rational) {
    let pq = d.numer() * d.denom();
    let Some(mut rest) = pq.to_u128() else {
        return (
            Rational::new(BigInt::one(), d.denom().clone()),
            Rational::from_integer(pq),
        );
    };
    let (mut c, mut free): (u128, u128) = (1, 1);
    let mut i: u128 = 2;
    while i * i * i <= rest {
        let mut e = 0;
        while rest % i == 0 {
            rest /= i;
            e += 1;
        }
        c *= i.pow(e / 2);
        if e % 2 == 1 {
            free *= i;
        }
        i += 1;
    }
    let r = rest.sqrt();
    if r * r == rest {
        c *= r;
    } else {
        free *= rest;
    }
    (
        Rational::new(BigInt::from(c), d.denom().clone()),
        Rational::from_integer(BigInt::from(free)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};

    #[test]
    fn perfect_squares_fold() {
        let s = QuadSurd::sqrt(rat(25, 36));
        assert_eq!(s.as_rational(), Some(&rat(5, 6)));
    }

    #[test]
    fn sqrt_two_properties() {
        let r2 = QuadSurd::sqrt(int(2));
        assert_eq!(r2.mul(&r2).as_rational(), Some(&int(2)));
        assert_eq!(r2.to_decimal(6), "1.414214");
        assert_eq!(r2.signum(), Ordering::Greater);
        let x = QuadSurd::new(int(3), int(-2), int(2)); // 3 - 2√2 > 0
        assert_eq!(x.signum(), Ordering::Greater);
        let y = QuadSurd::new(int(-3), int(2), int(2)); // -3 + 2√2 < 0
        assert_eq!(y.signum(), Ordering::Less);
        assert!((x.to_f64() - (3.0 - 2.0 * 2f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn enclosure_contains_value() {
        let x = QuadSurd::new(rat(1, 3), rat(-7, 2), rat(5, 3));
        let (lo, hi) = x.enclose(30);
        assert!(lo <= hi);
        assert!(&hi - &lo <= rat(4, 1) * ten_pow_neg(30));
        let f = x.to_f64();
        assert!(super::super::to_f64(&lo) <= f + 1e-15 && f - 1e-15 <= super::super::to_f64(&hi));
    }

    #[test]
    fn radicand_is_squarefree_integer() {
        let s = QuadSurd::sqrt(rat(3, 25));
        assert_eq!(s.parts(), (&int(0), &rat(1, 5), &int(3)));
        let t = QuadSurd::sqrt(rat(8, 3));
        assert_eq!(t.parts(), (&int(0), &rat(2, 3), &int(6)));
        assert_eq!(s.add(&QuadSurd::sqrt(int(12))).parts().1, &rat(11, 5));
        let big = QuadSurd::sqrt(int(2 * 1_000_003 * 1_000_003));
        assert_eq!(big.parts().1, &int(1_000_003));
    }
}
