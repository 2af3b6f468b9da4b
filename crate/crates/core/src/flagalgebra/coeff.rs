use std::fmt;

use num_traits::{One, Zero};

use crate::exactmath::{format_rational, KPolynomial, RatFunc, Rational};

/// Scalars a flag vector may carry: exact rationals, polynomials in `k`, or
/// rational functions of `k`.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn from_rational(r: Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn render(&self) -> String;
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn render(&self) -> String {
        format_rational(self)
    }
}

impl Coeff for KPolynomial {
    fn zero() -> Self {
        KPolynomial::zero()
    }
    fn from_rational(r: Rational) -> Self {
        KPolynomial::constant(r)
    }
    fn is_zero(&self) -> bool {
        KPolynomial::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, r: &Rational) -> Self {
        KPolynomial::scale(self, r)
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Coeff for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn from_rational(r: Rational) -> Self {
        RatFunc::constant(r)
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, r: &Rational) -> Self {
        RatFunc::scale(self, r)
    }
    fn render(&self) -> String {
        self.to_string()
    }
}
