use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{format_rational, int, Rational};

/// Univariate polynomial in `k` with rational coefficients, ascending degree.
/// The coefficient vector never has a trailing zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct KPolynomial {
    coeffs: Vec<Rational>,
}

impl KPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        KPolynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        KPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `k`.
    pub fn k() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> Rational {
        self.coeffs.get(d).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        self.scale(&(Rational::one() / lc))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Euclidean division; panics when dividing by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.coeffs.len() - 1;
        let lc = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Exact quotient if `divisor` divides `self`.
    pub fn checked_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors, keeping the sign and
    /// size of the leading coefficient.
    pub fn square_free_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.checked_div(&g).expect("gcd divides")
    }

    /// Yun's factorisation: `self = lc · Π fᵢ^i` with each `fᵢ` monic and
    /// square-free. Returns `(fᵢ, i)` for the non-constant factors.
    pub fn square_free_factorization(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let mut a = f.gcd(&fp);
        let mut b = f.checked_div(&a).expect("gcd divides");
        let mut c = fp.checked_div(&a).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.checked_div(&a).expect("gcd divides");
            c = d.checked_div(&a).expect("gcd divides");
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }
}

impl fmt::Debug for KPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Human form, highest degree first: `12k^6 - 54k^5 + … + 24`.
impl fmt::Display for KPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let coef = if mag.is_one() && d > 0 {
                String::new()
            } else {
                format_rational(&mag)
            };
            match d {
                0 => write!(f, "{}", format_rational(&mag))?,
                1 => write!(f, "{coef}k")?,
                _ => write!(f, "{coef}k^{d}")?,
            }
        }
        Ok(())
    }
}

impl Add for &KPolynomial {
    type Output = KPolynomial;
    fn add(self, rhs: &KPolynomial) -> KPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        KPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &KPolynomial {
    type Output = KPolynomial;
    fn sub(self, rhs: &KPolynomial) -> KPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        KPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &KPolynomial {
    type Output = KPolynomial;
    fn mul(self, rhs: &KPolynomial) -> KPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return KPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        KPolynomial::new(out)
    }
}

impl Neg for &KPolynomial {
    type Output = KPolynomial;
    fn neg(self) -> KPolynomial {
        KPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for KPolynomial {
            type Output = KPolynomial;
            fn $m(self, rhs: KPolynomial) -> KPolynomial { (&self).$m(&rhs) }
        }
        impl $tr<&KPolynomial> for KPolynomial {
            type Output = KPolynomial;
            fn $m(self, rhs: &KPolynomial) -> KPolynomial { (&self).$m(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for KPolynomial {
    type Output = KPolynomial;
    fn neg(self) -> KPolynomial {
        -&self
    }
}
