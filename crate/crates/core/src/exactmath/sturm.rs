//! Sturm sequences, largest-root isolation and sign decisions on rays.

use num_traits::{One, Signed, Zero};

use super::{int, KPolynomial, Rational};
use crate::{Error, Result};

/// Sturm chain of the square-free part of a polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<KPolynomial>,
}

impl SturmSequence {
    pub fn new(p: &KPolynomial) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let p0 = p.square_free_part();
        let mut chain = vec![p0.clone()];
        let mut prev = p0.clone();
        let mut cur = p0.derivative();
        while !cur.is_zero() {
            chain.push(cur.clone());
            let r = prev.div_rem(&cur).1;
            prev = cur;
            cur = -r;
        }
        Ok(SturmSequence { chain })
    }

    fn changes<I: Iterator<Item = i8>>(signs: I) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn sign_changes_at(&self, x: &Rational) -> usize {
        Self::changes(self.chain.iter().map(|p| sign(&p.eval(x))))
    }

    pub fn sign_changes_at_pos_inf(&self) -> usize {
        Self::changes(self.chain.iter().map(|p| sign(&p.leading())))
    }

    pub fn sign_changes_at_neg_inf(&self) -> usize {
        Self::changes(self.chain.iter().map(|p| {
            let s = sign(&p.leading());
            if p.degree().unwrap_or(0) % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Distinct real roots in `(a, b]`.
    pub fn count_in(&self, a: &Rational, b: &Rational) -> usize {
        self.sign_changes_at(a)
            .saturating_sub(self.sign_changes_at(b))
    }

    /// Distinct real roots in `(a, ∞)`.
    pub fn count_above(&self, a: &Rational) -> usize {
        self.sign_changes_at(a)
            .saturating_sub(self.sign_changes_at_pos_inf())
    }

    pub fn count_real(&self) -> usize {
        self.sign_changes_at_neg_inf()
            .saturating_sub(self.sign_changes_at_pos_inf())
    }
}

fn sign(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Distinct real roots of `p` strictly above `a`.
pub fn count_roots_above(p: &KPolynomial, a: &Rational) -> Result<usize> {
    Ok(SturmSequence::new(p)?.count_above(a))
}

/// Cauchy bound: every real root lies in `(-B, B)`.
fn root_bound(p: &KPolynomial) -> Rational {
    let lc = p.leading().abs();
    let m = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs() / &lc)
        .max()
        .unwrap_or_else(Rational::zero);
    m + Rational::one()
}

/// Interval `(lower, upper]` holding exactly one distinct root of a
/// polynomial, which is its largest real root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBracket {
    pub lower: Rational,
    pub upper: Rational,
}

impl RootBracket {
    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lower + &self.upper) / int(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lower < x && x <= &self.upper
    }
}

/// Brackets the largest real root of `p` to width `<= precision` by Sturm
/// counting and bisection. `Ok(None)` when `p` has no real root.
pub fn isolate_largest_real_root(
    p: &KPolynomial,
    precision: &Rational,
) -> Result<Option<RootBracket>> {
    let sturm = SturmSequence::new(p)?;
    if !precision.is_positive() {
        return Err(Error::InvalidArgument("precision must be positive".into()));
    }
    if sturm.count_real() == 0 {
        return Ok(None);
    }
    let bound = root_bound(p);
    let mut lo = -bound.clone();
    let mut hi = bound;
    let two = int(2);
    // invariant: largest root in (lo, hi], none above hi
    loop {
        let single = sturm.count_in(&lo, &hi) == 1;
        if single && &hi - &lo <= *precision {
            break;
        }
        let mid = (&lo + &hi) / &two;
        if sturm.count_in(&mid, &hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(RootBracket {
        lower: lo,
        upper: hi,
    }))
}

/// Whether `p(k) >= 0` for every `k >= k0`. The zero polynomial counts as
/// non-negative. Roots of even multiplicity above `k0` are allowed.
pub fn nonneg_on_ray(p: &KPolynomial, k0: &Rational) -> bool {
    if p.is_zero() {
        return true;
    }
    if p.degree() == Some(0) {
        return !p.leading().is_negative();
    }
    if p.leading().is_negative() || p.eval(k0).is_negative() {
        return false;
    }
    // sign can only flip at roots of odd multiplicity
    let mut odd = KPolynomial::one();
    for (f, m) in p.square_free_factorization() {
        if m % 2 == 1 {
            odd = &odd * &f;
        }
    }
    if odd.degree().unwrap_or(0) == 0 {
        return true;
    }
    SturmSequence::new(&odd)
        .map(|s| s.count_above(k0) == 0)
        .unwrap_or(true)
}

/// Whether `p(k) > 0` for every `k >= k0`.
pub fn positive_on_ray(p: &KPolynomial, k0: &Rational) -> bool {
    if p.is_zero() {
        return false;
    }
    if !p.eval(k0).is_positive() {
        return false;
    }
    if p.degree() == Some(0) {
        return true;
    }
    p.leading().is_positive()
        && SturmSequence::new(p)
            .map(|s| s.count_above(k0) == 0)
            .unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, to_f64};

    fn p(c: &[i64]) -> KPolynomial {
        KPolynomial::from_ints(c)
    }

    #[test]
    fn counts_for_cubic_with_three_roots() {
        // (k-1)(k-2)(k-3)
        let f = p(&[-6, 11, -6, 1]);
        let s = SturmSequence::new(&f).unwrap();
        assert_eq!(s.count_real(), 3);
        assert_eq!(s.count_above(&int(0)), 3);
        assert_eq!(s.count_in(&int(1), &int(2)), 1); // (1, 2]
        assert_eq!(s.count_in(&int(0), &int(1)), 1);
        assert_eq!(s.count_above(&int(3)), 0);
    }

    #[test]
    fn repeated_roots_counted_once() {
        let f = &p(&[-1, 1]).pow(3) * &p(&[2, 1]);
        assert_eq!(SturmSequence::new(&f).unwrap().count_real(), 2);
    }

    #[test]
    fn bracket_around_two() {
        let b = isolate_largest_real_root(&p(&[-4, 0, 1]), &rat(1, 1000))
            .unwrap()
            .unwrap();
        assert!(b.contains(&int(2)));
        assert!(b.width() <= rat(1, 1000));
    }

    #[test]
    fn no_real_root() {
        assert_eq!(
            isolate_largest_real_root(&p(&[1, 0, 1]), &rat(1, 10)).unwrap(),
            None
        );
        assert_eq!(
            isolate_largest_real_root(&KPolynomial::zero(), &rat(1, 10)),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn psd_polynomial_root() {
        let f = p(&[-36, -324, 603, -522, 585, -378, 63]);
        let b = isolate_largest_real_root(&f, &rat(1, 10_000_000))
            .unwrap()
            .unwrap();
        assert!((to_f64(&b.midpoint()) - 4.113060).abs() < 1e-6);
        assert!(nonneg_on_ray(&f, &int(5)));
        assert!(!nonneg_on_ray(&f, &int(4)));
    }

    #[test]
    fn ray_decisions() {
        assert!(nonneg_on_ray(&p(&[0, -100, 106, 10, 48, -82, 18]), &int(4)));
        assert!(!nonneg_on_ray(&p(&[-1]), &int(0)));
        assert!(nonneg_on_ray(&KPolynomial::zero(), &int(0)));
        // (k-5)^2 touches zero above the ray start
        assert!(nonneg_on_ray(&p(&[-5, 1]).pow(2), &int(0)));
        assert!(!positive_on_ray(&p(&[-5, 1]).pow(2), &int(0)));
        // root exactly at k0 is allowed
        assert!(nonneg_on_ray(&p(&[-4, 1]), &int(4)));
        assert!(positive_on_ray(&p(&[-1, 1]), &int(4)));
    }
}
