//! The piecewise lower-bound curve for the induced K(2,2,1) density as a
//! function of edge density.
//!
//! Below 2/3 the curve comes from a balanced complete tripartite graph on a
//! fraction of the vertices plus isolated vertices; on
//! `[(k-1)/k, k/(k+1)]` it comes from `k` equal parts of size `a` and one
//! part of size `1 - ka`, with `a` chosen to hit the edge density. Values
//! are exact elements of `Q(√D)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::BlowupModel;
use crate::exactmath::{format_decimal, int, parse_rational, QuadSurd, Rational};
use crate::smallgraph::SmallGraph;
use crate::{Error, Result};

/// Which construction governs an edge density.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Piece {
    /// `e ≤ 2/3`.
    Sparse,
    /// `(k-1)/k < e ≤ k/(k+1)`.
    Multipartite { k: u64 },
    /// `e = 1`.
    Complete,
}

pub fn piece_for(e: &Rational) -> Result<Piece> {
    check_unit(e)?;
    if *e <= Rational::new(2.into(), 3.into()) {
        return Ok(Piece::Sparse);
    }
    if e.is_one() {
        return Ok(Piece::Complete);
    }
    // e ∈ ((k-1)/k, k/(k+1)]  ⟺  1/(1-e) ∈ (k, k+1]
    let t = Rational::one() / (Rational::one() - e);
    let k = if t.is_integer() {
        t.to_integer() - 1
    } else {
        t.floor().to_integer()
    };
    let k: u64 = k
        .try_into()
        .map_err(|_| Error::InvalidArgument("edge density too close to 1".into()))?;
    Ok(Piece::Multipartite { k })
}

fn check_unit(e: &Rational) -> Result<()> {
    if e.is_negative() || *e > Rational::one() {
        return Err(Error::InvalidArgument(format!(
            "edge density {e} is outside [0, 1]"
        )));
    }
    Ok(())
}

/// `15(k-1)(k-2)/k⁴`, the induced K(2,2,1) density of the balanced complete
/// `k`-partite limit.
pub fn turan_bound(k: &Rational) -> Result<Rational> {
    if *k < int(3) {
        return Err(Error::InvalidArgument(format!("k = {k} is below 3")));
    }
    let one = Rational::one();
    Ok(int(15) * (k - &one) * (k - int(2)) / num_traits::pow(k.clone(), 4))
}

/// Part size `a = (k + √(k² - e k (k+1))) / (k² + k)`.
fn part_size(k: u64, e: &Rational) -> QuadSurd {
    let kq = Rational::from_integer(BigInt::from(k));
    let disc = &kq * &kq - e * &kq * (&kq + Rational::one());
    let denom = &kq * &kq + &kq;
    QuadSurd::new(&kq / &denom, Rational::one() / &denom, disc)
}

/// Value of the `k`-th multipartite piece at `e`; `e` must lie in
/// `[(k-1)/k, k/(k+1)]` and `k ≥ 3`.
pub fn conjecture_piece(k: u64, e: &Rational) -> Result<QuadSurd> {
    if k < 3 {
        return Err(Error::InvalidArgument(format!(
            "piece index {k} is below 3"
        )));
    }
    let kq = Rational::from_integer(BigInt::from(k));
    let lo = (&kq - Rational::one()) / &kq;
    let hi = &kq / (&kq + Rational::one());
    if *e < lo || *e > hi {
        return Err(Error::InvalidArgument(format!(
            "edge density {e} is outside piece {k}"
        )));
    }
    let a = part_size(k, e);
    let one = QuadSurd::rational(Rational::one());
    let ak1 = a.scale(&kq).sub(&one);
    let km1 = &kq - Rational::one();
    let first = a.pow(5).scale(&(int(15) * &km1 * (&kq - int(2)) * &kq));
    let second = ak1.pow(2).mul(&a.pow(3)).scale(&(int(30) * &km1 * &kq));
    let third = ak1.mul(&a.pow(4)).scale(&(int(15) * &km1 * &kq));
    Ok(first.add(&second).sub(&third))
}

/// Lower-bound curve value at edge density `e`, exactly.
pub fn conjecture_value(e: &Rational) -> Result<QuadSurd> {
    match piece_for(e)? {
        // √(25/24) e^{5/2} = e² √(25e/24)
        Piece::Sparse => Ok(QuadSurd::new(
            Rational::zero(),
            e * e,
            e * Rational::new(25.into(), 24.into()),
        )),
        Piece::Multipartite { k } => conjecture_piece(k, e),
        Piece::Complete => Ok(QuadSurd::rational(Rational::zero())),
    }
}

/// Base graph and exact weights of the construction behind the curve at `e`.
pub fn conjecture_construction(e: &Rational) -> Result<(SmallGraph, Vec<QuadSurd>)> {
    match piece_for(e)? {
        Piece::Sparse => {
            // triangle blown up to total size a = √(3e/2), rest isolated
            let a = QuadSurd::sqrt(e * Rational::new(3.into(), 2.into()));
            let third = a.scale(&Rational::new(1.into(), 3.into()));
            let rest = QuadSurd::rational(Rational::one()).sub(&a);
            let base = SmallGraph::from_edges(4, &[(0, 1), (0, 2), (1, 2)])?;
            Ok((base, vec![third.clone(), third.clone(), third, rest]))
        }
        Piece::Multipartite { k } => {
            let a = part_size(k, e);
            let kq = Rational::from_integer(BigInt::from(k));
            let rest = QuadSurd::rational(Rational::one()).sub(&a.scale(&kq));
            let mut w = vec![a; k as usize];
            w.push(rest);
            Ok((SmallGraph::complete(k as usize + 1)?, w))
        }
        Piece::Complete => Ok((
            SmallGraph::complete(1)?,
            vec![QuadSurd::rational(Rational::one())],
        )),
    }
}

impl BlowupModel {
    /// Rational model within `10^-digits` per weight of the construction at `e`.
    pub fn approximating(e: &Rational, digits: usize) -> Result<Self> {
        let (base, weights) = conjecture_construction(e)?;
        let n = weights.len();
        let mut w: Vec<Rational> = weights[..n - 1].iter().map(|x| x.approx(digits)).collect();
        let rest = Rational::one() - w.iter().sum::<Rational>();
        w.push(rest);
        Self::new(base, w)
    }
}

/// Agreement of neighbouring pieces at a knot.
#[derive(Clone, Debug, PartialEq)]
pub struct KnotCheck {
    pub e: Rational,
    pub left: QuadSurd,
    pub right: QuadSurd,
}

impl KnotCheck {
    pub fn agrees(&self) -> bool {
        self.left == self.right
    }
}

/// Both one-sided values at `e = 2/3` and at `e = k/(k+1)` for `3 ≤ k ≤ k_max`.
pub fn knot_continuity(k_max: u64) -> Result<Vec<KnotCheck>> {
    let two_thirds = Rational::new(2.into(), 3.into());
    let mut out = vec![KnotCheck {
        left: conjecture_value(&two_thirds)?,
        right: conjecture_piece(3, &two_thirds)?,
        e: two_thirds,
    }];
    for k in 3..=k_max {
        let e = Rational::new(BigInt::from(k), BigInt::from(k + 1));
        out.push(KnotCheck {
            left: conjecture_piece(k, &e)?,
            right: conjecture_piece(k + 1, &e)?,
            e,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProfilePoint {
    pub e: Rational,
    pub value: QuadSurd,
}

/// Largest number of grid points [`profile_table`] will produce.
const MAX_PROFILE_POINTS: u64 = 1_000_000;

/// Curve sampled at `e_min, e_min + step, …` up to `e_max`.
pub fn profile_table(
    e_min: &Rational,
    e_max: &Rational,
    step: &Rational,
) -> Result<Vec<ProfilePoint>> {
    check_unit(e_min)?;
    check_unit(e_max)?;
    if e_min >= e_max {
        return Err(Error::InvalidArgument(
            "profile range must have e_min < e_max".into(),
        ));
    }
    if !step.is_positive() {
        return Err(Error::InvalidArgument(
            "profile step must be positive".into(),
        ));
    }
    let count = ((e_max - e_min) / step).floor().to_integer();
    let count: u64 = count
        .try_into()
        .ok()
        .filter(|c: &u64| *c < MAX_PROFILE_POINTS)
        .ok_or_else(|| Error::InvalidArgument("profile grid is too fine".into()))?;
    crate::parallel::install(|| {
        (0..=count)
            .into_par_iter()
            .map(|i| {
                let e = e_min + step * Rational::from_integer(BigInt::from(i));
                conjecture_value(&e).map(|value| ProfilePoint { e, value })
            })
            .collect()
    })
}

/// CSV with header `e,value`, both columns rounded to `digits` decimals.
pub fn profile_csv(points: &[ProfilePoint], digits: usize) -> String {
    let mut out = String::from("e,value\n");
    for p in points {
        out.push_str(&format_decimal(&p.e, digits));
        out.push(',');
        out.push_str(&p.value.to_decimal(digits));
        out.push('\n');
    }
    out
}

/// Reads `e,value` rows (header and `#` comments skipped) as exact decimals.
pub fn parse_profile_golden(text: &str) -> Result<Vec<(Rational, Rational)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let l = line.trim();
        if l.is_empty() || l.starts_with('#') || l == "e,value" {
            continue;
        }
        let (e, v) = l
            .split_once(',')
            .ok_or_else(|| Error::schema(format!("line {}", i + 1), "expected `e,value`"))?;
        let bad = |s: &str| Error::schema(format!("line {}", i + 1), format!("bad number {s:?}"));
        out.push((
            parse_rational(e).map_err(|_| bad(e))?,
            parse_rational(v).map_err(|_| bad(v))?,
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn anchor_values() {
        assert_eq!(
            conjecture_value(&rat(2, 3)).unwrap().as_rational(),
            Some(&rat(10, 27))
        );
        assert_eq!(
            conjecture_value(&rat(3, 4)).unwrap().as_rational(),
            Some(&rat(45, 128))
        );
        assert_eq!(
            conjecture_value(&rat(4, 5)).unwrap().as_rational(),
            Some(&rat(36, 125))
        );
        assert_eq!(
            conjecture_value(&int(0)).unwrap().as_rational(),
            Some(&int(0))
        );
        assert_eq!(
            conjecture_value(&int(1)).unwrap().as_rational(),
            Some(&int(0))
        );
        assert_eq!(
            conjecture_value(&rat(74, 100)).unwrap().to_decimal(6),
            "0.344944"
        );
    }

    #[test]
    fn pieces() {
        assert_eq!(piece_for(&rat(1, 2)).unwrap(), Piece::Sparse);
        assert_eq!(
            piece_for(&rat(7, 10)).unwrap(),
            Piece::Multipartite { k: 3 }
        );
        assert_eq!(piece_for(&rat(3, 4)).unwrap(), Piece::Multipartite { k: 3 });
        assert_eq!(
            piece_for(&rat(76, 100)).unwrap(),
            Piece::Multipartite { k: 4 }
        );
        assert!(piece_for(&rat(11, 10)).is_err());
    }

    #[test]
    fn left_end_of_a_piece_is_the_turan_value() {
        for k in 3..=8u64 {
            let kq = Rational::from_integer(BigInt::from(k));
            let e = (&kq - Rational::one()) / &kq;
            assert_eq!(
                conjecture_piece(k, &e).unwrap().as_rational(),
                Some(&turan_bound(&kq).unwrap())
            );
        }
    }

    #[test]
    fn turan_bound_values() {
        assert_eq!(turan_bound(&int(3)).unwrap(), rat(10, 27));
        assert_eq!(turan_bound(&int(4)).unwrap(), rat(45, 128));
        assert_eq!(turan_bound(&int(5)).unwrap(), rat(36, 125));
        assert!(turan_bound(&int(2)).is_err());
    }

    #[test]
    fn grid_validation() {
        assert!(profile_table(&int(1), &int(0), &rat(1, 10)).is_err());
        assert!(profile_table(&int(0), &int(1), &int(0)).is_err());
        assert!(profile_table(&int(0), &rat(3, 2), &rat(1, 10)).is_err());
        let t = profile_table(&int(0), &int(1), &rat(1, 4)).unwrap();
        assert_eq!(t.len(), 5);
        let csv = profile_csv(&t, 6);
        assert!(csv.starts_with("e,value\n0.000000,0.000000\n"));
        assert!(csv.contains("0.750000,0.351562"));
    }
}
