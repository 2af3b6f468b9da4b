//! Exact positive-semidefiniteness via symmetric-pivoted LDLᵀ.

use num_traits::{One, Signed, Zero};

use super::{int, Rational};
use crate::{Error, Result};

/// Dense symmetric matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl SymMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        for r in &rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: r.len(),
                });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(SymMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Rational::one();
        }
        SymMatrix { n, entries }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries
            .chunks(self.n.max(1))
            .take(self.n)
            .map(<[Rational]>::to_vec)
            .collect()
    }

    /// `vᵀ M v`.
    pub fn quadratic_form(&self, v: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.n {
            if v[i].is_zero() {
                continue;
            }
            let mut row = Rational::zero();
            for j in 0..self.n {
                row += self.get(i, j) * &v[j];
            }
            acc += &v[i] * row;
        }
        acc
    }
}

/// `M = Pᵀ L D Lᵀ P`: `perm[a]` is the original index eliminated at step `a`,
/// `l` is unit lower triangular in that order and `d` is non-negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LdlWitness {
    pub perm: Vec<usize>,
    pub l: Vec<Vec<Rational>>,
    pub d: Vec<Rational>,
}

impl LdlWitness {
    pub fn reconstruct(&self) -> SymMatrix {
        let n = self.perm.len();
        let mut rows = vec![vec![Rational::zero(); n]; n];
        for a in 0..n {
            for c in 0..n {
                let mut s = Rational::zero();
                for b in 0..=a.min(c) {
                    s += &self.l[a][b] * &self.d[b] * &self.l[c][b];
                }
                rows[self.perm[a]][self.perm[c]] = s;
            }
        }
        SymMatrix::new(rows).expect("LDL product is symmetric")
    }

    pub fn pivots_nonnegative(&self) -> bool {
        self.d.iter().all(|x| !x.is_negative())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PsdVerdict {
    Psd(LdlWitness),
    /// `vector` satisfies `vectorᵀ M vector = value < 0`.
    NotPsd {
        vector: Vec<Rational>,
        value: Rational,
    },
}

impl PsdVerdict {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdVerdict::Psd(_))
    }
}

/// Decides PSD exactly. Pivots on the first positive remaining diagonal; a
/// negative diagonal, or a zero diagonal with a non-zero off-diagonal in the
/// Schur complement, yields a negative direction.
pub fn psd_check(m: &SymMatrix) -> PsdVerdict {
    let n = m.order();
    let mut s = m.rows();
    let mut active = vec![true; n];
    let mut order = Vec::with_capacity(n);
    // column t of L in original coordinates
    let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(n);
    let mut d = Vec::with_capacity(n);

    while order.len() < n {
        let remaining: Vec<usize> = (0..n).filter(|&i| active[i]).collect();
        if let Some(&i) = remaining.iter().find(|&&i| s[i][i].is_negative()) {
            return negative_direction(m, &order, &cols, &[(i, Rational::one())]);
        }
        let Some(&p) = remaining.iter().find(|&&i| s[i][i].is_positive()) else {
            for (a, &i) in remaining.iter().enumerate() {
                for &j in &remaining[a + 1..] {
                    if !s[i][j].is_zero() {
                        let y = [(i, -s[i][j].clone()), (j, Rational::one())];
                        return negative_direction(m, &order, &cols, &y);
                    }
                }
            }
            // zero Schur complement: the rest are zero pivots
            for &i in &remaining {
                let mut col = vec![Rational::zero(); n];
                col[i] = Rational::one();
                cols.push(col);
                d.push(Rational::zero());
                order.push(i);
                active[i] = false;
            }
            break;
        };
        let pivot = s[p][p].clone();
        let mut col = vec![Rational::zero(); n];
        col[p] = Rational::one();
        for &i in &remaining {
            if i != p {
                col[i] = &s[i][p] / &pivot;
            }
        }
        for &i in &remaining {
            if i == p || col[i].is_zero() {
                continue;
            }
            for &j in &remaining {
                if j != p {
                    let delta = &col[i] * &s[p][j];
                    s[i][j] -= delta;
                }
            }
        }
        active[p] = false;
        order.push(p);
        cols.push(col);
        d.push(pivot);
    }

    let l = (0..n)
        .map(|a| (0..n).map(|b| cols[b][order[a]].clone()).collect())
        .collect();
    PsdVerdict::Psd(LdlWitness { perm: order, l, d })
}

// Lifts a direction `y` on the current Schur complement back to the
// original coordinates by forcing every eliminated column to be orthogonal.
fn negative_direction(
    m: &SymMatrix,
    order: &[usize],
    cols: &[Vec<Rational>],
    y: &[(usize, Rational)],
) -> PsdVerdict {
    let n = m.order();
    let mut x = vec![Rational::zero(); n];
    for (i, v) in y {
        x[*i] = v.clone();
    }
    for t in (0..order.len()).rev() {
        let p = order[t];
        let mut acc = Rational::zero();
        for i in 0..n {
            if i != p && !cols[t][i].is_zero() {
                acc += &cols[t][i] * &x[i];
            }
        }
        x[p] = -acc;
    }
    let value = m.quadratic_form(&x);
    debug_assert!(value.is_negative());
    PsdVerdict::NotPsd { vector: x, value }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn k4_matrix_is_psd() {
        let m =
            SymMatrix::from_ints(&[&[91, 12, -115], &[12, 41, -94], &[-115, -94, 303]]).unwrap();
        match psd_check(&m) {
            PsdVerdict::Psd(w) => {
                assert!(w.pivots_nonnegative());
                assert_eq!(w.reconstruct(), m);
            }
            other => panic!("expected PSD, got {other:?}"),
        }
    }

    #[test]
    fn identity_witness() {
        let PsdVerdict::Psd(w) = psd_check(&SymMatrix::identity(3)) else {
            panic!()
        };
        assert_eq!(w.d, vec![int(1), int(1), int(1)]);
    }

    #[test]
    fn indefinite_two_by_two() {
        let m = SymMatrix::from_ints(&[&[1, 2], &[2, 1]]).unwrap();
        let PsdVerdict::NotPsd { vector, value } = psd_check(&m) else {
            panic!()
        };
        assert!(value.is_negative());
        assert_eq!(m.quadratic_form(&vector), value);
        // the canonical direction from the examples
        assert_eq!(m.quadratic_form(&[int(1), int(-1)]), int(-2));
    }

    #[test]
    fn zero_diagonal_cases() {
        let m = SymMatrix::from_ints(&[&[0, 1], &[1, 0]]).unwrap();
        assert!(!psd_check(&m).is_psd());
        let z = SymMatrix::from_ints(&[&[0, 0], &[0, 0]]).unwrap();
        assert!(psd_check(&z).is_psd());
        // rank one with a zero pivot in the middle
        let r = SymMatrix::from_ints(&[&[1, 0, 2], &[0, 0, 0], &[2, 0, 4]]).unwrap();
        let PsdVerdict::Psd(w) = psd_check(&r) else {
            panic!()
        };
        assert_eq!(w.reconstruct(), r);
    }

    #[test]
    fn negative_after_elimination() {
        // PSD leading block, negative Schur complement
        let m = SymMatrix::new(vec![
            vec![int(4), int(2), int(0)],
            vec![int(2), int(1), int(1)],
            vec![int(0), int(1), rat(1, 2)],
        ])
        .unwrap();
        let PsdVerdict::NotPsd { vector, value } = psd_check(&m) else {
            panic!()
        };
        assert!(value.is_negative());
        assert_eq!(m.quadratic_form(&vector), value);
    }

    #[test]
    fn asymmetric_rejected() {
        assert_eq!(
            SymMatrix::from_ints(&[&[1, 2], &[3, 1]]),
            Err(Error::NotSymmetric { row: 0, col: 1 })
        );
    }
}
