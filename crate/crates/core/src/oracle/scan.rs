use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::exactmath::Rational;
use crate::{Error, Result};

const MAX_PART: i128 = 1 << 20;
const MAX_GRID: u64 = 4096;

/// One point of the scan, with degrees measured in vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanWitness {
    pub k: Rational,
    pub n: u64,
    pub d_u: Rational,
    pub d_v: Rational,
    pub d_uv: Rational,
}

/// Results of the scan for one value of `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KScan {
    pub k: Rational,
    /// Unordered `(d_u, d_v)` triples evaluated.
    pub triples: u64,
    pub violations: Vec<ScanWitness>,
    /// Triples where the two sides agree exactly.
    pub equalities: u64,
    /// `(n, equality holds)` at the balanced `k`-partite point, for every
    /// `n` where that point lies on the grid.
    pub turan_points: Vec<(u64, bool)>,
}

impl KScan {
    pub fn turan_equality(&self) -> bool {
        !self.turan_points.is_empty() && self.turan_points.iter().all(|(_, ok)| *ok)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub n_max: u64,
    pub subdivisions: u64,
    pub per_k: Vec<KScan>,
    /// Points with `2n/3 ≤ d_u ≤ d_v` where the cubic in `d_uv` exceeds its
    /// value at `d_uv = d_u + d_v - n`.
    pub case_i_violations: Vec<ScanWitness>,
    /// Points where the full inequality at `d_uv = d_u + d_v - n` and its
    /// factored form disagree.
    pub reduced_disagreements: Vec<ScanWitness>,
}

impl ScanReport {
    pub fn is_clean(&self) -> bool {
        self.case_i_violations.is_empty()
            && self.reduced_disagreements.is_empty()
            && self
                .per_k
                .iter()
                .all(|s| s.violations.is_empty() && s.turan_equality())
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "scan n <= {} subdivisions={}\n",
            self.n_max, self.subdivisions
        );
        for s in &self.per_k {
            out.push_str(&format!(
                "k={} triples={} violations={} equalities={} turan_points={} turan_equality={}\n",
                s.k,
                s.triples,
                s.violations.len(),
                s.equalities,
                s.turan_points.len(),
                s.turan_equality()
            ));
            for w in s.violations.iter().take(10) {
                out.push_str(&format!(
                    "  violation n={} d_u={} d_v={} d_uv={}\n",
                    w.n, w.d_u, w.d_v, w.d_uv
                ));
            }
        }
        out.push_str(&format!(
            "case_i_violations={}\n",
            self.case_i_violations.len()
        ));
        out.push_str(&format!(
            "reduced_disagreements={}\n",
            self.reduced_disagreements.len()
        ));
        out.push_str(&format!(
            "verdict={}\n",
            if self.is_clean() { "PASS" } else { "FAIL" }
        ));
        out
    }
}

/// Exact scan of
/// `(d_u-d_uv)(d_v-d_uv)d_uv - (k-3)/k·n(n-d_u)(n-d_v) ≤ n³/k³`
/// over all integer `0 ≤ d_u ≤ d_v ≤ n` and
/// `max(0, d_u+d_v-n) ≤ d_uv ≤ min(d_u, d_v)`, for `n ≤ n_max`.
pub fn want_inequality_scan(k_set: &[Rational], n_max: u64) -> Result<ScanReport> {
    want_inequality_scan_grid(k_set, n_max, 1)
}

/// Like [`want_inequality_scan`] with degrees on the grid `(1/s)ℤ`. Both
/// sides are homogeneous cubics, so this is the integer scan at `s·n`.
pub fn want_inequality_scan_grid(
    k_set: &[Rational],
    n_max: u64,
    subdivisions: u64,
) -> Result<ScanReport> {
    if subdivisions == 0 {
        return Err(Error::InvalidArgument(
            "subdivisions must be positive".into(),
        ));
    }
    if n_max.saturating_mul(subdivisions) > MAX_GRID {
        return Err(Error::InvalidArgument(format!(
            "n_max * subdivisions exceeds {MAX_GRID}"
        )));
    }
    let mut parts = Vec::new();
    for k in k_set {
        if *k < Rational::from_integer(3.into()) {
            return Err(Error::InvalidArgument(format!("k = {k} is below 3")));
        }
        let p = k.numer().to_i128().filter(|p| *p < MAX_PART);
        let q = k.denom().to_i128().filter(|q| *q < MAX_PART);
        match (p, q) {
            (Some(p), Some(q)) => parts.push((k.clone(), p, q)),
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "k = {k} has too large a numerator or denominator"
                )))
            }
        }
    }
    let s = subdivisions;
    let witness = |k: &Rational, n: u64, du: i128, dv: i128, duv: i128| ScanWitness {
        k: k.clone(),
        n,
        d_u: grid(du, s),
        d_v: grid(dv, s),
        d_uv: grid(duv, s),
    };

    let per_k = crate::parallel::install(|| {
        parts
            .iter()
            .map(|(k, p, q)| {
                let rows: Vec<(u64, Vec<ScanWitness>, u64, Option<bool>)> = (1..=n_max)
                    .into_par_iter()
                    .map(|n| {
                        let big_n = (n * s) as i128;
                        let (mut triples, mut eq) = (0u64, 0u64);
                        let mut bad = Vec::new();
                        for du in 0..=big_n {
                            for dv in du..=big_n {
                                for duv in (du + dv - big_n).max(0)..=du {
                                    triples += 1;
                                    match full_lhs(*p, *q, big_n, du, dv, duv)
                                        .cmp(&full_rhs(*q, big_n))
                                    {
                                        std::cmp::Ordering::Greater => {
                                            bad.push(witness(k, n, du, dv, duv))
                                        }
                                        std::cmp::Ordering::Equal => eq += 1,
                                        std::cmp::Ordering::Less => {}
                                    }
                                }
                            }
                        }
                        let turan = (big_n % p == 0).then(|| {
                            let d = (p - q) * big_n / p;
                            let c = (p - 2 * q) * big_n / p;
                            full_lhs(*p, *q, big_n, d, d, c) == full_rhs(*q, big_n)
                        });
                        (triples, bad, eq, turan)
                    })
                    .collect();
                let mut scan = KScan {
                    k: k.clone(),
                    triples: 0,
                    violations: Vec::new(),
                    equalities: 0,
                    turan_points: Vec::new(),
                };
                for (n, (t, mut bad, eq, turan)) in (1..=n_max).zip(rows) {
                    scan.triples += t;
                    scan.violations.append(&mut bad);
                    scan.equalities += eq;
                    if let Some(ok) = turan {
                        scan.turan_points.push((n, ok));
                    }
                }
                scan
            })
            .collect()
    });

    let mut case_i_violations = Vec::new();
    let mut reduced_disagreements = Vec::new();
    let one = Rational::one();
    for n in 1..=n_max {
        let big_n = (n * s) as i128;
        for du in 0..=big_n {
            for dv in du..=big_n {
                let low = du + dv - big_n;
                if low < 0 {
                    continue;
                }
                if 3 * du >= 2 * big_n {
                    let bound = (big_n - du) * (big_n - dv) * low;
                    for duv in low..=du {
                        if (du - duv) * (dv - duv) * duv > bound {
                            case_i_violations.push(witness(&one, n, du, dv, duv));
                        }
                    }
                }
                for (k, p, q) in &parts {
                    let full = full_lhs(*p, *q, big_n, du, dv, low) <= full_rhs(*q, big_n);
                    let factored = ((3 * q - 2 * p) * big_n + p * (du + dv))
                        * p
                        * p
                        * (big_n - du)
                        * (big_n - dv)
                        <= full_rhs(*q, big_n);
                    if full != factored {
                        reduced_disagreements.push(witness(k, n, du, dv, low));
                    }
                }
            }
        }
    }
    Ok(ScanReport {
        n_max,
        subdivisions,
        per_k,
        case_i_violations,
        reduced_disagreements,
    })
}

// both sides multiplied by p³ where k = p/q
fn full_lhs(p: i128, q: i128, n: i128, du: i128, dv: i128, duv: i128) -> i128 {
    (du - duv) * (dv - duv) * duv * p * p * p - (p - 3 * q) * p * p * n * (n - du) * (n - dv)
}

fn full_rhs(q: i128, n: i128) -> i128 {
    n * n * n * q * q * q
}

fn grid(x: i128, s: u64) -> Rational {
    Rational::new((x as i64).into(), (s as i64).into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};

    #[test]
    fn integer_scan_is_clean() {
        let r = want_inequality_scan(&[int(3), int(4), int(5), rat(7, 2)], 18).unwrap();
        assert!(r.is_clean(), "{}", r.render());
        let k3 = &r.per_k[0];
        assert_eq!(k3.turan_points.len(), 6);
        assert!(k3.equalities >= 6);
        // k = 7/2 lands on the grid only when 7 | n
        assert_eq!(
            r.per_k[3]
                .turan_points
                .iter()
                .map(|t| t.0)
                .collect::<Vec<_>>(),
            vec![7, 14]
        );
    }

    #[test]
    fn grid_scan_matches_scaled_integer_scan() {
        let r = want_inequality_scan_grid(&[int(4)], 5, 4).unwrap();
        assert!(r.is_clean());
        assert_eq!(r.per_k[0].turan_points.len(), 5);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(want_inequality_scan(&[int(2)], 5).is_err());
        assert!(want_inequality_scan_grid(&[int(3)], 5, 0).is_err());
        assert!(want_inequality_scan_grid(&[int(3)], 5000, 1).is_err());
    }

    #[test]
    fn inequality_fails_below_three() {
        // at k = 5/2 the empty graph already breaks it
        assert!(full_lhs(5, 2, 6, 0, 0, 0) > full_rhs(2, 6));
        assert!(full_lhs(3, 1, 6, 0, 0, 0) <= full_rhs(1, 6));
    }
}
