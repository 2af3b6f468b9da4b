use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactmath::Rational;
use crate::smallgraph::{canonical_code, SmallGraph};
use crate::{Error, Result};

/// Limit object in which base vertex `i` becomes an independent set of
/// relative size `weights[i]`, joined completely to the sets of its base
/// neighbours.
#[derive(Clone, Debug, PartialEq)]
pub struct BlowupModel {
    base: SmallGraph,
    weights: Vec<Rational>,
}

impl BlowupModel {
    pub fn new(base: SmallGraph, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != base.order() {
            return Err(Error::DimensionMismatch {
                expected: base.order(),
                found: weights.len(),
            });
        }
        if weights.iter().any(Signed::is_negative) {
            return Err(Error::InvalidArgument(
                "blowup weights must be nonnegative".into(),
            ));
        }
        let total: Rational = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidArgument(format!(
                "blowup weights sum to {total}, not 1"
            )));
        }
        Ok(BlowupModel { base, weights })
    }

    /// Equal weights on every base vertex.
    pub fn uniform(base: SmallGraph) -> Result<Self> {
        let n = base.order();
        if n == 0 {
            return Err(Error::InvalidArgument(
                "the base graph needs a vertex".into(),
            ));
        }
        let w = Rational::new(BigInt::one(), BigInt::from(n));
        Self::new(base, vec![w; n])
    }

    pub fn base(&self) -> &SmallGraph {
        &self.base
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// Limit edge density: twice the weight mass on base edges.
    pub fn edge_density(&self) -> Rational {
        let two = Rational::from_integer(2.into());
        self.base
            .edges()
            .map(|(u, v)| &two * &self.weights[u] * &self.weights[v])
            .sum()
    }

    /// Relabels base vertices together with their weights: new vertex `i`
    /// is old vertex `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let base = self.base.permuted(perm);
        let weights = perm.iter().map(|&p| self.weights[p].clone()).collect();
        Self::new(base, weights)
    }
}

/// Limit induced density of `h` in the blowup: the probability that
/// `|h|` independent samples from the weight distribution span a copy of
/// `h`, summed over how many samples land in each part.
pub fn blowup_density(model: &BlowupModel, h: &SmallGraph) -> Result<Rational> {
    let m = h.order();
    if m > 7 {
        return Err(Error::OrderOutOfRange {
            order: m,
            min: 0,
            max: 7,
        });
    }
    let target = canonical_code(h);
    let support: Vec<usize> = (0..model.base.order())
        .filter(|&i| !model.weights[i].is_zero())
        .collect();
    let factorial: Vec<BigInt> = (0..=m)
        .scan(BigInt::one(), |acc, i| {
            if i > 0 {
                *acc *= i;
            }
            Some(acc.clone())
        })
        .collect();
    let mut total = Rational::zero();
    let mut counts = vec![0usize; support.len()];
    compositions(&mut counts, 0, m, &mut |c| {
        let mut parts = Vec::with_capacity(m);
        for (slot, &n) in c.iter().enumerate() {
            parts.extend(std::iter::repeat(support[slot]).take(n));
        }
        let mut sample = SmallGraph::empty(m).expect("order checked");
        for i in 0..m {
            for j in i + 1..m {
                if parts[i] != parts[j] && model.base.has_edge(parts[i], parts[j]) {
                    sample.set_edge(i, j, true);
                }
            }
        }
        if canonical_code(&sample) != target {
            return;
        }
        let mut term = Rational::from_integer(factorial[m].clone());
        for (slot, &n) in c.iter().enumerate() {
            term /= Rational::from_integer(factorial[n].clone());
            term *= num_traits::pow(model.weights[support[slot]].clone(), n);
        }
        total += term;
    });
    Ok(total)
}

/// Visits every way of writing `left` as an ordered sum over the slots.
fn compositions(counts: &mut Vec<usize>, slot: usize, left: usize, f: &mut impl FnMut(&[usize])) {
    if counts.is_empty() {
        return;
    }
    if slot + 1 == counts.len() {
        counts[slot] = left;
        f(counts);
        return;
    }
    for n in 0..=left {
        counts[slot] = n;
        compositions(counts, slot + 1, left - n, f);
    }
}
