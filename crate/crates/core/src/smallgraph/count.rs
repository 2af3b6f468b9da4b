use num_bigint::BigInt;
use num_integer::binomial;

use super::{canonical_code, class_index, SmallGraph};
use crate::Rational;

/// Visits every `k`-subset of `0..n` as a bitmask (Gosper's hack).
pub(crate) fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(u16)) {
    if k > n {
        return;
    }
    if k == 0 {
        f(0);
        return;
    }
    let limit = 1u32 << n;
    let mut s: u32 = (1 << k) - 1;
    while s < limit {
        f(s as u16);
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
}

/// Number of vertex subsets of `g` inducing a copy of `h`.
pub fn count_induced(h: &SmallGraph, g: &SmallGraph) -> u64 {
    let m = h.order();
    let target = canonical_code(h);
    let edges = h.edge_count();
    let mut count = 0;
    for_each_subset(g.order(), m, |mask| {
        let sub = g.induced_mask(mask);
        if sub.edge_count() == edges && canonical_code(&sub) == target {
            count += 1;
        }
    });
    count
}

/// Exact induced density `count_induced / C(|g|, |h|)`; zero when `|h| > |g|`.
pub fn induced_density(h: &SmallGraph, g: &SmallGraph) -> Rational {
    if h.order() > g.order() {
        return Rational::from_integer(0.into());
    }
    let total = binomial(g.order() as u64, h.order() as u64);
    Rational::new(BigInt::from(count_induced(h, g)), BigInt::from(total))
}

/// Induced counts of every class of order `m` in `g`, indexed like
/// `enumerate_graphs_extended(m)`.
pub fn induced_counts(g: &SmallGraph, m: usize) -> Vec<u64> {
    let classes = super::enumerate_graphs_extended(m).expect("order in range");
    let mut counts = vec![0u64; classes.len()];
    for_each_subset(g.order(), m, |mask| {
        counts[class_index(&g.induced_mask(mask))] += 1;
    });
    counts
}
