use super::{SmallGraph, MAX_ORDER};
use crate::{Error, Result};

/// Graph constructions used throughout the crate.
#[derive(Clone, Debug)]
pub enum Composition<'a> {
    Union(&'a SmallGraph, &'a SmallGraph),
    Join(&'a SmallGraph, &'a SmallGraph),
    Complement(&'a SmallGraph),
    /// Complete `k`-partite graph on `n` vertices with near-equal parts.
    Turan {
        k: usize,
        n: usize,
    },
    /// Each base vertex `i` becomes an independent set of `sizes[i]`
    /// vertices; parts are completely joined along base edges.
    Blowup {
        base: &'a SmallGraph,
        sizes: &'a [usize],
    },
}

pub fn compose(op: Composition<'_>) -> Result<SmallGraph> {
    match op {
        Composition::Union(a, b) => a.disjoint_union(b),
        Composition::Join(a, b) => a.join(b),
        Composition::Complement(g) => Ok(g.complement()),
        Composition::Turan { k, n } => SmallGraph::turan(k, n),
        Composition::Blowup { base, sizes } => base.blowup(sizes),
    }
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_ORDER {
        Err(Error::OrderOutOfRange {
            order: n,
            min: 0,
            max: MAX_ORDER,
        })
    } else {
        Ok(())
    }
}

impl SmallGraph {
    /// `self` on vertices `0..a`, `other` shifted after it.
    pub fn disjoint_union(&self, other: &SmallGraph) -> Result<SmallGraph> {
        let (a, b) = (self.order(), other.order());
        check_order(a + b)?;
        let mut g = SmallGraph::empty(a + b)?;
        for (u, v) in self.edges() {
            g.set_edge(u, v, true);
        }
        for (u, v) in other.edges() {
            g.set_edge(a + u, a + v, true);
        }
        Ok(g)
    }

    pub fn join(&self, other: &SmallGraph) -> Result<SmallGraph> {
        let mut g = self.disjoint_union(other)?;
        let a = self.order();
        for u in 0..a {
            for v in 0..other.order() {
                g.set_edge(u, a + v, true);
            }
        }
        Ok(g)
    }

    /// Turán graph `T_k(n)`: vertex `v` lies in part `v mod k`.
    pub fn turan(k: usize, n: usize) -> Result<SmallGraph> {
        if k == 0 {
            return Err(Error::InvalidArgument("Turán graph needs k >= 1".into()));
        }
        check_order(n)?;
        let mut g = SmallGraph::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                if u % k != v % k {
                    g.set_edge(u, v, true);
                }
            }
        }
        Ok(g)
    }

    pub fn blowup(&self, sizes: &[usize]) -> Result<SmallGraph> {
        if sizes.len() != self.order() {
            return Err(Error::DimensionMismatch {
                expected: self.order(),
                found: sizes.len(),
            });
        }
        let total: usize = sizes.iter().sum();
        check_order(total)?;
        let part: Vec<usize> = sizes
            .iter()
            .enumerate()
            .flat_map(|(i, &s)| std::iter::repeat(i).take(s))
            .collect();
        let mut g = SmallGraph::empty(total)?;
        for u in 0..total {
            for v in u + 1..total {
                if part[u] != part[v] && self.has_edge(part[u], part[v]) {
                    g.set_edge(u, v, true);
                }
            }
        }
        Ok(g)
    }
}
