//! Simple graphs on at most nine vertices.
//!
//! A [`SmallGraph`] stores one adjacency bitmask per vertex. Everything above
//! this module treats graphs as values: they are `Copy`, compare structurally,
//! and are turned into isomorphism-invariant [`CanonicalCode`]s when identity
//! up to relabeling matters.

mod canon;
mod compose;
pub(crate) mod count;
mod enumerate;
mod graph6;
mod pair;

pub use canon::{
    canonical_code, canonical_form, canonical_graph, canonical_with_fixed, CanonicalCode,
};
pub use compose::{compose, Composition};
pub use count::{count_induced, induced_counts, induced_density};
pub use enumerate::{class_index, enumerate_graphs, enumerate_graphs_extended, ENUMERATE_MAX};
pub use pair::PairEncoding;

use std::fmt;

use crate::{Error, Result};

/// Largest vertex count a [`SmallGraph`] can hold.
pub const MAX_ORDER: usize = 9;

/// Unlabeled-at-heart simple graph on `0..=9` vertices.
///
/// Vertex `v` is adjacent to `u` iff bit `u` of `rows[v]` is set. Zero-vertex
/// graphs exist only as the empty flag type.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmallGraph {
    n: u8,
    rows: [u16; MAX_ORDER],
}

impl SmallGraph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::OrderOutOfRange {
                order: n,
                min: 0,
                max: MAX_ORDER,
            });
        }
        Ok(SmallGraph {
            n: n as u8,
            rows: [0; MAX_ORDER],
        })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                g.set_edge(u, v, true);
            }
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u}, {v}) invalid for order {n}"
                )));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    /// Builds a graph from upper-triangle bits in lexicographic pair order,
    /// first pair in the most significant position.
    pub fn from_pair_bits(n: usize, bits: u64) -> Result<Self> {
        let mut g = Self::empty(n)?;
        let pairs = n * n.saturating_sub(1) / 2;
        let mut t = 0;
        for u in 0..n {
            for v in u + 1..n {
                if (bits >> (pairs - 1 - t)) & 1 == 1 {
                    g.set_edge(u, v, true);
                }
                t += 1;
            }
        }
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.rows[u] >> v) & 1 == 1
    }

    /// Sets or clears the edge `uv`. Panics on loops or out-of-range vertices.
    pub fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        assert!(
            u < self.order() && v < self.order() && u != v,
            "invalid pair ({u}, {v})"
        );
        if present {
            self.rows[u] |= 1 << v;
            self.rows[v] |= 1 << u;
        } else {
            self.rows[u] &= !(1 << v);
            self.rows[v] &= !(1 << u);
        }
    }

    /// Neighbourhood of `v` as a bitmask.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u16 {
        self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows[..self.order()]
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.order();
        (0..n).flat_map(move |u| {
            (u + 1..n)
                .filter(move |&v| self.has_edge(u, v))
                .map(move |v| (u, v))
        })
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order()).map(|v| self.degree(v)).collect()
    }

    pub fn complement(&self) -> Self {
        let n = self.order();
        let full: u16 = if n == 0 { 0 } else { ((1u32 << n) - 1) as u16 };
        let mut g = *self;
        for v in 0..n {
            g.rows[v] = !self.rows[v] & full & !(1 << v);
        }
        g
    }

    /// Subgraph induced on `vertices`, with vertex `i` of the result being
    /// `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let mut g = SmallGraph {
            n: vertices.len() as u8,
            rows: [0; MAX_ORDER],
        };
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.rows[i] |= 1 << j;
                    g.rows[j] |= 1 << i;
                }
            }
        }
        g
    }

    /// Subgraph induced on the vertices of `mask`, in increasing order.
    pub fn induced_mask(&self, mask: u16) -> Self {
        let mut verts = [0usize; MAX_ORDER];
        let mut k = 0;
        for v in 0..self.order() {
            if (mask >> v) & 1 == 1 {
                verts[k] = v;
                k += 1;
            }
        }
        self.induced(&verts[..k])
    }

    /// Relabels so that new vertex `i` is old vertex `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        debug_assert_eq!(perm.len(), self.order());
        self.induced(perm)
    }

    /// Upper-triangle bits in lexicographic pair order, first pair most
    /// significant.
    pub fn pair_bits(&self) -> u64 {
        let n = self.order();
        let mut bits = 0u64;
        for u in 0..n {
            for v in u + 1..n {
                bits = (bits << 1) | u64::from(self.has_edge(u, v));
            }
        }
        bits
    }

    /// Pair code string such as `"2221122222"` (2 = edge, 1 = non-edge).
    pub fn to_pair_code(&self) -> String {
        PairEncoding::from_graph(self).to_string()
    }

    pub fn from_pair_code(code: &str) -> Result<Self> {
        PairEncoding::parse(code)?.decode()
    }

    pub fn to_graph6(&self) -> String {
        graph6::encode(self)
    }

    pub fn from_graph6(s: &str) -> Result<Self> {
        graph6::decode(s)
    }

    /// Reads either a pair code (digits `1`/`2`, whitespace allowed) or graph6.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if !t.is_empty() && t.chars().all(|c| c == '1' || c == '2' || c.is_whitespace()) {
            Self::from_pair_code(t)
        } else {
            Self::from_graph6(t)
        }
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.order() == other.order()
            && self.edge_count() == other.edge_count()
            && canonical_code(self) == canonical_code(other)
    }
}

impl fmt::Debug for SmallGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SmallGraph({}; {})", self.order(), self.to_pair_code())
    }
}

/// Frequently used graphs.
pub mod named {
    use super::SmallGraph;

    /// Complete 3-partite graph with parts `{0,4}`, `{1,2}`, `{3}`, i.e. the
    /// decode of pair code `2221122222`.
    pub fn k221() -> SmallGraph {
        SmallGraph::from_pair_code("2221122222").expect("valid code")
    }

    pub fn edge() -> SmallGraph {
        SmallGraph::complete(2).expect("order 2")
    }

    pub fn path(n: usize) -> SmallGraph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        SmallGraph::from_edges(n, &edges).expect("valid path")
    }

    pub fn star(leaves: usize) -> SmallGraph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        SmallGraph::from_edges(leaves + 1, &edges).expect("valid star")
    }

    pub fn cycle(n: usize) -> SmallGraph {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        SmallGraph::from_edges(n, &edges).expect("valid cycle")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_is_involution_and_irreflexive() {
        let g = named::path(5);
        let c = g.complement();
        assert_eq!(c.complement(), g);
        assert_eq!(g.edge_count() + c.edge_count(), 10);
        for v in 0..5 {
            assert!(!c.has_edge(v, v));
        }
    }

    #[test]
    fn pair_bits_round_trip() {
        let g = named::k221();
        assert_eq!(SmallGraph::from_pair_bits(5, g.pair_bits()).unwrap(), g);
    }

    #[test]
    fn induced_mask_matches_induced() {
        let g = named::cycle(6);
        assert_eq!(g.induced_mask(0b101011), g.induced(&[0, 1, 3, 5]));
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(SmallGraph::from_edges(3, &[(0, 0)]).is_err());
        assert!(SmallGraph::from_edges(3, &[(0, 3)]).is_err());
        assert!(SmallGraph::empty(10).is_err());
    }

    #[test]
    fn parse_dispatches_on_alphabet() {
        let k5 = SmallGraph::complete(5).unwrap();
        assert_eq!(SmallGraph::parse("D~{").unwrap(), k5);
        assert_eq!(SmallGraph::parse("2 2 2 2 2 2 2 2 2 2").unwrap(), k5);
    }
}
