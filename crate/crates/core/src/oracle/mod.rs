//! Brute-force checks: edge-local K(2,2,1) counts and the identity they
//! satisfy, an exact scan of the degree inequality behind the upper bound,
//! and exhaustive maximum-density searches over small graphs.

mod scan;
mod search;

pub use scan::{want_inequality_scan, want_inequality_scan_grid, KScan, ScanReport, ScanWitness};
pub use search::{
    am_gm_holds, max_density_search, max_density_table, regular_maximizer_report, search_csv,
    RegularityRow, SearchResult,
};

use rayon::prelude::*;

use crate::smallgraph::{count_induced, enumerate_graphs, named, SmallGraph};
use crate::{Error, Result};

/// Degree data of an edge `uv` together with its edge-local count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeLocalData {
    pub d_u: usize,
    pub d_v: usize,
    pub d_uv: usize,
    pub local: u64,
}

/// Number of induced K(2,2,1) copies in which `uv` joins the two classes of
/// size two. Such a copy is `u, v`, a common neighbour `x`, a neighbour `u'`
/// of `u` outside `N(v)`, and a neighbour `v'` of `v` outside `N(u)`, with
/// `u'v'`, `xu'`, `xv'` all edges.
pub fn edge_local_count(g: &SmallGraph, u: usize, v: usize) -> Result<u64> {
    let n = g.order();
    if u >= n || v >= n || !g.has_edge(u, v) {
        return Err(Error::InvalidArgument(format!("{u}{v} is not an edge")));
    }
    let nu = g.neighbors(u);
    let nv = g.neighbors(v);
    let common = nu & nv;
    let only_u = nu & !nv & !(1 << v);
    let only_v = nv & !nu & !(1 << u);
    let mut count = 0;
    for x in bits(common) {
        let nx = g.neighbors(x);
        for a in bits(only_u & nx) {
            count += u64::from((g.neighbors(a) & only_v & nx).count_ones());
        }
    }
    Ok(count)
}

fn bits(mask: u16) -> impl Iterator<Item = usize> {
    (0..16).filter(move |i| mask & (1 << i) != 0)
}

pub fn degree_local_data(g: &SmallGraph, u: usize, v: usize) -> Result<DegreeLocalData> {
    let local = edge_local_count(g, u, v)?;
    Ok(DegreeLocalData {
        d_u: g.degree(u),
        d_v: g.degree(v),
        d_uv: (g.neighbors(u) & g.neighbors(v)).count_ones() as usize,
        local,
    })
}

/// Outcome of checking `Σ_{uv ∈ E} I(u,v) = 4 · #K(2,2,1)` on every graph of
/// each order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    /// `(order, graphs checked)`.
    pub checked: Vec<(usize, usize)>,
    /// Graphs where the identity fails, with both sides.
    pub exceptions: Vec<(SmallGraph, u64, u64)>,
}

impl IdentityReport {
    pub fn total(&self) -> usize {
        self.checked.iter().map(|(_, c)| c).sum()
    }
}

/// Both sides of the identity for one graph.
pub fn counting_identity_sides(g: &SmallGraph) -> (u64, u64) {
    let lhs = g
        .edges()
        .map(|(u, v)| edge_local_count(g, u, v).expect("edge"))
        .sum();
    (lhs, 4 * count_induced(&named::k221(), g))
}

/// Checks the identity for every graph on `1..=max_n` vertices (`max_n ≤ 7`).
pub fn counting_identity_check(max_n: usize) -> Result<IdentityReport> {
    if max_n > crate::smallgraph::ENUMERATE_MAX {
        return Err(Error::OrderOutOfRange {
            order: max_n,
            min: 1,
            max: crate::smallgraph::ENUMERATE_MAX,
        });
    }
    let mut checked = Vec::new();
    let mut exceptions = Vec::new();
    for n in 1..=max_n {
        let graphs = enumerate_graphs(n)?;
        let mut bad: Vec<(SmallGraph, u64, u64)> = crate::parallel::install(|| {
            graphs
                .par_iter()
                .filter_map(|g| {
                    let (l, r) = counting_identity_sides(g);
                    (l != r).then_some((*g, l, r))
                })
                .collect()
        });
        checked.push((n, graphs.len()));
        exceptions.append(&mut bad);
    }
    Ok(IdentityReport {
        checked,
        exceptions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k221_has_one_copy_per_cross_edge() {
        let g = named::k221();
        let mut ones = 0;
        for (u, v) in g.edges() {
            let c = edge_local_count(&g, u, v).unwrap();
            assert!(c <= 1);
            ones += c;
        }
        assert_eq!(ones, 4);
        assert_eq!(counting_identity_sides(&g), (4, 4));
    }

    #[test]
    fn complete_graph_has_none() {
        let g = SmallGraph::complete(5).unwrap();
        assert!(g
            .edges()
            .all(|(u, v)| edge_local_count(&g, u, v).unwrap() == 0));
    }

    #[test]
    fn tripartite_six() {
        let g = SmallGraph::turan(3, 6).unwrap();
        for (u, v) in g.edges() {
            assert_eq!(edge_local_count(&g, u, v).unwrap(), 2);
        }
        assert_eq!(counting_identity_sides(&g), (24, 24));
    }

    #[test]
    fn rejects_non_edges() {
        let g = SmallGraph::empty(3).unwrap();
        assert!(edge_local_count(&g, 0, 1).is_err());
        assert!(edge_local_count(&g, 0, 7).is_err());
    }

    #[test]
    fn identity_on_small_orders() {
        let r = counting_identity_check(6).unwrap();
        assert!(r.exceptions.is_empty());
        assert_eq!(r.total(), 1 + 2 + 4 + 11 + 34 + 156);
        assert!(counting_identity_check(8).is_err());
    }
}
