use num_traits::Zero;
use rayon::prelude::*;

use crate::exactmath::{format_decimal, Rational};
use crate::smallgraph::{count_induced, enumerate_graphs_extended, SmallGraph};
use crate::{Error, Result};

/// Largest order searched without opting in.
pub const SEARCH_MAX: usize = 8;
/// Largest order searched with the extended flag.
pub const SEARCH_MAX_EXTENDED: usize = 9;

/// Maximum induced count of `h` over graphs of order `n`, optionally with a
/// fixed number of edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub n: usize,
    pub edges: Option<usize>,
    pub max_count: u64,
    /// `max_count / C(n, |h|)`.
    pub density: Rational,
    /// One canonical representative per maximizing class, in class order.
    pub maximizers: Vec<SmallGraph>,
}

fn classes(n: usize, extended: bool) -> Result<&'static [SmallGraph]> {
    let max = if extended {
        SEARCH_MAX_EXTENDED
    } else {
        SEARCH_MAX
    };
    if !(1..=max).contains(&n) {
        return Err(Error::OrderOutOfRange {
            order: n,
            min: 1,
            max,
        });
    }
    enumerate_graphs_extended(n)
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

fn best(h: &SmallGraph, n: usize, edges: Option<usize>, graphs: &[&SmallGraph]) -> SearchResult {
    let counts: Vec<u64> =
        crate::parallel::install(|| graphs.par_iter().map(|g| count_induced(h, g)).collect());
    let max_count = counts.iter().copied().max().unwrap_or(0);
    let maximizers = graphs
        .iter()
        .zip(&counts)
        .filter(|(_, c)| **c == max_count)
        .map(|(g, _)| **g)
        .collect();
    let total = binomial(n, h.order());
    let density = if total == 0 {
        Rational::zero()
    } else {
        Rational::new(max_count.into(), total.into())
    };
    SearchResult {
        n,
        edges,
        max_count,
        density,
        maximizers,
    }
}

/// Exhaustive search over all graphs on `n ≤ 8` vertices (`n ≤ 9` when
/// `extended`), restricted to `edges` edges when given.
pub fn max_density_search(
    h: &SmallGraph,
    n: usize,
    edges: Option<usize>,
    extended: bool,
) -> Result<SearchResult> {
    let all = classes(n, extended)?;
    if let Some(m) = edges {
        let pairs = n * (n - 1) / 2;
        if m > pairs {
            return Err(Error::InvalidArgument(format!(
                "{m} edges do not fit on {n} vertices"
            )));
        }
    }
    let graphs: Vec<&SmallGraph> = all
        .iter()
        .filter(|g| edges.map_or(true, |m| g.edge_count() == m))
        .collect();
    Ok(best(h, n, edges, &graphs))
}

/// One [`SearchResult`] per edge count `0..=C(n,2)`.
pub fn max_density_table(h: &SmallGraph, n: usize, extended: bool) -> Result<Vec<SearchResult>> {
    let all = classes(n, extended)?;
    let pairs = n * (n - 1) / 2;
    let mut by_edges: Vec<Vec<&SmallGraph>> = vec![Vec::new(); pairs + 1];
    for g in all {
        by_edges[g.edge_count()].push(g);
    }
    Ok(by_edges
        .iter()
        .enumerate()
        .map(|(m, gs)| best(h, n, Some(m), gs))
        .collect())
}

/// CSV with header `n,edges,max_count,density,maximizers`; maximizers are
/// graph6 strings separated by spaces.
pub fn search_csv(rows: &[SearchResult]) -> String {
    let mut out = String::from("n,edges,max_count,density,maximizers\n");
    for r in rows {
        let edges = r.edges.map(|m| m.to_string()).unwrap_or_default();
        let g6: Vec<String> = r.maximizers.iter().map(|g| g.to_graph6()).collect();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.n,
            edges,
            r.max_count,
            format_decimal(&r.density, 6),
            g6.join(" ")
        ));
    }
    out
}

/// `x₁x₂x₃ ≤ ((x₁+x₂+x₃)/3)³`, evaluated exactly. Only meaningful for
/// non-negative inputs.
pub fn am_gm_holds(x1: &Rational, x2: &Rational, x3: &Rational) -> bool {
    let mean = (x1 + x2 + x3) / Rational::from_integer(3.into());
    x1 * x2 * x3 <= &mean * &mean * &mean
}

/// For each edge count `m`: the maximum of `Σ_{uv ∈ E}(n-d_u)(n-d_v)` and
/// whether a maximizer has the smallest degree spread available at `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityRow {
    pub edges: usize,
    pub max_value: u64,
    /// Smallest `Δ - δ` among maximizers.
    pub maximizer_spread: usize,
    /// Smallest `Δ - δ` among all graphs with `m` edges.
    pub min_spread: usize,
}

impl RegularityRow {
    pub fn most_regular_is_maximal(&self) -> bool {
        self.maximizer_spread == self.min_spread
    }
}

pub fn codegree_product_sum(g: &SmallGraph) -> u64 {
    let n = g.order();
    let deg = g.degrees();
    g.edges()
        .map(|(u, v)| ((n - deg[u]) * (n - deg[v])) as u64)
        .sum()
}

fn spread(g: &SmallGraph) -> usize {
    let deg = g.degrees();
    deg.iter().max().unwrap_or(&0) - deg.iter().min().unwrap_or(&0)
}

pub fn regular_maximizer_report(n: usize, extended: bool) -> Result<Vec<RegularityRow>> {
    let all = classes(n, extended)?;
    let pairs = n * (n - 1) / 2;
    let mut rows: Vec<Option<RegularityRow>> = vec![None; pairs + 1];
    for g in all {
        let m = g.edge_count();
        let (value, sp) = (codegree_product_sum(g), spread(g));
        let row = rows[m].get_or_insert(RegularityRow {
            edges: m,
            max_value: value,
            maximizer_spread: sp,
            min_spread: sp,
        });
        row.min_spread = row.min_spread.min(sp);
        if value > row.max_value {
            row.max_value = value;
            row.maximizer_spread = sp;
        } else if value == row.max_value {
            row.maximizer_spread = row.maximizer_spread.min(sp);
        }
    }
    Ok(rows.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};
    use crate::smallgraph::named;

    #[test]
    fn turan_graph_maximizes_at_its_edge_count() {
        let h = named::k221();
        let t = SmallGraph::turan(3, 6).unwrap();
        let r = max_density_search(&h, 6, Some(t.edge_count()), false).unwrap();
        assert_eq!(r.max_count, 6);
        assert!(r.maximizers.iter().any(|g| g.is_isomorphic(&t)));
        assert_eq!(r.density, int(1));
    }

    #[test]
    fn k221_in_k5_free_graphs() {
        // with no edge constraint the maximum on 5 vertices is K(2,2,1) itself
        let r = max_density_search(&named::k221(), 5, None, false).unwrap();
        assert_eq!(r.max_count, 1);
        assert_eq!(
            r.maximizers,
            vec![crate::smallgraph::canonical_graph(&named::k221())]
        );
    }

    #[test]
    fn table_and_csv() {
        let rows = max_density_table(&named::edge(), 4, false).unwrap();
        assert_eq!(rows.len(), 7);
        assert_eq!(rows[3].max_count, 3);
        let csv = search_csv(&rows[..1]);
        assert!(csv.starts_with("n,edges,max_count,density,maximizers\n4,0,0,0.000000,C?"));
    }

    #[test]
    fn order_limits() {
        assert!(max_density_search(&named::edge(), 9, None, false).is_err());
        assert!(max_density_search(&named::edge(), 10, None, true).is_err());
        assert!(max_density_search(&named::edge(), 4, Some(7), false).is_err());
    }

    #[test]
    fn am_gm_examples() {
        assert!(am_gm_holds(&int(1), &int(2), &int(3)));
        assert!(am_gm_holds(&int(2), &int(2), &int(2)));
        assert!(am_gm_holds(&rat(1, 3), &int(0), &int(5)));
    }

    #[test]
    fn regular_graphs_maximize_codegree_sum() {
        let rows = regular_maximizer_report(6, false).unwrap();
        assert_eq!(rows.len(), 16);
        // T(6,3) is regular with 12 edges
        assert_eq!(rows[12].min_spread, 0);
        assert!(rows[12].most_regular_is_maximal());
        assert_eq!(rows[12].max_value, 48);
        assert!(regular_maximizer_report(7, false)
            .unwrap()
            .iter()
            .all(|r| r.most_regular_is_maximal()));
    }
}
