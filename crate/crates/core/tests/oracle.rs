use flagcert_core::oracle::{
    counting_identity_sides, degree_local_data, edge_local_count, max_density_search, want_inequality_scan_grid,
};
use flagcert_core::exactmath::{int, rat};
use flagcert_core::smallgraph::named;
use flagcert_core::SmallGraph;
use proptest::prelude::*;

fn graph(n: usize, bits: u64) -> SmallGraph {
    let pairs = n * (n - 1) / 2;
    SmallGraph::from_pair_bits(n, bits & ((1u64 << pairs) - 1)).unwrap()
}

// induced K(2,2,1) copies where uv joins the two size-two classes, by
// checking every 3-subset of the remaining vertices
fn local_by_subsets(g: &SmallGraph, u: usize, v: usize) -> u64 {
    let h = named::k221();
    let others: Vec<usize> = (0..g.order()).filter(|&x| x != u && x != v).collect();
    let mut count = 0;
    for i in 0..others.len() {
        for j in i + 1..others.len() {
            for l in j + 1..others.len() {
                let vs = [u, v, others[i], others[j], others[l]];
                let s = g.induced(&vs);
                // in K(2,2,1) an edge lies between the two pairs iff its ends
                // have degree 3
                if s.is_isomorphic(&h) && s.degree(0) == 3 && s.degree(1) == 3 {
                    count += 1;
                }
            }
        }
    }
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_local_count_matches_subsets(n in 5usize..=9, bits in any::<u64>()) {
        let g = graph(n, bits);
        for (u, v) in g.edges() {
            prop_assert_eq!(edge_local_count(&g, u, v).unwrap(), local_by_subsets(&g, u, v));
        }
    }

    #[test]
    fn counting_identity_on_larger_graphs(n in 8usize..=9, bits in any::<u64>()) {
        let (lhs, rhs) = counting_identity_sides(&graph(n, bits));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn local_counts_respect_the_degree_inequality(n in 5usize..=9, bits in any::<u64>()) {
        // I(u,v) ≤ (d_u - d_uv)(d_v - d_uv) d_uv
        let g = graph(n, bits);
        for (u, v) in g.edges() {
            let d = degree_local_data(&g, u, v).unwrap();
            let cap = ((d.d_u - d.d_uv) * (d.d_v - d.d_uv) * d.d_uv) as u64;
            prop_assert!(d.local <= cap);
        }
    }
}

#[test]
fn turan_graphs_are_maximizers_on_eight_vertices() {
    for k in 3..=4 {
        let t = SmallGraph::turan(k, 8).unwrap();
        let r = max_density_search(&named::k221(), 8, Some(t.edge_count()), false).unwrap();
        assert!(r.maximizers.iter().any(|g| g.is_isomorphic(&t)), "T_{k}(8)");
    }
}

#[test]
fn fine_grid_scan_is_clean() {
    let r = want_inequality_scan_grid(&[int(3), rat(10, 3), int(6)], 12, 6).unwrap();
    assert!(r.is_clean(), "{}", r.render());
}
