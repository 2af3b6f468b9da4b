use std::sync::OnceLock;

use rayon::prelude::*;

use super::{canonical_code, canonical_graph, SmallGraph, MAX_ORDER};
use crate::{Error, Result};

/// Largest order accepted by [`enumerate_graphs`].
pub const ENUMERATE_MAX: usize = 7;

static CLASSES: [OnceLock<Vec<SmallGraph>>; MAX_ORDER + 1] =
    [const { OnceLock::new() }; MAX_ORDER + 1];

/// One canonical representative per isomorphism class on `order` vertices,
/// sorted by canonical code. Accepts `1..=7`.
pub fn enumerate_graphs(order: usize) -> Result<&'static [SmallGraph]> {
    if !(1..=ENUMERATE_MAX).contains(&order) {
        return Err(Error::OrderOutOfRange {
            order,
            min: 1,
            max: ENUMERATE_MAX,
        });
    }
    enumerate_graphs_extended(order)
}

/// Same as [`enumerate_graphs`] for `0..=9`. Orders 8 and 9 are expensive
/// the first time (12346 and 274668 classes).
pub fn enumerate_graphs_extended(order: usize) -> Result<&'static [SmallGraph]> {
    if order > MAX_ORDER {
        return Err(Error::OrderOutOfRange {
            order,
            min: 0,
            max: MAX_ORDER,
        });
    }
    if let Some(v) = CLASSES[order].get() {
        return Ok(v);
    }
    let built = if order == 0 {
        vec![SmallGraph::empty(0)?]
    } else {
        let parents = enumerate_graphs_extended(order - 1)?;
        extend(parents)
    };
    Ok(CLASSES[order].get_or_init(|| built))
}

// every class on n vertices arises from some class on n-1 vertices plus a
// new vertex with an arbitrary neighbourhood
fn extend(parents: &[SmallGraph]) -> Vec<SmallGraph> {
    let n = parents[0].order() + 1;
    let mut children: Vec<SmallGraph> = crate::parallel::install(|| {
        parents
            .par_iter()
            .flat_map_iter(|p| {
                let mut local: Vec<SmallGraph> = (0u32..1 << (n - 1))
                    .map(|mask| {
                        let mut g = SmallGraph::empty(n).expect("order checked");
                        for (u, v) in p.edges() {
                            g.set_edge(u, v, true);
                        }
                        for u in 0..n - 1 {
                            if (mask >> u) & 1 == 1 {
                                g.set_edge(u, n - 1, true);
                            }
                        }
                        canonical_graph(&g)
                    })
                    .collect();
                local.sort_by_key(|g| g.pair_bits());
                local.dedup();
                local
            })
            .collect()
    });
    children.sort_by_key(|g| g.pair_bits());
    children.dedup();
    children
}

/// Position of `g`'s class inside `enumerate_graphs_extended(g.order())`.
pub fn class_index(g: &SmallGraph) -> usize {
    let classes = enumerate_graphs_extended(g.order()).expect("order within range");
    let code = canonical_code(g).bits;
    classes
        .binary_search_by_key(&code, |c| c.pair_bits())
        .expect("every graph has a class")
}
