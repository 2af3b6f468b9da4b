//! Canonical labeling by exhaustive search inside a refined vertex partition.
//!
//! Vertices are first split into cells by an isomorphism-invariant colour
//! refinement (degree, then neighbour counts per cell, iterated to a fixed
//! point). The canonical code is the lexicographically smallest pair-bit
//! string over every relabeling that lists the cells in order; within a cell
//! all orders are tried. An optional prefix of vertices stays fixed, which is
//! what flags need.

use super::{SmallGraph, MAX_ORDER};

/// Isomorphism-invariant code of a graph: its order plus the minimal
/// upper-triangle bit string over cell-respecting relabelings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    pub n: u8,
    pub bits: u64,
}

pub fn canonical_code(g: &SmallGraph) -> CanonicalCode {
    let (_, bits) = canonical_with_fixed(g, 0);
    CanonicalCode {
        n: g.order() as u8,
        bits,
    }
}

/// Alias kept for the operation's public name.
pub fn canonical_form(g: &SmallGraph) -> CanonicalCode {
    canonical_code(g)
}

/// The relabeled representative whose pair bits equal the canonical code.
pub fn canonical_graph(g: &SmallGraph) -> SmallGraph {
    let (perm, _) = canonical_with_fixed(g, 0);
    g.permuted(&perm[..g.order()])
}

/// Minimal code over relabelings that keep vertices `0..fixed` in place.
/// Returns the optimal relabeling (new position -> old vertex) and its bits.
pub fn canonical_with_fixed(g: &SmallGraph, fixed: usize) -> ([usize; MAX_ORDER], u64) {
    let n = g.order();
    let cells = refine(g, fixed);
    let mut search = Search {
        g,
        n,
        cell_of_pos: [0; MAX_ORDER],
        cells: &cells,
        perm: [0; MAX_ORDER],
        best_perm: [0; MAX_ORDER],
        best: u64::MAX,
        found: false,
    };
    let mut p = 0;
    for (ci, c) in cells.iter().enumerate() {
        for _ in c {
            search.cell_of_pos[p] = ci;
            p += 1;
        }
    }
    search.run(0, 0);
    debug_assert!(search.found || n == 0);
    if n == 0 {
        return ([0; MAX_ORDER], 0);
    }
    (search.best_perm, search.best)
}

struct Search<'a> {
    g: &'a SmallGraph,
    n: usize,
    cell_of_pos: [usize; MAX_ORDER],
    cells: &'a [Vec<usize>],
    perm: [usize; MAX_ORDER],
    best_perm: [usize; MAX_ORDER],
    best: u64,
    found: bool,
}

impl Search<'_> {
    fn run(&mut self, pos: usize, used: u16) {
        if pos == self.n {
            let bits = self.bits();
            if !self.found || bits < self.best {
                self.best = bits;
                self.best_perm = self.perm;
                self.found = true;
            }
            return;
        }
        let cell = &self.cells[self.cell_of_pos[pos]];
        for &v in cell {
            if used & (1 << v) == 0 {
                self.perm[pos] = v;
                self.run(pos + 1, used | (1 << v));
            }
        }
    }

    fn bits(&self) -> u64 {
        let mut bits = 0u64;
        for i in 0..self.n {
            let row = self.g.neighbors(self.perm[i]);
            for j in i + 1..self.n {
                bits = (bits << 1) | u64::from((row >> self.perm[j]) & 1);
            }
        }
        bits
    }
}

/// Ordered cells of an equitable-style refinement. Vertices `0..fixed` are
/// singleton cells at the front, in order.
fn refine(g: &SmallGraph, fixed: usize) -> Vec<Vec<usize>> {
    let n = g.order();
    let fixed_mask: u16 = ((1u32 << fixed) - 1) as u16;
    // initial colour: fixed index, or (adjacency to fixed prefix, degree)
    let keys: Vec<(usize, u64)> = (0..n)
        .map(|v| {
            if v < fixed {
                (0, v as u64)
            } else {
                let to_fixed = u64::from(g.neighbors(v) & fixed_mask);
                (1, (to_fixed << 8) | g.degree(v) as u64)
            }
        })
        .collect();
    let mut colour = ranks(&keys);
    let mut ncolours = colour.iter().max().map_or(0, |m| m + 1);
    loop {
        let sig: Vec<(usize, Vec<u8>)> = (0..n)
            .map(|v| {
                let mut counts = vec![0u8; ncolours];
                let row = g.neighbors(v);
                for u in 0..n {
                    if (row >> u) & 1 == 1 {
                        counts[colour[u]] += 1;
                    }
                }
                (colour[v], counts)
            })
            .collect();
        let next = ranks(&sig);
        let next_count = next.iter().max().map_or(0, |m| m + 1);
        colour = next;
        if next_count == ncolours {
            break;
        }
        ncolours = next_count;
    }
    let mut cells = vec![Vec::new(); ncolours];
    for v in 0..n {
        cells[colour[v]].push(v);
    }
    cells
}

fn ranks<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("present"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smallgraph::named;

    fn brute_min(g: &SmallGraph) -> u64 {
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = u64::MAX;
        permute_all(&mut perm, 0, &mut |p| {
            best = best.min(g.permuted(p).pair_bits())
        });
        best
    }

    fn permute_all(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute_all(p, k + 1, f);
            p.swap(k, i);
        }
    }

    #[test]
    fn relabeled_paths_share_a_code() {
        let a = SmallGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let b = SmallGraph::from_edges(3, &[(1, 0), (0, 2)]).unwrap();
        assert_eq!(canonical_code(&a), canonical_code(&b));
    }

    #[test]
    fn p4_and_claw_differ() {
        assert_ne!(
            canonical_code(&named::path(4)),
            canonical_code(&named::star(3))
        );
    }

    #[test]
    fn canonical_graph_realises_code() {
        for g in [
            named::k221(),
            named::cycle(5),
            named::path(6),
            named::star(4),
        ] {
            let c = canonical_graph(&g);
            assert_eq!(c.pair_bits(), canonical_code(&g).bits);
            assert_eq!(canonical_code(&c), canonical_code(&g));
        }
    }

    #[test]
    fn code_is_at_least_global_minimum() {
        // restricted search can only find codes >= the unrestricted minimum
        for g in [named::k221(), named::cycle(5), named::path(5)] {
            assert!(canonical_code(&g).bits >= brute_min(&g));
        }
    }

    #[test]
    fn fixed_prefix_is_respected() {
        let g = named::path(4); // 0-1-2-3
        let (perm, _) = canonical_with_fixed(&g, 2);
        assert_eq!(&perm[..2], &[0, 1]);
    }
}
