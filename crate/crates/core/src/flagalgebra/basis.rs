use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::{Flag, FlagType};
use crate::smallgraph::enumerate_graphs_extended;
use crate::{Error, Result};

/// Largest flag order supported by bases, products and lifts.
pub const MAX_FLAG_ORDER: usize = 6;

/// All flags of one type and order, one per isomorphism class, ordered by
/// their canonical pair bits.
#[derive(Debug)]
pub struct FlagBasis {
    ty: FlagType,
    order: usize,
    flags: Vec<Flag>,
    index: HashMap<Flag, usize>,
}

impl FlagBasis {
    pub fn flag_type(&self) -> &FlagType {
        &self.ty
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn flags(&self) -> &[Flag] {
        &self.flags
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn index_of(&self, f: &Flag) -> Option<usize> {
        self.index.get(f).copied()
    }
}

impl PartialEq for FlagBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ty == other.ty && self.order == other.order
    }
}

type BasisCache = Mutex<HashMap<(FlagType, usize), Arc<FlagBasis>>>;

fn cache() -> &'static BasisCache {
    static CACHE: OnceLock<BasisCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Basis of flags of type `ty` on `order` vertices, `|ty| <= order <= 6`.
pub fn flag_basis(ty: &FlagType, order: usize) -> Result<Arc<FlagBasis>> {
    if order < ty.order() || order > MAX_FLAG_ORDER {
        return Err(Error::OrderOutOfRange {
            order,
            min: ty.order(),
            max: MAX_FLAG_ORDER,
        });
    }
    if let Some(b) = cache().lock().expect("basis cache").get(&(*ty, order)) {
        return Ok(b.clone());
    }
    let built = Arc::new(build(ty, order)?);
    Ok(cache()
        .lock()
        .expect("basis cache")
        .entry((*ty, order))
        .or_insert(built)
        .clone())
}

fn build(ty: &FlagType, order: usize) -> Result<FlagBasis> {
    let s = ty.order();
    let mut set = BTreeSet::new();
    for g in enumerate_graphs_extended(order)? {
        for_each_embedding(g, ty, |tuple| {
            set.insert(Flag::with_labels(*g, tuple).expect("tuple is injective"));
        });
    }
    let mut flags: Vec<Flag> = set.into_iter().collect();
    flags.sort_by_key(|f| f.graph().pair_bits());
    debug_assert!(flags.iter().all(|f| f.label_count() == s));
    let index = flags.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    Ok(FlagBasis {
        ty: *ty,
        order,
        flags,
        index,
    })
}

/// Calls `f` with every injective tuple of vertices of `g` that induces `ty`
/// in label order.
pub(crate) fn for_each_embedding(
    g: &crate::SmallGraph,
    ty: &FlagType,
    mut f: impl FnMut(&[usize]),
) {
    let s = ty.order();
    let mut tuple = Vec::with_capacity(s);
    extend_tuple(g, ty.graph(), s, &mut tuple, 0, &mut f);
}

fn extend_tuple(
    g: &crate::SmallGraph,
    sigma: &crate::SmallGraph,
    s: usize,
    tuple: &mut Vec<usize>,
    used: u16,
    f: &mut impl FnMut(&[usize]),
) {
    let i = tuple.len();
    if i == s {
        f(tuple);
        return;
    }
    for v in 0..g.order() {
        if used & (1 << v) != 0 {
            continue;
        }
        if (0..i).all(|j| g.has_edge(tuple[j], v) == sigma.has_edge(j, i)) {
            tuple.push(v);
            extend_tuple(g, sigma, s, tuple, used | (1 << v), f);
            tuple.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smallgraph::{named, SmallGraph};

    #[test]
    fn empty_type_matches_graph_classes() {
        let b = flag_basis(&FlagType::empty(), 4).unwrap();
        assert_eq!(b.len(), 11);
        assert_eq!(flag_basis(&FlagType::empty(), 0).unwrap().len(), 1);
    }

    #[test]
    fn single_vertex_type_order_two() {
        let ty = FlagType::new(SmallGraph::empty(1).unwrap());
        assert_eq!(flag_basis(&ty, 2).unwrap().len(), 2);
    }

    #[test]
    fn rooted_edge_flags_of_order_three() {
        // rooted at one vertex: K3, cherry at centre, cherry at leaf, edge+isolated
        // with root on edge, edge+isolated with root isolated, empty; over the
        // edge type the third vertex sees neither, the first, the second or both
        let ty = FlagType::new(SmallGraph::empty(1).unwrap());
        assert_eq!(flag_basis(&ty, 3).unwrap().len(), 6);
        let edge_ty = FlagType::new(named::edge());
        assert_eq!(flag_basis(&edge_ty, 3).unwrap().len(), 4);
    }

    #[test]
    fn rejects_out_of_range_orders() {
        let ty = FlagType::new(named::edge());
        assert!(flag_basis(&ty, 1).is_err());
        assert!(flag_basis(&ty, 7).is_err());
    }

    #[test]
    fn index_is_consistent() {
        let ty = FlagType::new(named::edge());
        let b = flag_basis(&ty, 4).unwrap();
        for (i, f) in b.flags().iter().enumerate() {
            assert_eq!(b.index_of(f), Some(i));
            assert_eq!(f.flag_type(), ty);
        }
    }
}
