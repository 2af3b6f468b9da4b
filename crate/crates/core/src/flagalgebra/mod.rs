//! Typed flags and the flag-algebra operations needed to expand certificates:
//! bases, the product, the unlabeling operator and lifting to a common order.
//!
//! A flag is a graph whose first `labels` vertices are labeled in order; the
//! type of the flag is the graph induced on that prefix. Flags are stored in
//! a canonical form that keeps the labeled prefix fixed, so equality is flag
//! isomorphism.

mod basis;
mod coeff;
mod ops;
mod vector;

use std::fmt;
use std::str::FromStr;

pub use basis::{flag_basis, FlagBasis, MAX_FLAG_ORDER};
pub use coeff::Coeff;
pub use ops::{expand_quadratic_form, expand_square, flag_product, lift, unlabel, unlabel_factor};
pub use vector::FlagVector;

use crate::smallgraph::{canonical_with_fixed, PairEncoding, SmallGraph};
use crate::{Error, Result};

/// The labeled graph shared by all flags of one type. Its vertex order is
/// significant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlagType {
    sigma: SmallGraph,
}

impl FlagType {
    pub fn new(sigma: SmallGraph) -> Self {
        FlagType { sigma }
    }

    /// The type with no labeled vertices.
    pub fn empty() -> Self {
        FlagType {
            sigma: SmallGraph::empty(0).expect("order 0 is valid"),
        }
    }

    pub fn graph(&self) -> &SmallGraph {
        &self.sigma
    }

    pub fn order(&self) -> usize {
        self.sigma.order()
    }

    pub fn is_empty(&self) -> bool {
        self.order() == 0
    }
}

impl fmt::Debug for FlagType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FlagType({}; {})",
            self.order(),
            self.sigma.to_pair_code()
        )
    }
}

/// Graph with an ordered prefix of labeled vertices, kept canonical.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flag {
    graph: SmallGraph,
    labels: u8,
}

impl Flag {
    /// Flag whose labeled vertices are `0..labels` of `graph`, in order.
    pub fn new(graph: SmallGraph, labels: usize) -> Result<Self> {
        if labels > graph.order() {
            return Err(Error::InvalidArgument(format!(
                "{labels} labels on a graph with {} vertices",
                graph.order()
            )));
        }
        Ok(Self::canonical(&graph, labels))
    }

    /// Flag with the given ordered, injective list of labeled vertices.
    pub fn with_labels(graph: SmallGraph, labels: &[usize]) -> Result<Self> {
        let n = graph.order();
        let mut seen = 0u16;
        for &v in labels {
            if v >= n || seen & (1 << v) != 0 {
                return Err(Error::InvalidArgument(format!(
                    "labels {labels:?} are not distinct vertices of a graph on {n}"
                )));
            }
            seen |= 1 << v;
        }
        let mut perm: Vec<usize> = labels.to_vec();
        perm.extend((0..n).filter(|v| seen & (1 << v) == 0));
        Ok(Self::canonical(&graph.permuted(&perm), labels.len()))
    }

    /// Flag over the empty type.
    pub fn unlabeled(graph: SmallGraph) -> Self {
        Self::canonical(&graph, 0)
    }

    /// The order-0 flag, the unit of the empty-type algebra.
    pub fn unit() -> Self {
        Self::unlabeled(SmallGraph::empty(0).expect("order 0 is valid"))
    }

    pub(crate) fn canonical(graph: &SmallGraph, labels: usize) -> Self {
        let n = graph.order();
        let (perm, _) = canonical_with_fixed(graph, labels);
        Flag {
            graph: graph.permuted(&perm[..n]),
            labels: labels as u8,
        }
    }

    pub fn graph(&self) -> &SmallGraph {
        &self.graph
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn label_count(&self) -> usize {
        self.labels as usize
    }

    pub fn flag_type(&self) -> FlagType {
        let prefix: Vec<usize> = (0..self.label_count()).collect();
        FlagType::new(self.graph.induced(&prefix))
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order() == 0 {
            return write!(f, "unit");
        }
        let code = self.graph.to_pair_code();
        if self.labels == 0 {
            write!(f, "{code}")
        } else {
            write!(f, "σ={};{code}", self.labels)
        }
    }
}

impl fmt::Debug for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Flag({self})")
    }
}

/// Accepts `"σ=2;2 1 1 2 2 1"` (or `s=2;…`), a bare pair code for an
/// unlabeled flag, `"unit"` for the order-0 flag, and `"vertex"` for the
/// unlabeled single vertex. A one-vertex flag with its vertex labeled is
/// `"σ=1;"`.
impl FromStr for Flag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "unit" => return Ok(Flag::unit()),
            "vertex" => return Ok(Flag::unlabeled(SmallGraph::empty(1)?)),
            _ => {}
        }
        let (labels, code) = match t.split_once(';') {
            Some((head, code)) => {
                let head = head.trim();
                let count = head
                    .strip_prefix("σ=")
                    .or_else(|| head.strip_prefix("s="))
                    .ok_or_else(|| Error::PairEncoding(format!("bad flag prefix in {s:?}")))?;
                let count: usize = count
                    .trim()
                    .parse()
                    .map_err(|_| Error::PairEncoding(format!("bad label count in {s:?}")))?;
                (count, code)
            }
            None => (0, t),
        };
        if code.trim().is_empty() && labels == 0 {
            return Err(Error::PairEncoding(format!("empty flag {s:?}")));
        }
        let graph = PairEncoding::parse(code)?.decode()?;
        Flag::new(graph, labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_labeled_flags() {
        let f: Flag = "σ=2;2 1 1 2 2 1".parse().unwrap();
        assert_eq!(f.order(), 4);
        assert_eq!(f.label_count(), 2);
        assert_eq!(f.flag_type().graph().edge_count(), 1);
        let g: Flag = "s=2;211221".parse().unwrap();
        assert_eq!(f, g);
        assert_eq!("σ=1;".parse::<Flag>().unwrap().order(), 1);
        assert_eq!("unit".parse::<Flag>().unwrap(), Flag::unit());
        assert!("σ=x;22".parse::<Flag>().is_err());
        assert!("σ=4;222".parse::<Flag>().is_err());
    }

    #[test]
    fn labels_are_fixed_by_isomorphism() {
        // cherry rooted at the centre vs. at a leaf
        let path = SmallGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let centre = Flag::with_labels(path, &[1]).unwrap();
        let leaf = Flag::with_labels(path, &[0]).unwrap();
        let other_leaf = Flag::with_labels(path, &[2]).unwrap();
        assert_ne!(centre, leaf);
        assert_eq!(leaf, other_leaf);
        assert_eq!(Flag::unlabeled(path), Flag::with_labels(path, &[]).unwrap());
    }

    #[test]
    fn display_round_trips() {
        for s in ["σ=2;211221", "2221122222", "unit", "σ=3;112122"] {
            let f: Flag = s.parse().unwrap();
            let again: Flag = f.to_string().parse().unwrap();
            assert_eq!(f, again);
        }
    }
}
