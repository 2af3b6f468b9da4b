use std::fmt;

use super::{SmallGraph, MAX_ORDER};
use crate::{Error, Result};

/// Pair indicators in lexicographic pair order `12, 13, …, (n-1)n`, with
/// `2` for an edge and `1` for a non-edge. Labeled flag vertices come first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairEncoding {
    n: usize,
    values: Vec<u8>,
}

impl PairEncoding {
    /// Parses digits `1`/`2`, ignoring whitespace. The empty string is the
    /// single-vertex graph.
    pub fn parse(s: &str) -> Result<Self> {
        let mut values = Vec::new();
        for c in s.chars().filter(|c| !c.is_whitespace()) {
            match c {
                '1' => values.push(1),
                '2' => values.push(2),
                other => {
                    return Err(Error::PairEncoding(format!(
                        "unexpected character {other:?} in {s:?}"
                    )))
                }
            }
        }
        let n = order_for_pairs(values.len()).ok_or_else(|| {
            Error::PairEncoding(format!("{} pairs is not a triangular number", values.len()))
        })?;
        if n > MAX_ORDER {
            return Err(Error::OrderOutOfRange {
                order: n,
                min: 1,
                max: MAX_ORDER,
            });
        }
        Ok(PairEncoding { n, values })
    }

    pub fn from_graph(g: &SmallGraph) -> Self {
        let n = g.order();
        let mut values = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                values.push(if g.has_edge(u, v) { 2 } else { 1 });
            }
        }
        PairEncoding { n, values }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn decode(&self) -> Result<SmallGraph> {
        let mut g = SmallGraph::empty(self.n)?;
        let mut t = 0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.values[t] == 2 {
                    g.set_edge(u, v, true);
                }
                t += 1;
            }
        }
        Ok(g)
    }
}

impl fmt::Display for PairEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.values {
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

fn order_for_pairs(pairs: usize) -> Option<usize> {
    (1..=64).find(|n| n * (n - 1) / 2 == pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k221_anchor_decodes_to_two_disjoint_non_edges() {
        let g = SmallGraph::from_pair_code("2 2 2 1 1 2 2 2 2 2").unwrap();
        assert_eq!(g.order(), 5);
        let missing: Vec<_> = g.complement().edges().collect();
        assert_eq!(missing, vec![(0, 4), (1, 2)]);
    }

    #[test]
    fn length_must_be_triangular() {
        assert!(PairEncoding::parse("22").is_err());
        assert!(PairEncoding::parse("2x2").is_err());
        assert_eq!(PairEncoding::parse("").unwrap().order(), 1);
        assert_eq!(PairEncoding::parse("212").unwrap().order(), 3);
    }

    #[test]
    fn display_round_trip() {
        let p = PairEncoding::parse("1 2 2 2 2 1").unwrap();
        assert_eq!(p.to_string(), "122221");
        assert_eq!(PairEncoding::from_graph(&p.decode().unwrap()), p);
    }
}
