//! graph6 for orders up to 62 (single-byte order prefix); this crate never
//! needs more than nine vertices.

use super::{SmallGraph, MAX_ORDER};
use crate::{Error, Result};

const HEADER: &str = ">>graph6<<";

pub(super) fn encode(g: &SmallGraph) -> String {
    let n = g.order();
    let mut out = String::with_capacity(2 + n * n / 12);
    out.push((63 + n as u8) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    // column-wise upper triangle: (0,1), (0,2), (1,2), (0,3), ...
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | u8::from(g.has_edge(u, v));
            filled += 1;
            if filled == 6 {
                out.push((63 + acc) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((63 + (acc << (6 - filled))) as char);
    }
    out
}

pub(super) fn decode(s: &str) -> Result<SmallGraph> {
    let s = s.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(Error::Graph6("empty string".into()));
    };
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!("byte {b:#04x} outside 63..=126")));
    }
    if first == 126 {
        return Err(Error::Graph6("multi-byte orders are not supported".into()));
    }
    let n = (first - 63) as usize;
    if n > MAX_ORDER {
        return Err(Error::OrderOutOfRange {
            order: n,
            min: 0,
            max: MAX_ORDER,
        });
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let body = &bytes[1..];
    let expected = pairs.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "expected {expected} data bytes for order {n}, found {}",
            body.len()
        )));
    }
    let bit = |t: usize| -> bool { ((body[t / 6] - 63) >> (5 - t % 6)) & 1 == 1 };
    let mut g = SmallGraph::empty(n)?;
    let mut t = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(t) {
                g.set_edge(u, v, true);
            }
            t += 1;
        }
    }
    for pad in pairs..expected * 6 {
        if bit(pad) {
            return Err(Error::Graph6("non-zero padding bits".into()));
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smallgraph::{canonical_code, enumerate_graphs, named};

    // independent transcription of the byte rules for one graph
    fn k5_by_hand() -> String {
        let n = (63u8 + 5) as char; // 'D'
        let six_ones = (63u8 + 0b111111) as char; // '~'
        let four_ones_padded = (63u8 + 0b111100) as char; // '{'
        [n, six_ones, four_ones_padded].iter().collect()
    }

    #[test]
    fn k5_encoding() {
        assert_eq!(encode(&SmallGraph::complete(5).unwrap()), k5_by_hand());
        assert_eq!(k5_by_hand(), "D~{");
    }

    #[test]
    fn known_strings() {
        assert_eq!(encode(&SmallGraph::empty(1).unwrap()), "@");
        assert_eq!(encode(&named::path(3)), "Bg");
        assert_eq!(decode("Bw").unwrap(), SmallGraph::complete(3).unwrap());
        assert_eq!(
            decode(">>graph6<<D~{\n").unwrap(),
            SmallGraph::complete(5).unwrap()
        );
    }

    #[test]
    fn round_trip_on_five_vertex_classes() {
        for g in enumerate_graphs(5).unwrap() {
            let back = decode(&encode(g)).unwrap();
            assert_eq!(canonical_code(&back), canonical_code(g));
        }
    }

    #[test]
    fn malformed_inputs() {
        assert!(decode("").is_err());
        assert!(decode("D~").is_err());
        assert!(decode("D~{?").is_err());
        assert!(decode("D~|").is_err()); // padding bit set
        assert!(decode("J??????????").is_err()); // order 11
        assert!(decode("D ~{").is_err());
    }
}
