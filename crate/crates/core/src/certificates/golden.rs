//! Reference transcriptions to compare verification reports against.
//!
//! Coefficient files hold lines `pair-code value`; polynomial files hold
//! `pair-code | [c0, c1, ...] | largest-root` with `[]` and `-` for a zero
//! polynomial. Blank lines and `#` comments are ignored. Pair codes need not
//! be canonical.

use std::collections::HashMap;

use num_traits::Signed;

use super::{SlackTable, VerificationReport};
use crate::exactmath::{format_decimal, format_rational, parse_rational, KPolynomial, Rational};
use crate::flagalgebra::Flag;
use crate::smallgraph::SmallGraph;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientGolden {
    pub entries: Vec<(Flag, Rational)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialGoldenEntry {
    pub flag: Flag,
    pub polynomial: KPolynomial,
    pub root: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialGolden {
    pub entries: Vec<PolynomialGoldenEntry>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct GoldenComparison {
    pub compared: usize,
    /// Largest absolute difference seen (values or roots).
    pub max_deviation: Option<Rational>,
    pub mismatches: Vec<String>,
    /// Graphs of the expansion with no golden entry.
    pub unlisted: Vec<Flag>,
}

impl GoldenComparison {
    pub fn is_match(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn deviation(&mut self, d: Rational) {
        if self.max_deviation.as_ref().map_or(true, |m| d > *m) {
            self.max_deviation = Some(d);
        }
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn graph_flag(code: &str, line: usize) -> Result<Flag> {
    let g = SmallGraph::from_pair_code(code)
        .map_err(|e| Error::schema(format!("line {line}"), e.to_string()))?;
    Ok(Flag::unlabeled(g))
}

fn check_unique(flags: impl Iterator<Item = Flag>) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for f in flags {
        if !seen.insert(f) {
            return Err(Error::schema("golden", format!("{f} is listed twice")));
        }
    }
    Ok(())
}

pub fn parse_coefficient_golden(text: &str) -> Result<CoefficientGolden> {
    let mut entries = Vec::new();
    for (line, l) in content_lines(text) {
        let mut parts = l.split_whitespace();
        let (Some(code), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::schema(
                format!("line {line}"),
                "expected `pair-code value`",
            ));
        };
        let value = parse_rational(value.trim_start_matches('+'))
            .map_err(|_| Error::schema(format!("line {line}"), format!("bad value {value:?}")))?;
        entries.push((graph_flag(code, line)?, value));
    }
    check_unique(entries.iter().map(|(f, _)| *f))?;
    Ok(CoefficientGolden { entries })
}

pub fn parse_polynomial_golden(text: &str) -> Result<PolynomialGolden> {
    let mut entries = Vec::new();
    for (line, l) in content_lines(text) {
        let fields: Vec<&str> = l.split('|').map(str::trim).collect();
        let [code, coeffs, root] = fields[..] else {
            return Err(Error::schema(
                format!("line {line}"),
                "expected `pair-code | [coefficients] | root`",
            ));
        };
        let inner = coeffs
            .strip_prefix('[')
            .and_then(|c| c.strip_suffix(']'))
            .ok_or_else(|| {
                Error::schema(format!("line {line}"), "coefficients must be bracketed")
            })?;
        let coeffs = inner
            .split(',')
            .map(str::trim)
            .filter(|c| !c.is_empty())
            .map(|c| {
                parse_rational(c).map_err(|_| {
                    Error::schema(format!("line {line}"), format!("bad coefficient {c:?}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let root =
            match root {
                "-" => None,
                r => Some(parse_rational(r).map_err(|_| {
                    Error::schema(format!("line {line}"), format!("bad root {r:?}"))
                })?),
            };
        entries.push(PolynomialGoldenEntry {
            flag: graph_flag(code, line)?,
            polynomial: KPolynomial::new(coeffs),
            root,
        });
    }
    check_unique(entries.iter().map(|e| e.flag))?;
    Ok(PolynomialGolden { entries })
}

/// Compares scaled expansion coefficients with `tolerance`.
pub fn compare_coefficient_golden(
    report: &VerificationReport,
    golden: &CoefficientGolden,
    tolerance: &Rational,
) -> Result<GoldenComparison> {
    let expansion = report.numeric_expansion().ok_or_else(|| {
        Error::Unsupported("coefficient goldens apply to numeric certificates".into())
    })?;
    let mut out = GoldenComparison::default();
    let mut listed = HashMap::new();
    for (f, want) in &golden.entries {
        listed.insert(*f, ());
        let Some(got) = expansion.coeff_of(f) else {
            out.mismatches
                .push(format!("{f}: not a graph of the expansion order"));
            continue;
        };
        out.compared += 1;
        let d = (got - want).abs();
        if d > *tolerance {
            out.mismatches.push(format!(
                "{f}: expected {}, computed {}",
                format_rational(want),
                format_decimal(got, 6)
            ));
        }
        out.deviation(d);
    }
    out.unlisted = expansion
        .flags()
        .iter()
        .filter(|f| !listed.contains_key(f))
        .copied()
        .collect();
    Ok(out)
}

/// Compares slack polynomials exactly and largest roots within `root_tolerance`.
pub fn compare_polynomial_golden(
    report: &VerificationReport,
    golden: &PolynomialGolden,
    root_tolerance: &Rational,
) -> Result<GoldenComparison> {
    let SlackTable::Parametric(rows) = &report.slack else {
        return Err(Error::Unsupported(
            "polynomial goldens apply to parametric certificates".into(),
        ));
    };
    let by_flag: HashMap<Flag, usize> = rows
        .iter()
        .enumerate()
        .map(|(i, (f, _, _))| (*f, i))
        .collect();
    let mut out = GoldenComparison::default();
    for e in &golden.entries {
        let Some(&i) = by_flag.get(&e.flag) else {
            out.mismatches
                .push(format!("{}: not a graph of the expansion order", e.flag));
            continue;
        };
        let (_, p, bracket) = &rows[i];
        out.compared += 1;
        if *p != e.polynomial {
            out.mismatches.push(format!(
                "{}: expected {}, computed {}",
                e.flag, e.polynomial, p
            ));
        }
        match (&e.root, bracket) {
            (Some(want), Some(b)) => {
                let d = (b.midpoint() - want).abs();
                if d > *root_tolerance {
                    out.mismatches.push(format!(
                        "{}: largest root {} differs from {}",
                        e.flag,
                        format_decimal(&b.midpoint(), 14),
                        format_rational(want)
                    ));
                }
                out.deviation(d);
            }
            (None, None) => {}
            (Some(_), None) => out
                .mismatches
                .push(format!("{}: expected a real root, found none", e.flag)),
            (None, Some(_)) => out
                .mismatches
                .push(format!("{}: expected no root, found one", e.flag)),
        }
    }
    let listed: HashMap<Flag, ()> = golden.entries.iter().map(|e| (e.flag, ())).collect();
    out.unlisted = rows
        .iter()
        .map(|(f, _, _)| *f)
        .filter(|f| !listed.contains_key(f))
        .collect();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_lines() {
        let g = parse_coefficient_golden("# c\n-98.737 x\n").unwrap_err();
        assert!(matches!(g, Error::Schema { .. }));
        let g =
            parse_coefficient_golden("# comment\n\n2221122222 +44.947\n2222222222 -1.5\n").unwrap();
        assert_eq!(g.entries.len(), 2);
        assert_eq!(g.entries[0].1, parse_rational("44.947").unwrap());
    }

    #[test]
    fn duplicate_classes_are_rejected() {
        // the same graph under two labelings
        assert!(parse_coefficient_golden("221 1\n122 2\n").is_err());
    }

    #[test]
    fn polynomial_lines() {
        let g = parse_polynomial_golden("1111111112 | [24, -168, 12] | 3.5\n2222222222 | [] | -\n")
            .unwrap();
        assert_eq!(g.entries.len(), 2);
        assert_eq!(
            g.entries[0].polynomial,
            KPolynomial::from_ints(&[24, -168, 12])
        );
        assert!(g.entries[1].polynomial.is_zero() && g.entries[1].root.is_none());
        assert!(parse_polynomial_golden("111 | 1, 2 | -\n").is_err());
    }
}
