use std::fmt::Write as _;

use crate::exactmath::{
    format_decimal, format_rational, KPolynomial, RatFunc, Rational, RootBracket,
};
use crate::flagalgebra::{Flag, FlagVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        }
    }
}

/// A violated condition and the data that shows it.
#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub condition: String,
    pub witness: String,
}

/// `clear · (bound − expansion)` per graph; nonnegative everywhere exactly
/// when the certificate holds.
#[derive(Clone, Debug)]
pub enum SlackTable {
    Numeric(Vec<(Flag, Rational)>),
    /// Polynomials in `k` with the isolated largest real root, if any.
    Parametric(Vec<(Flag, KPolynomial, Option<RootBracket>)>),
}

#[derive(Clone, Debug)]
pub enum Expansion {
    Numeric(FlagVector<Rational>),
    Parametric(FlagVector<RatFunc>),
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub certificate: String,
    pub k0: Option<Rational>,
    pub scale: RatFunc,
    pub bound: RatFunc,
    pub strict: bool,
    /// `scale · target + terms`, over all graphs of the expansion order.
    pub expansion: Expansion,
    pub slack: SlackTable,
    /// Largest scaled coefficient (numeric certificates only).
    pub max_coefficient: Option<(Flag, Rational)>,
    /// Graphs whose slack vanishes (identically, for parametric ones).
    pub zero_set: Vec<Flag>,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn verdict(&self) -> Verdict {
        if self.failures.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict() == Verdict::Pass
    }

    /// Scaled expansion coefficients, when numeric.
    pub fn numeric_expansion(&self) -> Option<&FlagVector<Rational>> {
        match &self.expansion {
            Expansion::Numeric(v) => Some(v),
            Expansion::Parametric(_) => None,
        }
    }

    pub fn parametric_expansion(&self) -> Option<&FlagVector<RatFunc>> {
        match &self.expansion {
            Expansion::Parametric(v) => Some(v),
            Expansion::Numeric(_) => None,
        }
    }

    /// Plain-text report followed by `key=value` trailer lines.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        let _ = writeln!(w, "certificate: {}", self.certificate);
        match &self.k0 {
            Some(k0) => {
                let _ = writeln!(w, "mode: parametric, k >= {}", format_rational(k0));
            }
            None => {
                let _ = writeln!(w, "mode: numeric");
            }
        }
        let rel = if self.strict { "<" } else { "<=" };
        let _ = writeln!(w, "claim: {} * target {rel} {}", self.scale, self.bound);
        match &self.slack {
            SlackTable::Numeric(rows) => {
                let _ = writeln!(w, "graphs in expansion: {}", rows.len());
            }
            SlackTable::Parametric(rows) => {
                let _ = writeln!(w, "graphs in expansion: {}", rows.len());
                let _ = writeln!(
                    w,
                    "slack polynomials (graph | polynomial | largest real root):"
                );
                for (f, p, root) in rows {
                    let r = match root {
                        Some(b) => format_decimal(&b.midpoint(), 14),
                        None => "-".into(),
                    };
                    let _ = writeln!(w, "  {f} | {p} | {r}");
                }
            }
        }
        if let Some((f, c)) = &self.max_coefficient {
            let _ = writeln!(w, "max scaled coefficient: {} at {f}", format_decimal(c, 6));
        }
        let zeros: Vec<String> = self.zero_set.iter().map(|f| f.to_string()).collect();
        let _ = writeln!(w, "zero set ({}): {}", zeros.len(), zeros.join(" "));
        for n in &self.notes {
            let _ = writeln!(w, "note: {n}");
        }
        if self.failures.is_empty() {
            let _ = writeln!(w, "failures: none");
        } else {
            let _ = writeln!(w, "failures:");
            for f in &self.failures {
                let _ = writeln!(w, "  {}: {}", f.condition, f.witness);
            }
        }
        let _ = writeln!(w, "--");
        let _ = writeln!(w, "verdict={}", self.verdict().as_str());
        if let Some((f, c)) = &self.max_coefficient {
            let _ = writeln!(w, "max_coefficient={}", format_decimal(c, 6));
            let _ = writeln!(w, "max_graph={f}");
        }
        let _ = writeln!(w, "zero_set_size={}", self.zero_set.len());
        let _ = writeln!(w, "failures={}", self.failures.len());
        out
    }
}
