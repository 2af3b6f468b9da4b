//! Certificate documents and their verifiers.
//!
//! A certificate claims `scale · target ≤ bound` for every graph limit
//! satisfying its linear constraints. It lists linear terms
//! `left × (constraint + constant)` and square terms
//! `multiplier · ⟦F M Fᵀ⟧`; the verifier expands
//! `scale·target + Σ terms` (or `scale·(target + Σ terms)`) over all graphs
//! of the expansion order and checks every coefficient against the bound.
//! Parametric certificates carry coefficients that are rational functions
//! of `k` and are checked on the ray `k ≥ k₀`.

mod golden;
mod report;
mod schema;
mod verify;

pub use golden::{
    compare_coefficient_golden, compare_polynomial_golden, parse_coefficient_golden,
    parse_polynomial_golden, CoefficientGolden, GoldenComparison, PolynomialGolden,
    PolynomialGoldenEntry,
};
pub use report::{Failure, SlackTable, Verdict, VerificationReport};
pub use schema::load_certificate;
pub use verify::{
    expand_certificate, extremal_zero_check, verify, verify_density_certificate,
    verify_parametric_certificate,
};

use crate::exactmath::{KPolynomial, RatFunc, Rational};
use crate::flagalgebra::{Flag, FlagType};

/// Version written in the `format` field of certificate documents.
pub const FORMAT_VERSION: i64 = 1;

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub name: String,
    pub description: Option<String>,
    pub target: Flag,
    pub scale: RatFunc,
    pub bound: RatFunc,
    pub strict: bool,
    /// A differing bound quoted alongside the certified one; reported, never
    /// used for the verdict.
    pub claimed_bound: Option<Rational>,
    /// Whether the terms are already multiplied by `scale`.
    pub terms_scaled: bool,
    pub expansion_order: usize,
    /// Start of the ray on which a parametric certificate is checked.
    pub k0: Option<Rational>,
    /// Factor applied to `bound - expansion` to clear denominators.
    pub clear: Option<RatFunc>,
    /// Polynomial whose nonnegativity is equivalent to the 2×2 PSD condition.
    pub psd_polynomial: Option<KPolynomial>,
    /// Declared positive factor with `det = cofactor · psd_polynomial`.
    pub psd_cofactor: Option<RatFunc>,
    pub linear_terms: Vec<LinearTerm>,
    pub square_terms: Vec<SquareTerm>,
}

/// `left × (constraint + constant)`. With `sign_constrained` the second
/// factor is assumed nonnegative rather than zero, so the coefficients of
/// `left` must be nonnegative.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearTerm {
    pub left: Vec<(Flag, RatFunc)>,
    pub constraint: Vec<(Flag, RatFunc)>,
    pub constant: RatFunc,
    pub sign_constrained: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SquareTerm {
    pub multiplier: RatFunc,
    pub flag_type: FlagType,
    pub flags: Vec<Flag>,
    pub form: SquareForm,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SquareForm {
    /// `⟦(Σ vᵢ fᵢ)²⟧`.
    Vector(Vec<RatFunc>),
    /// `⟦F M Fᵀ⟧` with symmetric `M`.
    Matrix(Vec<Vec<RatFunc>>),
    /// `⟦F G C Gᵀ Fᵀ⟧`: `combine` is the `|F| × r` matrix `G`, `core` the
    /// symmetric `r × r` matrix `C`.
    Congruence {
        combine: Vec<Vec<RatFunc>>,
        core: Vec<Vec<RatFunc>>,
    },
}

impl SquareForm {
    /// The symmetric matrix of the quadratic form over the flags.
    pub fn full_matrix(&self) -> Vec<Vec<RatFunc>> {
        match self {
            SquareForm::Vector(v) => v
                .iter()
                .map(|a| v.iter().map(|b| a * b).collect())
                .collect(),
            SquareForm::Matrix(m) => m.clone(),
            SquareForm::Congruence { combine, core } => {
                let n = combine.len();
                let r = core.len();
                let mut gc = vec![vec![RatFunc::zero(); r]; n];
                for i in 0..n {
                    for j in 0..r {
                        for (l, row) in core.iter().enumerate() {
                            gc[i][j] = &gc[i][j] + &(&combine[i][l] * &row[j]);
                        }
                    }
                }
                let mut out = vec![vec![RatFunc::zero(); n]; n];
                for i in 0..n {
                    for j in 0..n {
                        for l in 0..r {
                            out[i][j] = &out[i][j] + &(&gc[i][l] * &combine[j][l]);
                        }
                    }
                }
                out
            }
        }
    }
}

impl Certificate {
    /// True when some coefficient depends on `k`.
    pub fn is_parametric(&self) -> bool {
        let mut all = vec![&self.scale, &self.bound];
        all.extend(self.clear.iter());
        for t in &self.linear_terms {
            all.extend(t.left.iter().map(|(_, c)| c));
            all.extend(t.constraint.iter().map(|(_, c)| c));
            all.push(&t.constant);
        }
        for s in &self.square_terms {
            all.push(&s.multiplier);
            match &s.form {
                SquareForm::Vector(v) => all.extend(v.iter()),
                SquareForm::Matrix(m) => all.extend(m.iter().flatten()),
                SquareForm::Congruence { combine, core } => {
                    all.extend(combine.iter().flatten());
                    all.extend(core.iter().flatten());
                }
            }
        }
        all.iter().any(|c| c.as_constant().is_none())
    }
}
