use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use super::report::Expansion;
use super::{
    Certificate, Failure, LinearTerm, SlackTable, SquareForm, SquareTerm, VerificationReport,
};
use crate::exactmath::{
    format_decimal, format_rational, isolate_largest_real_root, nonneg_on_ray, positive_on_ray,
    psd_check, KPolynomial, PsdVerdict, RatFunc, Rational, SymMatrix,
};
use crate::flagalgebra::{expand_quadratic_form, flag_basis, Coeff, Flag, FlagType, FlagVector};
use crate::smallgraph::{canonical_code, SmallGraph};
use crate::{Error, Result};

/// Expands `scale·target + Σ terms` (or `scale·(target + Σ terms)`) over
/// all graphs of the certificate's expansion order, converting every
/// coefficient with `conv`.
pub fn expand_certificate<C: Coeff>(
    cert: &Certificate,
    conv: impl Fn(&RatFunc) -> C,
) -> Result<FlagVector<C>> {
    let order = cert.expansion_order;
    let target = FlagVector::<C>::from_flag(&cert.target)?.lift(order)?;
    let mut terms = FlagVector::<C>::zero(flag_basis(&FlagType::empty(), order)?);
    for t in &cert.linear_terms {
        terms = terms.add(&linear_expansion(t, &conv)?.lift(order)?)?;
    }
    for s in &cert.square_terms {
        terms = terms.add(&square_expansion(s, &conv)?.lift(order)?)?;
    }
    let scale = conv(&cert.scale);
    if cert.terms_scaled {
        target.scale(&scale).add(&terms)
    } else {
        Ok(target.add(&terms)?.scale(&scale))
    }
}

fn linear_expansion<C: Coeff>(
    t: &LinearTerm,
    conv: &impl Fn(&RatFunc) -> C,
) -> Result<FlagVector<C>> {
    let left: Vec<(Flag, C)> = t.left.iter().map(|(f, c)| (*f, conv(c))).collect();
    let left = FlagVector::from_terms(&left)?;
    let ty = *left.flag_type();
    let unit = Flag::new(*ty.graph(), ty.order())?;
    let mut right: Vec<(Flag, C)> = t.constraint.iter().map(|(f, c)| (*f, conv(c))).collect();
    right.push((unit, conv(&t.constant)));
    let right = FlagVector::from_terms(&right)?;
    left.mul(&right)?.unlabel()
}

fn square_expansion<C: Coeff>(
    s: &SquareTerm,
    conv: &impl Fn(&RatFunc) -> C,
) -> Result<FlagVector<C>> {
    let m: Vec<Vec<C>> = s
        .form
        .full_matrix()
        .iter()
        .map(|row| row.iter().map(conv).collect())
        .collect();
    Ok(expand_quadratic_form(&m, &s.flags)?.scale(&conv(&s.multiplier)))
}

/// Verifies a certificate, choosing the parametric checker when any
/// coefficient depends on `k`. `k0` overrides the declared ray start.
pub fn verify(cert: &Certificate, k0: Option<&Rational>) -> Result<VerificationReport> {
    if cert.is_parametric() {
        let k0 = k0
            .or(cert.k0.as_ref())
            .ok_or_else(|| Error::schema("k0", "parametric certificates need k0"))?;
        verify_parametric_certificate(cert, k0)
    } else {
        verify_density_certificate(cert)
    }
}

fn constant(r: &RatFunc) -> Rational {
    r.as_constant().expect("numeric certificate")
}

fn fail(failures: &mut Vec<Failure>, condition: impl Into<String>, witness: impl Into<String>) {
    failures.push(Failure {
        condition: condition.into(),
        witness: witness.into(),
    });
}

fn render_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("[{}]", parts.join(", "))
}

fn numeric_psd(
    m: &[Vec<RatFunc>],
    label: &str,
    failures: &mut Vec<Failure>,
    notes: &mut Vec<String>,
) -> Result<()> {
    let rows: Vec<Vec<Rational>> = m.iter().map(|r| r.iter().map(constant).collect()).collect();
    let sym = SymMatrix::new(rows)?;
    match psd_check(&sym) {
        PsdVerdict::Psd(w) => {
            let pivots: Vec<Rational> = w.d.clone();
            notes.push(format!(
                "{label}: {n}x{n} matrix is PSD, LDL pivots {}",
                render_vec(&pivots),
                n = sym.order()
            ));
        }
        PsdVerdict::NotPsd { vector, value } => {
            fail(
                failures,
                format!("{label} PSD"),
                format!(
                    "x = {} gives x^T M x = {}",
                    render_vec(&vector),
                    format_rational(&value)
                ),
            );
        }
    }
    Ok(())
}

/// Checks a certificate whose coefficients are all rational numbers.
pub fn verify_density_certificate(cert: &Certificate) -> Result<VerificationReport> {
    if cert.is_parametric() {
        return Err(Error::NotConstant(format!(
            "{} has coefficients depending on k",
            cert.name
        )));
    }
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let scale = constant(&cert.scale);
    if !scale.is_positive() {
        fail(
            &mut failures,
            "scale",
            format!("scale {} is not positive", format_rational(&scale)),
        );
    }
    let clear = cert
        .clear
        .as_ref()
        .map(constant)
        .unwrap_or_else(Rational::one);
    if !clear.is_positive() {
        fail(
            &mut failures,
            "clear",
            format!(
                "clearing factor {} is not positive",
                format_rational(&clear)
            ),
        );
    }
    for (i, s) in cert.square_terms.iter().enumerate() {
        let label = format!("square[{i}]");
        let mult = constant(&s.multiplier);
        if mult.is_negative() {
            fail(
                &mut failures,
                format!("{label} multiplier"),
                format!("{} < 0", format_rational(&mult)),
            );
        }
        match &s.form {
            SquareForm::Vector(_) => notes.push(format!("{label}: square of a single combination")),
            SquareForm::Matrix(m) => numeric_psd(m, &label, &mut failures, &mut notes)?,
            SquareForm::Congruence { core, .. } => {
                numeric_psd(core, &format!("{label} core"), &mut failures, &mut notes)?
            }
        }
    }
    for (i, t) in cert
        .linear_terms
        .iter()
        .enumerate()
        .filter(|(_, t)| t.sign_constrained)
    {
        for (f, c) in &t.left {
            let c = constant(c);
            if c.is_negative() {
                fail(
                    &mut failures,
                    format!("linear[{i}] coefficient"),
                    format!("{f}: {} < 0", format_rational(&c)),
                );
            }
        }
    }

    let expansion = expand_certificate(cert, constant)?;
    let bound = constant(&cert.bound);
    let mut slack = Vec::with_capacity(expansion.coeffs().len());
    let mut zero_set = Vec::new();
    let mut max: Option<(Flag, Rational)> = None;
    for (f, e) in expansion.entries() {
        let s = &clear * (&bound - e);
        if Zero::is_zero(&s) {
            zero_set.push(*f);
        }
        if s.is_negative() || (cert.strict && Zero::is_zero(&s)) {
            let rel = if cert.strict { ">=" } else { ">" };
            fail(
                &mut failures,
                "coefficient bound",
                format!(
                    "{f}: {} {rel} {}",
                    format_decimal(e, 6),
                    format_rational(&bound)
                ),
            );
        }
        if max.as_ref().map_or(true, |(_, m)| e > m) {
            max = Some((*f, e.clone()));
        }
        slack.push((*f, s));
    }
    if let (Some(claimed), Some((_, m))) = (&cert.claimed_bound, &max) {
        if *claimed != bound {
            let side = if m < claimed { "below" } else { "not below" };
            notes.push(format!(
                "stated bound {} differs from the certified bound {}; the maximum {} is {side} the stated bound",
                format_rational(claimed),
                format_rational(&bound),
                format_decimal(m, 6)
            ));
        }
    }
    Ok(VerificationReport {
        certificate: cert.name.clone(),
        k0: None,
        scale: cert.scale.clone(),
        bound: cert.bound.clone(),
        strict: cert.strict,
        expansion: Expansion::Numeric(expansion),
        slack: SlackTable::Numeric(slack),
        max_coefficient: max,
        zero_set,
        failures,
        notes,
    })
}

/// Whether a rational function is nonnegative (positive, if `strict`) on
/// all of `[k0, ∞)`. Fails when the denominator's sign is not fixed there.
fn ratfunc_nonneg(r: &RatFunc, k0: &Rational, strict: bool) -> Result<bool> {
    let check = |p: &KPolynomial| {
        if strict {
            positive_on_ray(p, k0)
        } else {
            nonneg_on_ray(p, k0)
        }
    };
    let den = r.denom();
    if positive_on_ray(den, k0) {
        Ok(check(r.numer()))
    } else if positive_on_ray(&-den, k0) {
        Ok(check(&-r.numer()))
    } else {
        Err(Error::DenominatorSign(format!(
            "denominator {den} changes sign or vanishes on k >= {}",
            format_rational(k0)
        )))
    }
}

fn root_note(p: &KPolynomial) -> String {
    match isolate_largest_real_root(p, &crate::exactmath::ten_pow_neg(12)) {
        Ok(Some(b)) => format!("largest real root ~ {}", format_decimal(&b.midpoint(), 9)),
        _ => "no real roots".into(),
    }
}

fn parametric_psd(
    m: &[Vec<RatFunc>],
    label: &str,
    cert: &Certificate,
    k0: &Rational,
    failures: &mut Vec<Failure>,
    notes: &mut Vec<String>,
) -> Result<()> {
    if m.iter().flatten().all(|x| x.as_constant().is_some()) {
        return numeric_psd(m, label, failures, notes);
    }
    match m.len() {
        1 => {
            if !ratfunc_nonneg(&m[0][0], k0, false)? {
                fail(
                    failures,
                    format!("{label} PSD"),
                    format!("entry {} is negative on the ray", m[0][0]),
                );
            }
        }
        2 => {
            let (a, b, c) = (&m[0][0], &m[1][1], &m[0][1]);
            for (name, x) in [("a", a), ("b", b)] {
                if !ratfunc_nonneg(x, k0, false)? {
                    fail(
                        failures,
                        format!("{label} diagonal {name}"),
                        format!("{x} is negative on the ray"),
                    );
                }
            }
            let det = &(a * b) - &(c * c);
            match &cert.psd_polynomial {
                Some(p) => {
                    if p.is_zero() {
                        return Err(Error::ZeroPolynomial);
                    }
                    let pr = RatFunc::poly(p.clone());
                    let cofactor = &det / &pr;
                    if let Some(declared) = &cert.psd_cofactor {
                        if *declared != cofactor {
                            fail(
                                failures,
                                format!("{label} determinant"),
                                format!("ab - c^2 = {det} is not {declared} * ({p})"),
                            );
                        }
                    }
                    if !ratfunc_nonneg(&cofactor, k0, true)? {
                        fail(
                            failures,
                            format!("{label} determinant"),
                            format!("cofactor {cofactor} is not positive on the ray"),
                        );
                    }
                    if nonneg_on_ray(p, k0) {
                        notes.push(format!(
                            "{label}: ab - c^2 = ({cofactor}) * ({p}); {}",
                            root_note(p)
                        ));
                    } else {
                        fail(
                            failures,
                            format!("{label} PSD polynomial"),
                            format!(
                                "{p} is negative somewhere on k >= {}; {}",
                                format_rational(k0),
                                root_note(p)
                            ),
                        );
                    }
                }
                None => {
                    if !ratfunc_nonneg(&det, k0, false)? {
                        fail(
                            failures,
                            format!("{label} determinant"),
                            format!("ab - c^2 = {det} is negative on the ray"),
                        );
                    }
                }
            }
        }
        n => {
            fail(
                failures,
                format!("{label} PSD"),
                format!("parametric {n}x{n} matrices are not supported"),
            );
        }
    }
    Ok(())
}

/// Checks a certificate with coefficients in `k` on the ray `k ≥ k0`.
pub fn verify_parametric_certificate(
    cert: &Certificate,
    k0: &Rational,
) -> Result<VerificationReport> {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    if !ratfunc_nonneg(&cert.scale, k0, true)? {
        fail(
            &mut failures,
            "scale",
            format!("{} is not positive on the ray", cert.scale),
        );
    }
    let clear = cert.clear.clone().unwrap_or_else(RatFunc::one);
    if !ratfunc_nonneg(&clear, k0, true)? {
        fail(
            &mut failures,
            "clear",
            format!("{clear} is not positive on the ray"),
        );
    }
    for (i, s) in cert.square_terms.iter().enumerate() {
        let label = format!("square[{i}]");
        if !ratfunc_nonneg(&s.multiplier, k0, false)? {
            fail(
                &mut failures,
                format!("{label} multiplier"),
                format!("{} is negative somewhere on the ray", s.multiplier),
            );
        }
        match &s.form {
            SquareForm::Vector(_) => notes.push(format!("{label}: square of a single combination")),
            SquareForm::Matrix(m) => {
                parametric_psd(m, &label, cert, k0, &mut failures, &mut notes)?
            }
            SquareForm::Congruence { core, .. } => parametric_psd(
                core,
                &format!("{label} core"),
                cert,
                k0,
                &mut failures,
                &mut notes,
            )?,
        }
    }
    for (i, t) in cert
        .linear_terms
        .iter()
        .enumerate()
        .filter(|(_, t)| t.sign_constrained)
    {
        for (f, c) in &t.left {
            if !ratfunc_nonneg(c, k0, false)? {
                fail(
                    &mut failures,
                    format!("linear[{i}] coefficient"),
                    format!("{f}: {c} is negative somewhere on the ray"),
                );
            }
        }
    }

    let expansion = expand_certificate(cert, |r: &RatFunc| r.clone())?;
    let precision = crate::exactmath::ten_pow_neg(15);
    let rows: Vec<(Flag, RatFunc)> = expansion
        .entries()
        .map(|(f, e)| (*f, &clear * &(&cert.bound - e)))
        .collect();
    let mut slack = Vec::with_capacity(rows.len());
    let mut zero_set = Vec::new();
    for (f, s) in rows {
        let Some(p) = s.as_polynomial() else {
            fail(
                &mut failures,
                "clearing",
                format!("{f}: {s} is not a polynomial after clearing"),
            );
            continue;
        };
        if p.is_zero() {
            zero_set.push(f);
            slack.push((f, p, None));
            continue;
        }
        if !nonneg_on_ray(&p, k0) {
            fail(
                &mut failures,
                "coefficient sign",
                format!(
                    "{f}: {p} is negative somewhere on k >= {}; {}",
                    format_rational(k0),
                    root_note(&p)
                ),
            );
        }
        let root = isolate_largest_real_root(&p, &precision)?;
        slack.push((f, p, root));
    }
    Ok(VerificationReport {
        certificate: cert.name.clone(),
        k0: Some(k0.clone()),
        scale: cert.scale.clone(),
        bound: cert.bound.clone(),
        strict: cert.strict,
        expansion: Expansion::Parametric(expansion),
        slack: SlackTable::Parametric(slack),
        max_coefficient: None,
        zero_set,
        failures,
        notes,
    })
}

/// True when the report's zero set equals `expected` up to isomorphism.
pub fn extremal_zero_check(report: &VerificationReport, expected: &[SmallGraph]) -> bool {
    let got: BTreeSet<_> = report
        .zero_set
        .iter()
        .map(|f| canonical_code(f.graph()))
        .collect();
    let want: BTreeSet<_> = expected.iter().map(canonical_code).collect();
    got.len() == report.zero_set.len() && want.len() == expected.len() && got == want
}
