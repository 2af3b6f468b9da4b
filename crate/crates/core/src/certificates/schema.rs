//! TOML reader for certificate documents.
//!
//! Coefficients may be written as a string (`"3/4"`, `"-0.474"`, `"12"`), an
//! integer, an array of those (a polynomial in `k`, constant term first), or
//! a table `{ num = [...], den = [...] }` for a rational function. Floats are
//! rejected so that every number is read exactly.

use toml::{Table, Value};

use super::{Certificate, LinearTerm, SquareForm, SquareTerm, FORMAT_VERSION};
use crate::exactmath::{parse_rational, KPolynomial, RatFunc, Rational};
use crate::flagalgebra::{Flag, FlagType, MAX_FLAG_ORDER};
use crate::smallgraph::{PairEncoding, SmallGraph};
use crate::{Error, Result};

const TOP_KEYS: &[&str] = &[
    "format",
    "name",
    "description",
    "target",
    "scale",
    "bound",
    "strict",
    "claimed_bound",
    "terms_scaled",
    "expansion_order",
    "k0",
    "clear",
    "psd_polynomial",
    "psd_cofactor",
    "linear",
    "square",
];
const LINEAR_KEYS: &[&str] = &["left", "constraint", "constant", "sign_constrained"];
const SQUARE_KEYS: &[&str] = &[
    "multiplier",
    "type",
    "flags",
    "vector",
    "matrix",
    "combine",
    "core",
];

/// Parses and validates a certificate document.
pub fn load_certificate(source: &str) -> Result<Certificate> {
    let doc: Table = source
        .parse()
        .map_err(|e: toml::de::Error| Error::schema("document", e.message()))?;
    check_keys(&doc, TOP_KEYS, "")?;

    let format = doc
        .get("format")
        .ok_or_else(|| Error::schema("format", "missing"))?;
    if format.as_integer() != Some(FORMAT_VERSION) {
        return Err(Error::schema(
            "format",
            format!("unsupported version {format}, expected {FORMAT_VERSION}"),
        ));
    }
    let name = opt_str(&doc, "name")?.unwrap_or_else(|| "certificate".into());
    let description = opt_str(&doc, "description")?;
    let expansion_order = match doc.get("expansion_order") {
        Some(Value::Integer(n)) if (1..=MAX_FLAG_ORDER as i64).contains(n) => *n as usize,
        Some(v) => {
            return Err(Error::schema(
                "expansion_order",
                format!("expected 1..={MAX_FLAG_ORDER}, found {v}"),
            ))
        }
        None => return Err(Error::schema("expansion_order", "missing")),
    };
    let target = flag_field(
        doc.get("target")
            .ok_or_else(|| Error::schema("target", "missing"))?,
        "target",
        None,
    )?;
    if target.label_count() != 0 {
        return Err(Error::schema(
            "target",
            "the target must be an unlabeled graph",
        ));
    }
    if target.order() > expansion_order {
        return Err(Error::schema("target", "order exceeds expansion_order"));
    }
    let scale = match doc.get("scale") {
        Some(v) => coeff(v, "scale")?,
        None => RatFunc::one(),
    };
    let bound = coeff(
        doc.get("bound")
            .ok_or_else(|| Error::schema("bound", "missing"))?,
        "bound",
    )?;
    let strict = opt_bool(&doc, "strict")?.unwrap_or(false);
    let terms_scaled = opt_bool(&doc, "terms_scaled")?.unwrap_or(true);
    let claimed_bound = doc
        .get("claimed_bound")
        .map(|v| rational(v, "claimed_bound"))
        .transpose()?;
    let k0 = doc.get("k0").map(|v| rational(v, "k0")).transpose()?;
    let clear = doc.get("clear").map(|v| coeff(v, "clear")).transpose()?;
    let psd_polynomial = doc
        .get("psd_polynomial")
        .map(|v| polynomial(v, "psd_polynomial"))
        .transpose()?;
    let psd_cofactor = doc
        .get("psd_cofactor")
        .map(|v| coeff(v, "psd_cofactor"))
        .transpose()?;

    let linear_terms = tables(&doc, "linear")?
        .iter()
        .enumerate()
        .map(|(i, t)| linear_term(t, &format!("linear[{i}]"), expansion_order))
        .collect::<Result<Vec<_>>>()?;
    let square_terms = tables(&doc, "square")?
        .iter()
        .enumerate()
        .map(|(i, t)| square_term(t, &format!("square[{i}]"), expansion_order))
        .collect::<Result<Vec<_>>>()?;

    let cert = Certificate {
        name,
        description,
        target,
        scale,
        bound,
        strict,
        claimed_bound,
        terms_scaled,
        expansion_order,
        k0,
        clear,
        psd_polynomial,
        psd_cofactor,
        linear_terms,
        square_terms,
    };
    if cert.is_parametric() && cert.k0.is_none() {
        return Err(Error::schema(
            "k0",
            "parametric certificates must declare k0",
        ));
    }
    Ok(cert)
}

fn check_keys(t: &Table, allowed: &[&str], prefix: &str) -> Result<()> {
    for key in t.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(Error::schema(format!("{prefix}{key}"), "unknown field"));
        }
    }
    Ok(())
}

fn opt_str(t: &Table, key: &str) -> Result<Option<String>> {
    match t.get(key) {
        None => Ok(None),
        Some(Value::String(s)) => Ok(Some(s.clone())),
        Some(v) => Err(Error::schema(
            key,
            format!("expected a string, found {}", v.type_str()),
        )),
    }
}

fn opt_bool(t: &Table, key: &str) -> Result<Option<bool>> {
    match t.get(key) {
        None => Ok(None),
        Some(Value::Boolean(b)) => Ok(Some(*b)),
        Some(v) => Err(Error::schema(
            key,
            format!("expected a boolean, found {}", v.type_str()),
        )),
    }
}

fn tables<'a>(doc: &'a Table, key: &str) -> Result<Vec<&'a Table>> {
    match doc.get(key) {
        None => Ok(Vec::new()),
        Some(Value::Array(items)) => items
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.as_table()
                    .ok_or_else(|| Error::schema(format!("{key}[{i}]"), "expected a table"))
            })
            .collect(),
        Some(v) => Err(Error::schema(
            key,
            format!("expected an array of tables, found {}", v.type_str()),
        )),
    }
}

fn rational(v: &Value, field: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s)
            .map_err(|_| Error::schema(field, format!("cannot read {s:?} as a number"))),
        Value::Integer(i) => Ok(Rational::from_integer((*i).into())),
        Value::Float(_) => Err(Error::schema(
            field,
            "write non-integers as strings such as \"0.74\" or \"3/4\"",
        )),
        other => Err(Error::schema(
            field,
            format!("expected a number, found {}", other.type_str()),
        )),
    }
}

fn polynomial(v: &Value, field: &str) -> Result<KPolynomial> {
    match v {
        Value::Array(items) => Ok(KPolynomial::new(
            items
                .iter()
                .enumerate()
                .map(|(i, x)| rational(x, &format!("{field}[{i}]")))
                .collect::<Result<_>>()?,
        )),
        other => Ok(KPolynomial::constant(rational(other, field)?)),
    }
}

fn coeff(v: &Value, field: &str) -> Result<RatFunc> {
    match v {
        Value::Table(t) => {
            check_keys(t, &["num", "den"], &format!("{field}."))?;
            let num = polynomial(
                t.get("num")
                    .ok_or_else(|| Error::schema(format!("{field}.num"), "missing"))?,
                &format!("{field}.num"),
            )?;
            let den = match t.get("den") {
                Some(d) => polynomial(d, &format!("{field}.den"))?,
                None => KPolynomial::one(),
            };
            if den.is_zero() {
                return Err(Error::schema(format!("{field}.den"), "zero denominator"));
            }
            Ok(RatFunc::new(num, den))
        }
        other => Ok(RatFunc::poly(polynomial(other, field)?)),
    }
}

/// Reads a flag; without a `σ=` prefix the flag gets `default_labels`.
fn flag_field(v: &Value, field: &str, default_labels: Option<usize>) -> Result<Flag> {
    let Value::String(s) = v else {
        return Err(Error::schema(
            field,
            format!("expected a flag string, found {}", v.type_str()),
        ));
    };
    let t = s.trim();
    let parsed = match default_labels {
        Some(labels) if !t.contains(';') && t != "unit" => {
            let g = PairEncoding::parse(t).and_then(|p| p.decode());
            g.and_then(|g| Flag::new(g, labels))
        }
        _ => t.parse::<Flag>(),
    };
    parsed.map_err(|e| Error::schema(field, format!("bad flag {s:?}: {e}")))
}

fn flag_type_field(v: Option<&Value>, field: &str) -> Result<FlagType> {
    match v {
        None => Ok(FlagType::empty()),
        Some(Value::String(s)) => match s.trim() {
            "" | "none" => Ok(FlagType::empty()),
            "vertex" => Ok(FlagType::new(SmallGraph::empty(1)?)),
            code => PairEncoding::parse(code)
                .and_then(|p| p.decode())
                .map(FlagType::new)
                .map_err(|e| Error::schema(field, format!("bad type {s:?}: {e}"))),
        },
        Some(v) => Err(Error::schema(
            field,
            format!("expected a pair code, found {}", v.type_str()),
        )),
    }
}

fn combination(
    v: Option<&Value>,
    field: &str,
    labels: Option<usize>,
) -> Result<Vec<(Flag, RatFunc)>> {
    let Some(v) = v else {
        return Ok(Vec::new());
    };
    let Value::Array(items) = v else {
        return Err(Error::schema(
            field,
            "expected an array of { flag, coeff } tables",
        ));
    };
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let f = format!("{field}[{i}]");
            let t = item
                .as_table()
                .ok_or_else(|| Error::schema(&f, "expected a { flag, coeff } table"))?;
            check_keys(t, &["flag", "coeff"], &format!("{f}."))?;
            let flag = flag_field(
                t.get("flag")
                    .ok_or_else(|| Error::schema(format!("{f}.flag"), "missing"))?,
                &format!("{f}.flag"),
                labels,
            )?;
            let c = match t.get("coeff") {
                Some(c) => coeff(c, &format!("{f}.coeff"))?,
                None => RatFunc::one(),
            };
            Ok((flag, c))
        })
        .collect()
}

fn linear_term(t: &Table, field: &str, expansion_order: usize) -> Result<LinearTerm> {
    check_keys(t, LINEAR_KEYS, &format!("{field}."))?;
    let left = combination(t.get("left"), &format!("{field}.left"), None)?;
    let constraint = combination(t.get("constraint"), &format!("{field}.constraint"), None)?;
    let constant = match t.get("constant") {
        Some(v) => coeff(v, &format!("{field}.constant"))?,
        None => RatFunc::zero(),
    };
    let sign_constrained = opt_bool(t, "sign_constrained")
        .map_err(|_| Error::schema(format!("{field}.sign_constrained"), "expected a boolean"))?
        .unwrap_or(false);
    let Some((first, _)) = left.first() else {
        return Err(Error::schema(
            format!("{field}.left"),
            "must list at least one flag",
        ));
    };
    let ty = first.flag_type();
    for (f, _) in left.iter().chain(&constraint) {
        if f.flag_type() != ty {
            return Err(Error::TypeMismatch(format!(
                "{field}: {f} does not have the type of {first}"
            )));
        }
    }
    let s = ty.order();
    let lo = left.iter().map(|(f, _)| f.order()).max().unwrap_or(s);
    let ro = constraint.iter().map(|(f, _)| f.order()).max().unwrap_or(s);
    if lo + ro - s > expansion_order {
        return Err(Error::schema(
            field,
            format!(
                "product has order {} above expansion_order {expansion_order}",
                lo + ro - s
            ),
        ));
    }
    Ok(LinearTerm {
        left,
        constraint,
        constant,
        sign_constrained,
    })
}

fn matrix(v: Option<&Value>, field: &str) -> Result<Option<Vec<Vec<RatFunc>>>> {
    let Some(v) = v else {
        return Ok(None);
    };
    let Value::Array(rows) = v else {
        return Err(Error::schema(field, "expected an array of rows"));
    };
    rows.iter()
        .enumerate()
        .map(|(i, row)| match row {
            Value::Array(entries) => entries
                .iter()
                .enumerate()
                .map(|(j, e)| coeff(e, &format!("{field}[{i}][{j}]")))
                .collect::<Result<Vec<_>>>(),
            _ => Err(Error::schema(
                format!("{field}[{i}]"),
                "expected a row array",
            )),
        })
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

fn check_shape(m: &[Vec<RatFunc>], rows: usize, cols: usize, field: &str) -> Result<()> {
    if m.len() != rows {
        return Err(Error::schema(
            field,
            format!("expected {rows} rows, found {}", m.len()),
        ));
    }
    for (i, r) in m.iter().enumerate() {
        if r.len() != cols {
            return Err(Error::schema(
                format!("{field}[{i}]"),
                format!("expected {cols} entries, found {}", r.len()),
            ));
        }
    }
    Ok(())
}

fn check_symmetric(m: &[Vec<RatFunc>], field: &str) -> Result<()> {
    for i in 0..m.len() {
        for j in 0..i {
            if m[i][j] != m[j][i] {
                return Err(Error::schema(field, format!("not symmetric at ({i}, {j})")));
            }
        }
    }
    Ok(())
}

fn square_term(t: &Table, field: &str, expansion_order: usize) -> Result<SquareTerm> {
    check_keys(t, SQUARE_KEYS, &format!("{field}."))?;
    let multiplier = match t.get("multiplier") {
        Some(v) => coeff(v, &format!("{field}.multiplier"))?,
        None => RatFunc::one(),
    };
    if let Some(c) = multiplier.as_constant() {
        if c < Rational::from_integer(0.into()) {
            return Err(Error::NegativeMultiplier(format!(
                "{field}.multiplier is {multiplier}"
            )));
        }
    }
    let flag_type = flag_type_field(t.get("type"), &format!("{field}.type"))?;
    let s = flag_type.order();
    let flags: Vec<Flag> = match t.get("flags") {
        Some(Value::Array(items)) => items
            .iter()
            .enumerate()
            .map(|(i, v)| flag_field(v, &format!("{field}.flags[{i}]"), Some(s)))
            .collect::<Result<_>>()?,
        _ => {
            return Err(Error::schema(
                format!("{field}.flags"),
                "expected an array of flags",
            ))
        }
    };
    let Some(first) = flags.first() else {
        return Err(Error::schema(
            format!("{field}.flags"),
            "must list at least one flag",
        ));
    };
    for f in &flags {
        if f.flag_type() != flag_type {
            return Err(Error::TypeMismatch(format!(
                "{field}: flag {f} does not have type {:?}",
                flag_type
            )));
        }
        if f.order() != first.order() {
            return Err(Error::schema(
                format!("{field}.flags"),
                "flags must share one order",
            ));
        }
    }
    if 2 * first.order() - s > expansion_order {
        return Err(Error::schema(
            field,
            format!(
                "square has order {} above expansion_order {expansion_order}",
                2 * first.order() - s
            ),
        ));
    }
    let n = flags.len();
    let vector = t.get("vector");
    let mat = matrix(t.get("matrix"), &format!("{field}.matrix"))?;
    let combine = matrix(t.get("combine"), &format!("{field}.combine"))?;
    let core = matrix(t.get("core"), &format!("{field}.core"))?;
    let form = match (vector, mat, combine, core) {
        (Some(Value::Array(items)), None, None, None) => {
            let v: Vec<RatFunc> = items
                .iter()
                .enumerate()
                .map(|(i, x)| coeff(x, &format!("{field}.vector[{i}]")))
                .collect::<Result<_>>()?;
            if v.len() != n {
                return Err(Error::schema(
                    format!("{field}.vector"),
                    format!("expected {n} entries, found {}", v.len()),
                ));
            }
            SquareForm::Vector(v)
        }
        (None, Some(m), None, None) => {
            check_shape(&m, n, n, &format!("{field}.matrix"))?;
            check_symmetric(&m, &format!("{field}.matrix"))?;
            SquareForm::Matrix(m)
        }
        (None, None, Some(g), Some(c)) => {
            let r = c.len();
            check_shape(&c, r, r, &format!("{field}.core"))?;
            check_symmetric(&c, &format!("{field}.core"))?;
            check_shape(&g, n, r, &format!("{field}.combine"))?;
            SquareForm::Congruence {
                combine: g,
                core: c,
            }
        }
        _ => {
            return Err(Error::schema(
                field,
                "give exactly one of `vector`, `matrix`, or `combine` with `core`",
            ));
        }
    };
    Ok(SquareTerm {
        multiplier,
        flag_type,
        flags,
        form,
    })
}
