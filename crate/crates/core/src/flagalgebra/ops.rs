use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::binomial;
use rayon::prelude::*;

use super::basis::for_each_embedding;
use super::{flag_basis, Coeff, Flag, FlagType, FlagVector};
use crate::exactmath::Rational;
use crate::smallgraph::SmallGraph;
use crate::{Error, Result};

type Sparse = Arc<Vec<(usize, Rational)>>;

struct Memo<K, V>(OnceLock<Mutex<HashMap<K, V>>>);

impl<K: Eq + Hash, V: Clone> Memo<K, V> {
    const fn new() -> Self {
        Memo(OnceLock::new())
    }

    fn get_or(&self, key: K, build: impl FnOnce() -> Result<V>) -> Result<V> {
        let map = self.0.get_or_init(Default::default);
        if let Some(v) = map.lock().expect("memo").get(&key) {
            return Ok(v.clone());
        }
        let v = build()?;
        Ok(map.lock().expect("memo").entry(key).or_insert(v).clone())
    }
}

static PRODUCTS: Memo<(Flag, Flag), Sparse> = Memo::new();
static LIFTS: Memo<(FlagType, usize, usize), Arc<Vec<Vec<(usize, Rational)>>>> = Memo::new();
static UNLABELS: Memo<(FlagType, usize), Arc<Vec<(usize, Rational)>>> = Memo::new();

fn ratio(num: u64, den: u64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Vertices `0..s` followed by the members of `mask`.
fn with_prefix(s: usize, mask: u16, n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..s).collect();
    v.extend((s..n).filter(|u| mask & (1 << u) != 0));
    v
}

/// Masks of `size`-subsets of the unlabeled vertices `s..n`.
fn unlabeled_subsets(s: usize, n: usize, size: usize) -> Vec<u16> {
    let mut out = Vec::new();
    crate::smallgraph::count::for_each_subset(n - s, size, |m| out.push(m << s));
    out
}

fn subflag(g: &SmallGraph, s: usize, mask: u16) -> Flag {
    Flag::canonical(&g.induced(&with_prefix(s, mask, g.order())), s)
}

/// Product of two flags of the same type. The coefficient of `F` is the
/// probability that a random ordered pair of disjoint sets of unlabeled
/// vertices of `F`, of sizes `|f1|-|σ|` and `|f2|-|σ|`, induce `f1` and `f2`.
pub fn flag_product(f1: &Flag, f2: &Flag) -> Result<FlagVector<Rational>> {
    let ty = f1.flag_type();
    if ty != f2.flag_type() {
        return Err(Error::TypeMismatch(format!(
            "cannot multiply {f1} and {f2}"
        )));
    }
    let s = ty.order();
    let order = f1.order() + f2.order() - s;
    let basis = flag_basis(&ty, order)?;
    let key = if f1 <= f2 { (*f1, *f2) } else { (*f2, *f1) };
    let table = PRODUCTS.get_or(key, || {
        product_table(&key.0, &key.1, s, &basis.flags().to_vec())
    })?;
    let mut out = FlagVector::zero(basis);
    let mut coeffs = out.coeffs().to_vec();
    for (i, c) in table.iter() {
        coeffs[*i] = c.clone();
    }
    out = FlagVector::from_coeffs(out.basis().clone(), coeffs)?;
    Ok(out)
}

fn product_table(f1: &Flag, f2: &Flag, s: usize, flags: &[Flag]) -> Result<Sparse> {
    let a = f1.order() - s;
    let b = f2.order() - s;
    let n = s + a + b;
    let u = n - s;
    let total = binomial(u as u64, a as u64) * binomial((u - a) as u64, b as u64);
    let firsts = unlabeled_subsets(s, n, a);
    let seconds = unlabeled_subsets(s, n, b);
    let entries: Vec<(usize, Rational)> = crate::parallel::install(|| {
        flags
            .par_iter()
            .enumerate()
            .filter_map(|(i, big)| {
                let g = big.graph();
                let hits1: Vec<u16> = firsts
                    .iter()
                    .copied()
                    .filter(|&m| subflag(g, s, m) == *f1)
                    .collect();
                if hits1.is_empty() {
                    return None;
                }
                let hits2: Vec<u16> = seconds
                    .iter()
                    .copied()
                    .filter(|&m| subflag(g, s, m) == *f2)
                    .collect();
                let count = hits1
                    .iter()
                    .map(|x| hits2.iter().filter(|y| *x & **y == 0).count() as u64)
                    .sum::<u64>();
                (count > 0).then(|| (i, ratio(count, total)))
            })
            .collect()
    });
    Ok(Arc::new(entries))
}

pub(crate) fn vector_product<C: Coeff>(
    x: &FlagVector<C>,
    y: &FlagVector<C>,
) -> Result<FlagVector<C>> {
    if x.flag_type() != y.flag_type() {
        return Err(Error::TypeMismatch(format!(
            "{:?} vs {:?}",
            x.flag_type(),
            y.flag_type()
        )));
    }
    let order = x.order() + y.order() - x.flag_type().order();
    let basis = flag_basis(x.flag_type(), order)?;
    let mut acc = vec![C::zero(); basis.len()];
    for (f1, c1) in x.entries().filter(|(_, c)| !c.is_zero()) {
        for (f2, c2) in y.entries().filter(|(_, c)| !c.is_zero()) {
            let c = c1.mul(c2);
            let p = flag_product(f1, f2)?;
            for (i, d) in p
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, d)| !num_traits::Zero::is_zero(*d))
            {
                acc[i] = acc[i].add(&c.scale(d));
            }
        }
    }
    FlagVector::from_coeffs(basis, acc)
}

/// Expresses a vector of order `m` in the basis of order `order` via the
/// chain rule: the coefficient of `G` is `Σ v(F)·p(F, G)`, where `p` is the
/// probability that random unlabeled vertices of `G` together with the labels
/// induce `F`.
pub fn lift<C: Coeff>(v: &FlagVector<C>, order: usize) -> Result<FlagVector<C>> {
    let m = v.order();
    if order == m {
        return Ok(v.clone());
    }
    let ty = *v.flag_type();
    if order < m {
        return Err(Error::OrderOutOfRange {
            order,
            min: m,
            max: super::MAX_FLAG_ORDER,
        });
    }
    let target = flag_basis(&ty, order)?;
    let table = LIFTS.get_or((ty, m, order), || lift_table(&ty, m, order))?;
    let coeffs = table
        .iter()
        .map(|row| {
            row.iter().fold(C::zero(), |acc, (src, d)| {
                let c = &v.coeffs()[*src];
                if c.is_zero() {
                    acc
                } else {
                    acc.add(&c.scale(d))
                }
            })
        })
        .collect();
    FlagVector::from_coeffs(target, coeffs)
}

fn lift_table(ty: &FlagType, m: usize, order: usize) -> Result<Arc<Vec<Vec<(usize, Rational)>>>> {
    let s = ty.order();
    let source = flag_basis(ty, m)?;
    let target = flag_basis(ty, order)?;
    let subsets = unlabeled_subsets(s, order, m - s);
    let total = subsets.len() as u64;
    let rows = crate::parallel::install(|| {
        target
            .flags()
            .par_iter()
            .map(|big| {
                let mut counts: HashMap<usize, u64> = HashMap::new();
                for &mask in &subsets {
                    let f = subflag(big.graph(), s, mask);
                    *counts
                        .entry(source.index_of(&f).expect("subflag in basis"))
                        .or_default() += 1;
                }
                let mut row: Vec<(usize, Rational)> = counts
                    .into_iter()
                    .map(|(i, c)| (i, ratio(c, total)))
                    .collect();
                row.sort_by_key(|(i, _)| *i);
                row
            })
            .collect()
    });
    Ok(Arc::new(rows))
}

/// Averages out the labels: each flag `F` sends its coefficient, times the
/// probability that a random injective placement of the labels on the
/// underlying graph yields `F`, to that graph.
pub fn unlabel<C: Coeff>(v: &FlagVector<C>) -> Result<FlagVector<C>> {
    let ty = *v.flag_type();
    let order = v.order();
    let target = flag_basis(&FlagType::empty(), order)?;
    let table = UNLABELS.get_or((ty, order), || unlabel_table(&ty, order))?;
    let mut acc = vec![C::zero(); target.len()];
    for ((t, q), c) in table.iter().zip(v.coeffs()) {
        if !c.is_zero() {
            acc[*t] = acc[*t].add(&c.scale(q));
        }
    }
    FlagVector::from_coeffs(target, acc)
}

/// The factor with which `f` contributes to its underlying graph under
/// [`unlabel`].
pub fn unlabel_factor(f: &Flag) -> Result<Rational> {
    let ty = f.flag_type();
    let basis = flag_basis(&ty, f.order())?;
    let table = UNLABELS.get_or((ty, f.order()), || unlabel_table(&ty, f.order()))?;
    let idx = basis.index_of(f).expect("canonical flag is in its basis");
    Ok(table[idx].1.clone())
}

fn unlabel_table(ty: &FlagType, order: usize) -> Result<Arc<Vec<(usize, Rational)>>> {
    let source = flag_basis(ty, order)?;
    let target = flag_basis(&FlagType::empty(), order)?;
    let s = ty.order();
    let placements: u64 = (0..s as u64).map(|i| order as u64 - i).product();
    let mut counts = vec![0u64; source.len()];
    let mut home = vec![usize::MAX; source.len()];
    for (gi, g) in target.flags().iter().enumerate() {
        for_each_embedding(g.graph(), ty, |tuple| {
            let f = Flag::with_labels(*g.graph(), tuple).expect("injective tuple");
            let i = source.index_of(&f).expect("flag in basis");
            counts[i] += 1;
            home[i] = gi;
        });
    }
    Ok(Arc::new(
        home.into_iter()
            .zip(counts)
            .map(|(h, c)| (h, ratio(c, placements)))
            .collect(),
    ))
}

/// `⟦Σᵢⱼ Mᵢⱼ fᵢ fⱼ⟧` for flags of one type and order.
pub fn expand_quadratic_form<C: Coeff>(m: &[Vec<C>], flags: &[Flag]) -> Result<FlagVector<C>> {
    if m.len() != flags.len() {
        return Err(Error::DimensionMismatch {
            expected: flags.len(),
            found: m.len(),
        });
    }
    if let Some(row) = m.iter().find(|r| r.len() != flags.len()) {
        return Err(Error::DimensionMismatch {
            expected: flags.len(),
            found: row.len(),
        });
    }
    let Some(first) = flags.first() else {
        return Err(Error::InvalidArgument(
            "a quadratic form needs at least one flag".into(),
        ));
    };
    let ty = first.flag_type();
    if let Some(f) = flags
        .iter()
        .find(|f| f.flag_type() != ty || f.order() != first.order())
    {
        return Err(Error::TypeMismatch(format!(
            "{f} does not match the type and order of {first}"
        )));
    }
    let order = 2 * first.order() - ty.order();
    let basis = flag_basis(&ty, order)?;
    let mut acc = vec![C::zero(); basis.len()];
    for i in 0..flags.len() {
        for j in i..flags.len() {
            let w = if i == j {
                m[i][i].clone()
            } else {
                m[i][j].add(&m[j][i])
            };
            if w.is_zero() {
                continue;
            }
            let p = flag_product(&flags[i], &flags[j])?;
            for (t, d) in p
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, d)| !num_traits::Zero::is_zero(*d))
            {
                acc[t] = acc[t].add(&w.scale(d));
            }
        }
    }
    unlabel(&FlagVector::from_coeffs(basis, acc)?)
}

/// `⟦(Σᵢ cᵢ fᵢ)²⟧`.
pub fn expand_square<C: Coeff>(coeffs: &[C], flags: &[Flag]) -> Result<FlagVector<C>> {
    let m: Vec<Vec<C>> = coeffs
        .iter()
        .map(|a| coeffs.iter().map(|b| a.mul(b)).collect())
        .collect();
    expand_quadratic_form(&m, flags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};
    use crate::smallgraph::named;

    fn flag(s: &str) -> Flag {
        s.parse().unwrap()
    }

    #[test]
    fn rooted_edge_squared() {
        let rooted_edge = Flag::with_labels(named::edge(), &[0]).unwrap();
        let p = flag_product(&rooted_edge, &rooted_edge).unwrap();
        let triangle = Flag::with_labels(SmallGraph::complete(3).unwrap(), &[0]).unwrap();
        let centre = Flag::with_labels(named::path(3), &[1]).unwrap();
        assert_eq!(p.coeff_of(&triangle), Some(&int(1)));
        assert_eq!(p.coeff_of(&centre), Some(&int(1)));
        let nonzero = p
            .coeffs()
            .iter()
            .filter(|c| !num_traits::Zero::is_zero(*c))
            .count();
        assert_eq!(nonzero, 2);
    }

    #[test]
    fn edge_squared_on_four_cycle() {
        let e = flag("2");
        let p = flag_product(&e, &e).unwrap();
        assert_eq!(
            p.coeff_of(&Flag::unlabeled(named::cycle(4))),
            Some(&rat(2, 3))
        );
    }

    #[test]
    fn unlabel_factors() {
        let triangle = Flag::with_labels(SmallGraph::complete(3).unwrap(), &[0]).unwrap();
        let centre = Flag::with_labels(named::path(3), &[1]).unwrap();
        assert_eq!(unlabel_factor(&triangle).unwrap(), int(1));
        assert_eq!(unlabel_factor(&centre).unwrap(), rat(1, 3));
        let v = FlagVector::<Rational>::from_flag(&centre)
            .unwrap()
            .unlabel()
            .unwrap();
        assert_eq!(
            v.coeff_of(&Flag::unlabeled(named::path(3))),
            Some(&rat(1, 3))
        );
    }

    #[test]
    fn lift_edge_to_three() {
        let v = FlagVector::<Rational>::from_flag(&flag("2"))
            .unwrap()
            .lift(3)
            .unwrap();
        assert_eq!(v.coeff_of(&flag("222")), Some(&int(1)));
        assert_eq!(v.coeff_of(&flag("221")), Some(&rat(2, 3)));
        assert_eq!(v.coeff_of(&flag("211")), Some(&rat(1, 3)));
        assert_eq!(v.coeff_of(&flag("111")), Some(&int(0)));
    }

    #[test]
    fn unit_lifts_to_all_ones() {
        let v = FlagVector::<Rational>::from_flag(&Flag::unit())
            .unwrap()
            .lift(4)
            .unwrap();
        assert!(v.coeffs().iter().all(|c| *c == int(1)));
        assert_eq!(v.coeffs().len(), 11);
    }

    #[test]
    fn product_with_type_unit_is_lift() {
        let ty_unit = Flag::new(named::edge(), 2).unwrap();
        let f = flag("σ=2;211221");
        let p = flag_product(&f, &ty_unit).unwrap();
        let l = FlagVector::<Rational>::from_flag(&f).unwrap();
        assert_eq!(p, l);
    }

    #[test]
    fn quadratic_form_checks_dimensions() {
        let f = flag("σ=1;2");
        assert!(expand_quadratic_form(&[vec![int(1)]], &[f, f]).is_err());
        let zero = expand_quadratic_form(&[vec![int(0)]], &[f]).unwrap();
        assert!(zero.is_zero());
        let sq = expand_quadratic_form(&[vec![int(1)]], &[f]).unwrap();
        let direct = flag_product(&f, &f).unwrap().unlabel().unwrap();
        assert_eq!(sq, direct);
    }

    #[test]
    fn type_mismatch_is_reported() {
        assert!(flag_product(&flag("σ=1;2"), &flag("2")).is_err());
    }
}
