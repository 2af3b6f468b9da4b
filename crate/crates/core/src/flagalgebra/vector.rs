use std::fmt;
use std::sync::Arc;

use super::{flag_basis, ops, Coeff, Flag, FlagBasis, FlagType};
use crate::exactmath::Rational;
use crate::{Error, Result};

/// Linear combination of the flags of one basis.
#[derive(Clone)]
pub struct FlagVector<C = Rational> {
    basis: Arc<FlagBasis>,
    coeffs: Vec<C>,
}

impl<C: Coeff> FlagVector<C> {
    pub fn zero(basis: Arc<FlagBasis>) -> Self {
        let coeffs = vec![C::zero(); basis.len()];
        FlagVector { basis, coeffs }
    }

    pub fn from_coeffs(basis: Arc<FlagBasis>, coeffs: Vec<C>) -> Result<Self> {
        if coeffs.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                found: coeffs.len(),
            });
        }
        Ok(FlagVector { basis, coeffs })
    }

    /// The single flag `f` with coefficient one.
    pub fn from_flag(f: &Flag) -> Result<Self> {
        Self::from_terms(&[(*f, C::from_rational(Rational::from_integer(1.into())))])
    }

    /// Sum of `c·F` over the terms. All flags must share a type; flags of
    /// smaller order are lifted to the largest order present.
    pub fn from_terms(terms: &[(Flag, C)]) -> Result<Self> {
        let Some((first, _)) = terms.first() else {
            return Err(Error::InvalidArgument(
                "a flag combination needs at least one term".into(),
            ));
        };
        let ty = first.flag_type();
        let order = terms.iter().map(|(f, _)| f.order()).max().unwrap_or(0);
        let target = flag_basis(&ty, order)?;
        let mut out = FlagVector::zero(target.clone());
        for (f, c) in terms {
            if f.flag_type() != ty {
                return Err(Error::TypeMismatch(format!(
                    "{f} does not have the type of {first}"
                )));
            }
            let basis = flag_basis(&ty, f.order())?;
            let idx = basis.index_of(f).expect("canonical flag is in its basis");
            let mut v = FlagVector::zero(basis);
            v.coeffs[idx] = c.clone();
            out = out.add(&v.lift(order)?)?;
        }
        Ok(out)
    }

    /// `c` times the unit, i.e. the all-`c` vector of the given type and order.
    pub fn constant(ty: &FlagType, order: usize, c: C) -> Result<Self> {
        let basis = flag_basis(ty, order)?;
        let coeffs = vec![c; basis.len()];
        Ok(FlagVector { basis, coeffs })
    }

    pub fn basis(&self) -> &Arc<FlagBasis> {
        &self.basis
    }

    pub fn flags(&self) -> &[Flag] {
        self.basis.flags()
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.basis.order()
    }

    pub fn flag_type(&self) -> &FlagType {
        self.basis.flag_type()
    }

    pub fn coeff_of(&self, f: &Flag) -> Option<&C> {
        self.basis.index_of(f).map(|i| &self.coeffs[i])
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Flag, &C)> {
        self.basis.flags().iter().zip(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Coeff::is_zero)
    }

    fn aligned(&self, other: &Self) -> Result<(Self, Self)> {
        if self.flag_type() != other.flag_type() {
            return Err(Error::TypeMismatch(format!(
                "{:?} vs {:?}",
                self.flag_type(),
                other.flag_type()
            )));
        }
        let order = self.order().max(other.order());
        Ok((self.lift(order)?, other.lift(order)?))
    }

    /// Sum, lifting the lower-order operand if needed.
    pub fn add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.aligned(other)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x.add(y))
            .collect();
        Ok(FlagVector {
            basis: a.basis,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(Coeff::neg)
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.map(|x| x.scale(r))
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> FlagVector<D> {
        FlagVector {
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Flag-algebra product of two vectors of the same type.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        ops::vector_product(self, other)
    }

    pub fn lift(&self, order: usize) -> Result<Self> {
        ops::lift(self, order)
    }

    pub fn unlabel(&self) -> Result<Self> {
        ops::unlabel(self)
    }
}

impl<C: Coeff> PartialEq for FlagVector<C> {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis && self.coeffs == other.coeffs
    }
}

impl<C: Coeff> fmt::Debug for FlagVector<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (flag, c) in self.entries().filter(|(_, c)| !c.is_zero()) {
            m.entry(&flag.to_string(), &c.render());
        }
        m.finish()
    }
}
