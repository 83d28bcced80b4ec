//! Vectors of a universal Whittaker module in PBW normal form.

use alloc::collections::BTreeMap;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use super::monomial::PbwMonomial;
use crate::scalar::Scalar;

/// A finite rational combination of PBW monomials. Terms iterate in the
/// principal order, so the cyclic vector comes first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ModuleElement {
    terms: BTreeMap<PbwMonomial, Scalar>,
}

impl ModuleElement {
    pub fn zero() -> Self {
        ModuleElement::default()
    }

    /// The cyclic vector.
    pub fn cyclic() -> Self {
        ModuleElement::monomial(PbwMonomial::cyclic())
    }

    pub fn monomial(m: PbwMonomial) -> Self {
        ModuleElement::term(m, Scalar::one())
    }

    pub fn term(m: PbwMonomial, c: Scalar) -> Self {
        let mut e = ModuleElement::zero();
        e.add_term(m, &c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (PbwMonomial, Scalar)>>(it: I) -> Self {
        let mut e = ModuleElement::zero();
        for (m, c) in it {
            e.add_term(m, &c);
        }
        e
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PbwMonomial, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &PbwMonomial> + '_ {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Greatest monomial under the principal order.
    pub fn leading(&self) -> Option<(&PbwMonomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Largest length of a monomial, 0 for zero.
    pub fn lth(&self) -> usize {
        self.terms.keys().map(PbwMonomial::lth).max().unwrap_or(0)
    }

    /// Whether this is a scalar multiple of the cyclic vector.
    pub fn is_cyclic_multiple(&self) -> bool {
        self.terms.keys().all(PbwMonomial::is_cyclic)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        ModuleElement::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), c * s)))
    }

    pub fn add_scaled(&mut self, other: &ModuleElement, s: &Scalar) {
        for (m, c) in other.iter() {
            self.add_term(m.clone(), &(c * s));
        }
    }
}

impl Add<&ModuleElement> for &ModuleElement {
    type Output = ModuleElement;
    fn add(self, rhs: &ModuleElement) -> ModuleElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl Sub<&ModuleElement> for &ModuleElement {
    type Output = ModuleElement;
    fn sub(self, rhs: &ModuleElement) -> ModuleElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::from_int(-1));
        out
    }
}

impl Neg for &ModuleElement {
    type Output = ModuleElement;
    fn neg(self) -> ModuleElement {
        self.scale(&Scalar::from_int(-1))
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
