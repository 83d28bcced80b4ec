//! Sparse Laurent polynomials over the rationals.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// A finite sum `Σ c_e t^e` with integer exponents. Zero coefficients are
/// never stored; iteration runs in increasing exponent order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Scalar>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, Scalar::one())
    }

    /// `c · t^exp`.
    pub fn monomial(exp: i64, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    /// `t^exp`.
    pub fn t_pow(exp: i64) -> Self {
        LaurentPoly::monomial(exp, Scalar::one())
    }

    /// `t − root`.
    pub fn linear(root: &Scalar) -> Self {
        LaurentPoly::from_terms([(1, Scalar::one()), (0, -root)])
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (i64, Scalar)>>(iter: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in iter {
            p.add_term(e, &c);
        }
        p
    }

    /// Ordinary polynomial from coefficients of `t^0, t^1, …`.
    pub fn from_coeffs(coeffs: &[Scalar]) -> Self {
        LaurentPoly::from_terms(coeffs.iter().enumerate().map(|(i, c)| (i as i64, c.clone())))
    }

    pub fn add_term(&mut self, exp: i64, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> Scalar {
        self.terms.get(&exp).cloned().unwrap_or_else(Scalar::zero)
    }

    /// `(exponent, coefficient)` in increasing exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Scalar)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.keys().copied()
    }

    /// Largest exponent, `None` for zero.
    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Smallest exponent, `None` for zero.
    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.values().next_back()
    }

    /// Multiplication by `t^m`.
    pub fn shift(&self, m: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + m, c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficients of `t^0 … t^max` when all exponents are nonnegative.
    pub fn to_dense(&self) -> Option<Vec<Scalar>> {
        match self.min_exp() {
            None => Some(Vec::new()),
            Some(lo) if lo < 0 => None,
            Some(_) => {
                let hi = self.max_exp().unwrap_or(0);
                Some((0..=hi).map(|e| self.coeff(e)).collect())
            }
        }
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.iter() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.iter() {
            out.add_term(e, &-c);
        }
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, ca) in self.iter() {
            for (b, cb) in rhs.iter() {
                out.add_term(a + b, &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match *e {
                0 => {}
                1 => write!(f, "{}t", if show_coeff { "·" } else { "" })?,
                _ => write!(f, "{}t^{}", if show_coeff { "·" } else { "" }, e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
