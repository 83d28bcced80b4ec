//! Generators and structure constants of the loop Witt algebra, the loop
//! Virasoro algebra and affine `sl2`.
//!
//! Brackets are implemented once over a generic loop exponent so that the
//! rewriting engine can bracket against generators whose exponent is the
//! symbolic `k + c` of a "for all k" family.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AlgebraId {
    LoopWitt,
    LoopVirasoro,
    AffineSl2,
}

impl AlgebraId {
    pub fn name(self) -> &'static str {
        match self {
            AlgebraId::LoopWitt => "loop-witt",
            AlgebraId::LoopVirasoro => "loop-virasoro",
            AlgebraId::AffineSl2 => "affine-sl2",
        }
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sl2Basis {
    E,
    H,
    F,
}

impl Sl2Basis {
    /// `[self, other]` in `sl2` as `(coefficient, basis element)`.
    fn bracket(self, other: Sl2Basis) -> Option<(i64, Sl2Basis)> {
        use Sl2Basis::*;
        match (self, other) {
            (E, F) => Some((1, H)),
            (F, E) => Some((-1, H)),
            (H, E) => Some((2, E)),
            (E, H) => Some((-2, E)),
            (H, F) => Some((-2, F)),
            (F, H) => Some((2, F)),
            _ => None,
        }
    }

    /// Trace form: `(e,f) = (f,e) = 1`, `(h,h) = 2`.
    fn form(self, other: Sl2Basis) -> i64 {
        use Sl2Basis::*;
        match (self, other) {
            (E, F) | (F, E) => 1,
            (H, H) => 2,
            _ => 0,
        }
    }
}

impl fmt::Display for Sl2Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sl2Basis::E => "e",
            Sl2Basis::H => "h",
            Sl2Basis::F => "f",
        })
    }
}

/// A basis element of one of the three algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// `d_n ⊗ t^k` in the loop Witt algebra, `n ≥ −1`.
    WittD { n: i64, k: i64 },
    /// `d_n ⊗ t^k` in the loop Virasoro algebra.
    VirD { n: i64, k: i64 },
    /// `c ⊗ t^k` in the loop Virasoro algebra.
    VirC { k: i64 },
    /// `x ⊗ t^k` in affine `sl2`.
    Sl2 { x: Sl2Basis, k: i64 },
    /// The central element of affine `sl2`.
    Sl2K,
}

impl Generator {
    pub fn algebra(&self) -> AlgebraId {
        match self {
            Generator::WittD { .. } => AlgebraId::LoopWitt,
            Generator::VirD { .. } | Generator::VirC { .. } => AlgebraId::LoopVirasoro,
            Generator::Sl2 { .. } | Generator::Sl2K => AlgebraId::AffineSl2,
        }
    }

    /// Grading degree; `None` for central elements and `sl2`.
    pub fn degree(&self) -> Option<i64> {
        match self {
            Generator::WittD { n, .. } | Generator::VirD { n, .. } => Some(*n),
            _ => None,
        }
    }

    pub fn is_central(&self) -> bool {
        matches!(self, Generator::VirC { .. } | Generator::Sl2K)
    }

    pub(crate) fn to_gen(self) -> Gen<i64> {
        match self {
            Generator::WittD { n, k } | Generator::VirD { n, k } => Gen { kind: Kind::D(n), exp: k },
            Generator::VirC { k } => Gen { kind: Kind::C, exp: k },
            Generator::Sl2 { x, k } => Gen { kind: Kind::Sl2(x), exp: k },
            Generator::Sl2K => Gen { kind: Kind::K, exp: 0 },
        }
    }

    pub(crate) fn from_gen(alg: AlgebraId, g: Gen<i64>) -> Generator {
        match (alg, g.kind) {
            (AlgebraId::LoopWitt, Kind::D(n)) => Generator::WittD { n, k: g.exp },
            (AlgebraId::LoopVirasoro, Kind::D(n)) => Generator::VirD { n, k: g.exp },
            (AlgebraId::LoopVirasoro, Kind::C) => Generator::VirC { k: g.exp },
            (AlgebraId::AffineSl2, Kind::Sl2(x)) => Generator::Sl2 { x, k: g.exp },
            (AlgebraId::AffineSl2, Kind::K) => Generator::Sl2K,
            (alg, kind) => unreachable!("{kind:?} is not a generator of {alg}"),
        }
    }

    pub fn check(&self, alg: AlgebraId) -> Result<(), LieError> {
        if self.algebra() != alg {
            return Err(LieError::MixedAlgebra { expected: alg, found: *self });
        }
        if let Generator::WittD { n, .. } = self {
            if *n < -1 {
                return Err(LieError::WittDegree(*n));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::WittD { n, k } | Generator::VirD { n, k } => write!(f, "d({n})⊗t^{k}"),
            Generator::VirC { k } => write!(f, "c⊗t^{k}"),
            Generator::Sl2 { x, k } => write!(f, "{x}⊗t^{k}"),
            Generator::Sl2K => write!(f, "k̂"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("generator {found} does not belong to {expected}")]
    MixedAlgebra { expected: AlgebraId, found: Generator },
    #[error("loop Witt generators need degree >= -1, got {0}")]
    WittDegree(i64),
    #[error("the involution is defined on the loop Virasoro algebra only, got {0}")]
    NotVirasoro(Generator),
}

/// Generator kinds shared by all three algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum Kind {
    D(i64),
    C,
    Sl2(Sl2Basis),
    K,
}

impl Kind {
    pub(crate) fn is_central(self) -> bool {
        matches!(self, Kind::C | Kind::K)
    }
}

/// A basis element with loop exponent of type `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Gen<X> {
    pub kind: Kind,
    pub exp: X,
}

/// Loop exponents: concrete integers or `k + c` for a free integer `k`.
pub(crate) trait LoopExp: Copy + Ord {
    fn add(self, other: Self) -> Self;
    /// Whether `self + other = 0`, or the single `k` for which it holds.
    fn sums_to_zero(self, other: Self) -> ZeroSum;
    fn as_concrete(self) -> Option<i64>;
    fn zero() -> Self;
}

pub(crate) enum ZeroSum {
    Yes,
    No,
    /// Holds only for this value of the symbolic `k`.
    Exceptional(i64),
}

impl LoopExp for i64 {
    fn add(self, other: i64) -> i64 {
        self + other
    }
    fn sums_to_zero(self, other: i64) -> ZeroSum {
        if self + other == 0 {
            ZeroSum::Yes
        } else {
            ZeroSum::No
        }
    }
    fn as_concrete(self) -> Option<i64> {
        Some(self)
    }
    fn zero() -> i64 {
        0
    }
}

/// Structure constants. Central terms whose Kronecker delta depends on a
/// symbolic exponent are reported through `exceptional` and dropped.
pub(crate) fn bracket_gen<X: LoopExp>(
    alg: AlgebraId,
    a: Gen<X>,
    b: Gen<X>,
    mut exceptional: impl FnMut(i64),
) -> Vec<(Scalar, Gen<X>)> {
    let mut out = Vec::new();
    if a.kind.is_central() || b.kind.is_central() {
        return out;
    }
    let exp = a.exp.add(b.exp);
    match (a.kind, b.kind) {
        (Kind::D(n), Kind::D(m)) => {
            if m != n {
                out.push((Scalar::from_int(m - n), Gen { kind: Kind::D(n + m), exp }));
            }
            if alg == AlgebraId::LoopVirasoro && n + m == 0 && n * n * n != n {
                let c = Scalar::ratio(n * n * n - n, 12);
                out.push((c, Gen { kind: Kind::C, exp }));
            }
        }
        (Kind::Sl2(x), Kind::Sl2(y)) => {
            if let Some((c, z)) = x.bracket(y) {
                out.push((Scalar::from_int(c), Gen { kind: Kind::Sl2(z), exp }));
            }
            let form = x.form(y);
            if form != 0 {
                match a.exp.sums_to_zero(b.exp) {
                    ZeroSum::No => {}
                    ZeroSum::Exceptional(k) => exceptional(k),
                    ZeroSum::Yes => {
                        let k = a.exp.as_concrete().expect("a concrete zero sum has concrete parts");
                        if k != 0 {
                            out.push((Scalar::from_int(k * form), Gen { kind: Kind::K, exp: X::zero() }));
                        }
                    }
                }
            }
        }
        (ka, kb) => unreachable!("bracket of {ka:?} and {kb:?} across algebras"),
    }
    out
}

/// A finite linear combination of generators of one algebra.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LieElement {
    terms: BTreeMap<Generator, Scalar>,
}

impl LieElement {
    pub fn zero() -> Self {
        LieElement::default()
    }

    pub fn generator(g: Generator) -> Self {
        LieElement::term(g, Scalar::one())
    }

    pub fn term(g: Generator, c: Scalar) -> Self {
        let mut e = LieElement::zero();
        e.add_term(g, &c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Generator, Scalar)>>(it: I) -> Self {
        let mut e = LieElement::zero();
        for (g, c) in it {
            e.add_term(g, &c);
        }
        e
    }

    pub fn add_term(&mut self, g: Generator, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(g).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Generator, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, g: &Generator) -> Scalar {
        self.terms.get(g).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        LieElement::from_terms(self.terms.iter().map(|(g, c)| (*g, c * s)))
    }

    pub fn check(&self, alg: AlgebraId) -> Result<(), LieError> {
        self.terms.keys().try_for_each(|g| g.check(alg))
    }
}

impl Add<&LieElement> for &LieElement {
    type Output = LieElement;
    fn add(self, rhs: &LieElement) -> LieElement {
        let mut out = self.clone();
        for (g, c) in rhs.iter() {
            out.add_term(*g, c);
        }
        out
    }
}

impl Sub<&LieElement> for &LieElement {
    type Output = LieElement;
    fn sub(self, rhs: &LieElement) -> LieElement {
        self + &-rhs
    }
}

impl Neg for &LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Mul<&LieElement> for &Scalar {
    type Output = LieElement;
    fn mul(self, rhs: &LieElement) -> LieElement {
        rhs.scale(self)
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Bracket of two generators of `alg`.
pub fn bracket_generators(alg: AlgebraId, a: &Generator, b: &Generator) -> Result<LieElement, LieError> {
    a.check(alg)?;
    b.check(alg)?;
    let terms = bracket_gen(alg, a.to_gen(), b.to_gen(), |_| unreachable!("concrete exponents"));
    Ok(LieElement::from_terms(terms.into_iter().map(|(c, g)| (Generator::from_gen(alg, g), c))))
}

/// Bilinear extension of the structure constants.
pub fn bracket(alg: AlgebraId, x: &LieElement, y: &LieElement) -> Result<LieElement, LieError> {
    x.check(alg)?;
    y.check(alg)?;
    let mut out = LieElement::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            let cab = ca * cb;
            for (g, c) in bracket_generators(alg, a, b)?.iter() {
                out.add_term(*g, &(&cab * c));
            }
        }
    }
    Ok(out)
}

/// `d_n⊗t^k ↦ −d_{−n}⊗t^k`, `c⊗t^k ↦ −c⊗t^k` on the loop Virasoro algebra.
pub fn involution(x: &LieElement) -> Result<LieElement, LieError> {
    let mut out = LieElement::zero();
    for (g, c) in x.iter() {
        let image = match *g {
            Generator::VirD { n, k } => Generator::VirD { n: -n, k },
            Generator::VirC { k } => Generator::VirC { k },
            other => return Err(LieError::NotVirasoro(other)),
        };
        out.add_term(image, &-c);
    }
    Ok(out)
}
