//! The rewriting engine: the action of the algebra on PBW words.
//!
//! A word is a canonical sequence of free factors applied to the cyclic
//! vector. To apply a generator `g` to `x·rest` we either prepend `g` (when
//! it is free and not smaller than `x`), or use `g·x·rest = x·(g·rest) +
//! [g,x]·rest`. Non-free generators reaching the cyclic vector act by the
//! setup's functionals, central ones act by their value everywhere.
//!
//! Termination: each step either shortens the word `g` still has to pass
//! or replaces `g·x` by brackets applied to the strictly shorter `rest`,
//! so `(remaining length, inversions)` decreases lexicographically.
//!
//! Exponents may be symbolic (`k + c` for a free integer `k`), which is how
//! the "for all k" Whittaker conditions are computed in one pass. A word
//! then holds at most one symbolic factor, placed first within its block as
//! if `k` were large. Coefficients are linear combinations of shifted setup
//! functionals evaluated at `k`. Kronecker deltas in `k` are recorded as
//! exceptional values of `k` and dropped; callers check those values
//! concretely.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use super::element::ModuleElement;
use super::monomial::{Letter, PbwMonomial};
use super::setup::{ActingValue, Slot, WhittakerSetup};
use super::PbwError;
use crate::functional::{ExpPoly, Functional};
use crate::laurent::LaurentPoly;
use crate::lie::{bracket_gen, Gen, Generator, LieElement, LoopExp, ZeroSum};
use crate::scalar::Scalar;

/// A loop exponent: an integer, or `k + c` for the family parameter `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum Exp {
    Concrete(i64),
    Sym(i64),
}

impl From<i64> for Exp {
    fn from(k: i64) -> Exp {
        Exp::Concrete(k)
    }
}

impl LoopExp for Exp {
    fn add(self, other: Exp) -> Exp {
        match (self, other) {
            (Exp::Concrete(a), Exp::Concrete(b)) => Exp::Concrete(a + b),
            (Exp::Sym(a), Exp::Concrete(b)) | (Exp::Concrete(b), Exp::Sym(a)) => Exp::Sym(a + b),
            (Exp::Sym(_), Exp::Sym(_)) => unreachable!("two symbolic factors in one bracket"),
        }
    }

    fn sums_to_zero(self, other: Exp) -> ZeroSum {
        match self.add(other) {
            Exp::Concrete(0) => ZeroSum::Yes,
            Exp::Concrete(_) => ZeroSum::No,
            Exp::Sym(c) => ZeroSum::Exceptional(-c),
        }
    }

    fn as_concrete(self) -> Option<i64> {
        match self {
            Exp::Concrete(k) => Some(k),
            Exp::Sym(_) => None,
        }
    }

    fn zero() -> Exp {
        Exp::Concrete(0)
    }
}

pub(crate) type SGen = Gen<Exp>;
pub(crate) type Word = Vec<SGen>;

fn key(g: &SGen) -> (Letter, Exp) {
    (Letter::from_kind(g.kind), g.exp)
}

/// `scalar + Σ_slot (f_slot . F_slot)(k)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub(crate) struct SymCoeff {
    pub scalar: Scalar,
    pub shifts: BTreeMap<Slot, LaurentPoly>,
}

impl SymCoeff {
    fn constant(s: Scalar) -> Self {
        SymCoeff { scalar: s, shifts: BTreeMap::new() }
    }

    fn one() -> Self {
        SymCoeff::constant(Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero() && self.shifts.is_empty()
    }

    pub fn is_scalar(&self) -> bool {
        self.shifts.is_empty()
    }

    pub(crate) fn scaled(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return SymCoeff::default();
        }
        SymCoeff {
            scalar: &self.scalar * s,
            shifts: self.shifts.iter().map(|(k, f)| (*k, f.scale(s))).collect(),
        }
    }

    /// Product of two coefficients, at most one of which involves a
    /// functional: a single family parameter is evaluated at most once.
    fn mul(&self, other: &SymCoeff) -> SymCoeff {
        if self.is_scalar() {
            other.scaled(&self.scalar)
        } else {
            assert!(other.is_scalar(), "product of two functional values");
            self.scaled(&other.scalar)
        }
    }

    fn add_assign(&mut self, other: &SymCoeff) {
        self.scalar += &other.scalar;
        for (slot, f) in &other.shifts {
            let entry = self.shifts.entry(*slot).or_default();
            *entry = &*entry + f;
            if entry.is_zero() {
                self.shifts.remove(slot);
            }
        }
    }

    pub fn to_functional(&self, setup: &WhittakerSetup) -> Functional {
        let mut out = Functional::ExpPoly(ExpPoly::constant(self.scalar.clone()));
        for (slot, f) in &self.shifts {
            out = out.add(&setup.functional(*slot).shift(f));
        }
        out
    }
}

pub(crate) type Terms = BTreeMap<Word, SymCoeff>;

pub(crate) fn add_to(terms: &mut Terms, word: Word, c: SymCoeff) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&word) {
        Some(slot) => {
            slot.add_assign(&c);
            if slot.is_zero() {
                terms.remove(&word);
            }
        }
        None => {
            terms.insert(word, c);
        }
    }
}

fn single(word: Word, c: SymCoeff) -> Terms {
    let mut t = Terms::new();
    add_to(&mut t, word, c);
    t
}

/// The action of one setup's algebra on its universal Whittaker module.
///
/// Holds a memo of generator-on-word applications; not `Sync`, create one
/// per thread.
pub struct Engine<'s> {
    setup: &'s WhittakerSetup,
    memo: RefCell<BTreeMap<(SGen, Word), Rc<Terms>>>,
    exceptions: RefCell<BTreeSet<i64>>,
}

impl<'s> Engine<'s> {
    pub fn new(setup: &'s WhittakerSetup) -> Self {
        Engine { setup, memo: RefCell::new(BTreeMap::new()), exceptions: RefCell::new(BTreeSet::new()) }
    }

    pub fn setup(&self) -> &'s WhittakerSetup {
        self.setup
    }

    /// Values of the family parameter at which a dropped Kronecker delta
    /// would have fired, over everything computed so far.
    pub fn exceptional_exponents(&self) -> BTreeSet<i64> {
        self.exceptions.borrow().clone()
    }

    pub(crate) fn eval(&self, g: SGen) -> SymCoeff {
        match self.setup.acting_value(g.kind) {
            ActingValue::Zero => SymCoeff::default(),
            ActingValue::Level => SymCoeff::constant(self.setup.level().clone()),
            ActingValue::Slot(slot) => match g.exp {
                Exp::Concrete(k) => {
                    let f = self.setup.functional_ref(slot).expect("slot in range");
                    SymCoeff::constant(f.evaluate(k))
                }
                Exp::Sym(c) => {
                    let mut shifts = BTreeMap::new();
                    shifts.insert(slot, LaurentPoly::t_pow(c));
                    SymCoeff { scalar: Scalar::zero(), shifts }
                }
            },
        }
    }

    pub(crate) fn apply(&self, g: SGen, word: &[SGen]) -> Rc<Terms> {
        let memo_key = (g, word.to_vec());
        if let Some(t) = self.memo.borrow().get(&memo_key) {
            return t.clone();
        }
        let result = Rc::new(self.compute(g, word));
        self.memo.borrow_mut().insert(memo_key, result.clone());
        result
    }

    fn compute(&self, g: SGen, word: &[SGen]) -> Terms {
        if g.kind.is_central() {
            return single(word.to_vec(), self.eval(g));
        }
        let free = self.setup.is_free(g.kind);
        let Some((x, rest)) = word.split_first() else {
            return if free { single(vec![g], SymCoeff::one()) } else { single(Vec::new(), self.eval(g)) };
        };
        if free && key(&g) >= key(x) {
            let mut w = Vec::with_capacity(word.len() + 1);
            w.push(g);
            w.extend_from_slice(word);
            return single(w, SymCoeff::one());
        }
        let mut out = Terms::new();
        let inner = self.apply(g, rest);
        for (w, c) in inner.iter() {
            for (w2, c2) in self.apply(*x, w).iter() {
                add_to(&mut out, w2.clone(), c.mul(c2));
            }
        }
        let brackets = bracket_gen(self.setup.algebra(), g, *x, |k| {
            self.exceptions.borrow_mut().insert(k);
        });
        for (c, h) in brackets {
            for (w2, c2) in self.apply(h, rest).iter() {
                add_to(&mut out, w2.clone(), c2.scaled(&c));
            }
        }
        debug_assert!(out.keys().all(|w| w.len() <= word.len() + 1), "rewriting grew a word");
        out
    }

    pub(crate) fn check_monomial(&self, m: &PbwMonomial) -> Result<(), PbwError> {
        if m.letters().iter().all(|(l, _)| self.setup.is_free(l.kind())) {
            Ok(())
        } else {
            Err(PbwError::InvalidMonomial { monomial: m.clone(), pair: self.setup.pair() })
        }
    }

    pub fn check_element(&self, u: &ModuleElement) -> Result<(), PbwError> {
        u.monomials().try_for_each(|m| self.check_monomial(m))
    }

    pub(crate) fn apply_concrete(&self, g: SGen, u: &ModuleElement) -> ModuleElement {
        let mut out = ModuleElement::zero();
        for (m, c) in u.iter() {
            for (w, coeff) in self.apply(g, &m.to_word::<Exp>()).iter() {
                debug_assert!(coeff.is_scalar());
                out.add_term(word_to_monomial(w), &(c * &coeff.scalar));
            }
        }
        out
    }

    /// `g · u` in normal form.
    pub fn act(&self, g: &Generator, u: &ModuleElement) -> Result<ModuleElement, PbwError> {
        LieElement::generator(*g).check(self.setup.algebra())?;
        self.check_element(u)?;
        let sg = g.to_gen();
        Ok(self.apply_concrete(Gen { kind: sg.kind, exp: Exp::Concrete(sg.exp) }, u))
    }

    /// `x · u` for a linear combination `x`.
    pub fn act_element(&self, x: &LieElement, u: &ModuleElement) -> Result<ModuleElement, PbwError> {
        x.check(self.setup.algebra())?;
        let mut out = ModuleElement::zero();
        for (g, c) in x.iter() {
            out.add_scaled(&self.act(g, u)?, c);
        }
        Ok(out)
    }

    /// `x_1 · (x_2 · ( … x_r · u))`.
    pub fn act_word(&self, word: &[LieElement], u: &ModuleElement) -> Result<ModuleElement, PbwError> {
        self.check_element(u)?;
        let mut cur = u.clone();
        for x in word.iter().rev() {
            cur = self.act_element(x, &cur)?;
        }
        Ok(cur)
    }
}

pub(crate) fn word_to_monomial(w: &[SGen]) -> PbwMonomial {
    PbwMonomial::from_factors(
        w.iter().map(|g| (Letter::from_kind(g.kind), g.exp.as_concrete().expect("concrete word"))),
    )
}
