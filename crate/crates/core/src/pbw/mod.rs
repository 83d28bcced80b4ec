//! Universal Whittaker modules in PBW normal form.

mod element;
mod monomial;
mod obligation;
mod rewrite;
mod setup;

use alloc::vec::Vec;
use core::cmp::Ordering;

pub use element::ModuleElement;
pub use monomial::{Factor, Letter, MonomialStats, PbwMonomial};
pub use obligation::{ActingFamily, Obligation, SlotFactor, Template, WhittakerWitness};
pub use rewrite::Engine;
pub use setup::{PairKind, SetupData, SetupError, Slot, Violation, WhittakerSetup};

use crate::lie::{Generator, LieElement, LieError};
use crate::verdict::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PbwError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("{monomial} is not a PBW monomial of the {pair} pair")]
    InvalidMonomial { monomial: PbwMonomial, pair: PairKind },
    #[error("{op} is not defined for the {pair} pair")]
    WrongPair { op: &'static str, pair: PairKind },
    #[error("{family} is not an acting family of the {pair} pair")]
    InvalidFamily { family: ActingFamily, pair: PairKind },
}

/// The principal order on monomials.
pub fn compare(u: &PbwMonomial, v: &PbwMonomial) -> Ordering {
    u.cmp(v)
}

pub fn stats(u: &PbwMonomial) -> MonomialStats {
    u.stats()
}

pub fn act(setup: &WhittakerSetup, g: &Generator, u: &ModuleElement) -> Result<ModuleElement, PbwError> {
    Engine::new(setup).act(g, u)
}

pub fn act_word(setup: &WhittakerSetup, word: &[LieElement], u: &ModuleElement) -> Result<ModuleElement, PbwError> {
    Engine::new(setup).act_word(word, u)
}

pub fn degree_bound(setup: &WhittakerSetup, u: &ModuleElement) -> Result<i64, PbwError> {
    Engine::new(setup).degree_bound(u)
}

pub fn residual_family(
    setup: &WhittakerSetup,
    family: ActingFamily,
    u: &ModuleElement,
) -> Result<Vec<Obligation>, PbwError> {
    Engine::new(setup).residual_family(family, u)
}

pub fn is_whittaker(setup: &WhittakerSetup, u: &ModuleElement) -> Result<Verdict<WhittakerWitness>, PbwError> {
    Engine::new(setup).is_whittaker(u)
}
