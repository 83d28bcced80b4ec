//! Whittaker conditions as finitely many "for all k" obligations.
//!
//! For an acting family `x_k` (say `D(n,k)`), the residual
//! `(x_k − value(x_k))·u` is computed once with symbolic `k`. It comes out
//! as `Σ_j coeff_j(k) · template_j(k)`, where each template is a monomial
//! with at most one factor whose exponent is `k + c`, and each coefficient
//! is a functional evaluated at `k`.
//!
//! Completeness: distinct templates instantiate to distinct monomials for
//! all but finitely many `k`, and a nonzero exp-polynomial is nonzero at
//! infinitely many integers (if `c.φ = 0` and `φ` vanishes on `deg c`
//! consecutive integers it vanishes everywhere). So `u` is a Whittaker
//! vector iff every coefficient is the zero functional, up to the finitely
//! many exceptional `k` recorded by the engine, which are checked directly.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use super::element::ModuleElement;
use super::monomial::{Letter, PbwMonomial};
use super::rewrite::{add_to, Engine, Exp, Terms};
use super::setup::PairKind;
use super::PbwError;
use crate::functional::{Functional, DEFAULT_CLASS_WINDOW};
use crate::lie::{AlgebraId, Gen, Generator, Kind, Sl2Basis};
use crate::verdict::{Verdict, Window};

/// A one-parameter family of acting generators `x_k`, `k ∈ ℤ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ActingFamily {
    /// `d_n ⊗ t^k`.
    Degree(i64),
    /// `c ⊗ t^k` (loop Virasoro).
    Central,
    /// `e ⊗ t^k` (affine `sl2`).
    E,
}

impl ActingFamily {
    fn kind(self) -> Kind {
        match self {
            ActingFamily::Degree(n) => Kind::D(n),
            ActingFamily::Central => Kind::C,
            ActingFamily::E => Kind::Sl2(Sl2Basis::E),
        }
    }

    pub fn generator(self, alg: AlgebraId, k: i64) -> Generator {
        Generator::from_gen(alg, Gen { kind: self.kind(), exp: k })
    }
}

impl fmt::Display for ActingFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActingFamily::Degree(n) => write!(f, "d({n})⊗t^k"),
            ActingFamily::Central => write!(f, "c⊗t^k"),
            ActingFamily::E => write!(f, "e⊗t^k"),
        }
    }
}

/// The factor of a template whose exponent follows the family parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SlotFactor {
    pub letter: Letter,
    /// The factor is `letter ⊗ t^{k + offset}`.
    pub offset: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Template {
    pub base: PbwMonomial,
    pub slot: Option<SlotFactor>,
}

impl Template {
    pub fn instantiate(&self, k: i64) -> PbwMonomial {
        match self.slot {
            None => self.base.clone(),
            Some(s) => PbwMonomial::from_factors(
                self.base.letters().iter().copied().chain(core::iter::once((s.letter, k + s.offset))),
            ),
        }
    }
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = self.slot {
            write!(f, "[{}⊗t^(k{:+})] ", s.letter, s.offset)?;
        }
        write!(f, "{}", self.base)
    }
}

/// One "for all k" condition: the coefficient of `template(k)` in the
/// residual is `coefficient(t^k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obligation {
    pub template: Template,
    pub coefficient: Functional,
}

/// An acting generator `x_k` with `x_k·u ≠ value(x_k)·u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WhittakerWitness {
    pub family: ActingFamily,
    pub k: i64,
}

impl fmt::Display for WhittakerWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            ActingFamily::Degree(n) => write!(f, "d({n})⊗t^{}", self.k),
            ActingFamily::Central => write!(f, "c⊗t^{}", self.k),
            ActingFamily::E => write!(f, "e⊗t^{}", self.k),
        }
    }
}

/// Radius of the concrete scan for a witness once a residual coefficient
/// is known to be nonzero.
const WITNESS_RADIUS: i64 = 64;

impl Engine<'_> {
    /// Conservative `n_max` beyond which every `D(n,k)` kills `u`:
    /// `2N + lth(u)·(N + max(0, −d_min))`.
    pub fn degree_bound(&self, u: &ModuleElement) -> Result<i64, PbwError> {
        let setup = self.setup();
        let n = setup.n().ok_or(PbwError::WrongPair { op: "degree_bound", pair: setup.pair() })?;
        let d_min = u.monomials().filter_map(PbwMonomial::min_rank).min().unwrap_or(0);
        Ok(2 * n + u.lth() as i64 * (n + (-d_min).max(0)))
    }

    /// Every family whose condition can fail on `u`.
    pub fn acting_families(&self, u: &ModuleElement) -> Vec<ActingFamily> {
        let setup = self.setup();
        match setup.pair() {
            PairKind::GeqN | PairKind::VirGeqN => {
                let n = setup.n().expect("pair has N");
                let top = self.degree_bound(u).expect("pair has N");
                let mut out: Vec<ActingFamily> = (n..=top).map(ActingFamily::Degree).collect();
                if setup.pair() == PairKind::VirGeqN {
                    out.push(ActingFamily::Central);
                }
                out
            }
            PairKind::GMinus => alloc::vec![ActingFamily::Degree(-1)],
            PairKind::Sl2E => alloc::vec![ActingFamily::E],
        }
    }

    fn check_family(&self, family: ActingFamily) -> Result<(), PbwError> {
        let setup = self.setup();
        let ok = match (setup.pair(), family) {
            (PairKind::GeqN | PairKind::VirGeqN, ActingFamily::Degree(n)) => n >= setup.n().expect("pair has N"),
            (PairKind::VirGeqN, ActingFamily::Central) => true,
            (PairKind::GMinus, ActingFamily::Degree(-1)) => true,
            (PairKind::Sl2E, ActingFamily::E) => true,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(PbwError::InvalidFamily { family, pair: setup.pair() })
        }
    }

    pub(crate) fn residual_terms(&self, family: ActingFamily, u: &ModuleElement) -> Terms {
        let g = Gen { kind: family.kind(), exp: Exp::Sym(0) };
        let value = self.eval(g);
        let mut out = Terms::new();
        for (m, c) in u.iter() {
            let word = m.to_word::<Exp>();
            for (w, coeff) in self.apply(g, &word).iter() {
                add_to(&mut out, w.clone(), coeff.scaled(c));
            }
            add_to(&mut out, word, value.scaled(&-c));
        }
        out
    }

    /// The merged, pruned and sorted obligations of `(x_k − value(x_k))·u`.
    pub fn residual_family(&self, family: ActingFamily, u: &ModuleElement) -> Result<Vec<Obligation>, PbwError> {
        self.check_family(family)?;
        self.check_element(u)?;
        let mut out: Vec<Obligation> = self
            .residual_terms(family, u)
            .into_iter()
            .map(|(word, coeff)| Obligation {
                template: word_template(&word),
                coefficient: coeff.to_functional(self.setup()),
            })
            .filter(|o| !o.coefficient.is_structurally_zero())
            .collect();
        out.sort_by(|a, b| a.template.cmp(&b.template));
        Ok(out)
    }

    /// `(x_k − value(x_k))·u` for a concrete `k`.
    pub fn concrete_residual(&self, family: ActingFamily, k: i64, u: &ModuleElement) -> ModuleElement {
        let g = Gen { kind: family.kind(), exp: Exp::Concrete(k) };
        let value = self.eval(g).scalar;
        let mut out = self.apply_concrete(g, u);
        out.add_scaled(u, &-value);
        out
    }

    fn find_witness(&self, family: ActingFamily, u: &ModuleElement) -> Option<WhittakerWitness> {
        Window::new(-WITNESS_RADIUS, WITNESS_RADIUS)
            .scan_order()
            .into_iter()
            .find(|k| !self.concrete_residual(family, *k, u).is_zero())
            .map(|k| WhittakerWitness { family, k })
    }

    /// Decides whether `u` is a Whittaker vector, testing oracle-derived
    /// coefficients on [`DEFAULT_CLASS_WINDOW`].
    pub fn is_whittaker(&self, u: &ModuleElement) -> Result<Verdict<WhittakerWitness>, PbwError> {
        self.is_whittaker_in(u, DEFAULT_CLASS_WINDOW)
    }

    /// As [`Engine::is_whittaker`], with oracle zero tests on `window`.
    pub fn is_whittaker_in(&self, u: &ModuleElement, window: Window) -> Result<Verdict<WhittakerWitness>, PbwError> {
        self.check_element(u)?;
        if u.is_zero() {
            return Ok(Verdict::ExactTrue);
        }
        let mut windowed = false;
        for family in self.acting_families(u) {
            for ob in self.residual_family(family, u)? {
                match ob.coefficient.is_zero(window) {
                    Verdict::ExactTrue => {}
                    Verdict::WindowedTrue(_) => windowed = true,
                    Verdict::ExactFalse(k) | Verdict::WindowedFalse(k) => {
                        return Ok(match self.find_witness(family, u) {
                            Some(w) => Verdict::ExactFalse(w),
                            None => Verdict::WindowedFalse(WhittakerWitness { family, k }),
                        });
                    }
                }
            }
        }
        for family in self.acting_families(u) {
            for k in self.exceptional_for(family) {
                if !self.concrete_residual(family, k, u).is_zero() {
                    return Ok(Verdict::ExactFalse(WhittakerWitness { family, k }));
                }
            }
        }
        Ok(if windowed { Verdict::WindowedTrue(window) } else { Verdict::ExactTrue })
    }

    /// Exceptional parameters that need a concrete check for `family`.
    pub(crate) fn exceptional_for(&self, family: ActingFamily) -> BTreeSet<i64> {
        match family {
            ActingFamily::E => self.exceptional_exponents(),
            _ => BTreeSet::new(),
        }
    }
}

pub(crate) fn word_template(word: &[Gen<Exp>]) -> Template {
    let mut slot = None;
    let mut base = Vec::with_capacity(word.len());
    for g in word {
        let letter = Letter::from_kind(g.kind);
        match g.exp {
            Exp::Concrete(k) => base.push((letter, k)),
            Exp::Sym(offset) => {
                debug_assert!(slot.is_none(), "two symbolic factors in one word");
                slot = Some(SlotFactor { letter, offset });
            }
        }
    }
    Template { base: PbwMonomial::from_factors(base), slot }
}
