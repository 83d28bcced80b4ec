//! Whittaker pairs and the functional data defining a universal Whittaker
//! module.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::functional::Functional;
use crate::lie::{AlgebraId, Kind, Sl2Basis};
use crate::scalar::Scalar;

/// The four supported pairs `(algebra, acting subalgebra)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairKind {
    /// Loop Witt algebra acted on by degrees `≥ N`.
    GeqN,
    /// Loop Witt algebra acted on by the degree `−1` line.
    GMinus,
    /// Loop Virasoro algebra acted on by degrees `≥ N` and the central line.
    VirGeqN,
    /// Affine `sl2` acted on by `e ⊗ A` and the central element.
    Sl2E,
}

impl PairKind {
    pub fn algebra(self) -> AlgebraId {
        match self {
            PairKind::GeqN | PairKind::GMinus => AlgebraId::LoopWitt,
            PairKind::VirGeqN => AlgebraId::LoopVirasoro,
            PairKind::Sl2E => AlgebraId::AffineSl2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PairKind::GeqN => "geq-n",
            PairKind::GMinus => "g-minus",
            PairKind::VirGeqN => "vir-geq-n",
            PairKind::Sl2E => "sl2-e",
        }
    }

    pub fn has_n(self) -> bool {
        matches!(self, PairKind::GeqN | PairKind::VirGeqN)
    }
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Names a setup functional inside symbolic coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    /// `ψ_n`, the value on the degree-`n` line.
    Psi(i64),
    /// `φ`, for the `g₋₁` and `sl2` pairs.
    Phi,
    /// `φ_c`, the value on the Virasoro central line.
    PhiC,
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::Psi(n) => write!(f, "psi_{n}"),
            Slot::Phi => write!(f, "phi"),
            Slot::PhiC => write!(f, "phi_c"),
        }
    }
}

/// A setup rule violated by some field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Dotted path of the offending field, e.g. `setup.psi.3`.
    pub path: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

/// Unvalidated setup fields as they come from a scenario.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetupData {
    pub pair: PairKind,
    pub n: Option<i64>,
    pub psi: BTreeMap<i64, Functional>,
    pub phi: Option<Functional>,
    pub phi_c: Option<Functional>,
    pub level: Option<Scalar>,
}

impl SetupData {
    pub fn new(pair: PairKind) -> Self {
        SetupData { pair, n: None, psi: BTreeMap::new(), phi: None, phi_c: None, level: None }
    }

    /// Every rule the fields break. Empty iff [`WhittakerSetup::from_data`]
    /// succeeds.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut v = |path: &str, message: String| out.push(Violation { path: path.into(), message });
        let pair = self.pair;
        let unused = |field: &str| format!("{field} is not part of the {pair} pair");

        if pair.has_n() {
            match self.n {
                None => v("setup.N", "N is required for this pair".into()),
                Some(n) if n < 1 => v("setup.N", format!("N must be >= 1, got {n}")),
                Some(n) => {
                    for &i in self.psi.keys() {
                        let path = format!("setup.psi.{i}");
                        if i > 2 * n {
                            v(&path, format!("psi_{i} cannot be supplied: ψ_i = 0 for i ≥ 2N+1 (N = {n})"));
                        } else if i < n {
                            v(&path, format!("psi_{i} is not in the acting range N ≤ i ≤ 2N (N = {n})"));
                        }
                    }
                }
            }
            if self.phi.is_some() {
                v("setup.phi", unused("phi"));
            }
            if self.level.is_some() {
                v("setup.level", unused("level"));
            }
            if pair == PairKind::GeqN && self.phi_c.is_some() {
                v("setup.phi_c", unused("phi_c"));
            }
        } else {
            if self.n.is_some() {
                v("setup.N", unused("N"));
            }
            if !self.psi.is_empty() {
                v("setup.psi", unused("psi"));
            }
            if self.phi_c.is_some() {
                v("setup.phi_c", unused("phi_c"));
            }
            if self.phi.is_none() {
                v("setup.phi", "phi is required for this pair".into());
            }
            match pair {
                PairKind::Sl2E if self.level.is_none() => v("setup.level", "level is required for this pair".into()),
                PairKind::GMinus if self.level.is_some() => v("setup.level", unused("level")),
                _ => {}
            }
        }
        out
    }
}

/// A validated Whittaker pair with its Whittaker function.
///
/// For the `≥ N` pairs the map `n ↦ ψ_n` is stored for `N ≤ n ≤ 2N` only;
/// missing entries are zero and higher degrees act by zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhittakerSetup {
    pair: PairKind,
    n: i64,
    psi: BTreeMap<i64, Functional>,
    phi: Functional,
    phi_c: Functional,
    level: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid setup: {}", .0.iter().map(|v| format!("{v}")).collect::<Vec<_>>().join("; "))]
pub struct SetupError(pub Vec<Violation>);

impl WhittakerSetup {
    pub fn from_data(data: SetupData) -> Result<Self, SetupError> {
        let violations = data.violations();
        if !violations.is_empty() {
            return Err(SetupError(violations));
        }
        let n = data.n.unwrap_or(0);
        let mut psi = BTreeMap::new();
        if data.pair.has_n() {
            for i in n..=2 * n {
                psi.insert(i, data.psi.get(&i).cloned().unwrap_or_default());
            }
        }
        Ok(WhittakerSetup {
            pair: data.pair,
            n,
            psi,
            phi: data.phi.unwrap_or_default(),
            phi_c: data.phi_c.unwrap_or_default(),
            level: data.level.unwrap_or_default(),
        })
    }

    /// Loop Witt, acted on by degrees `≥ n`, with `ψ_i` for the given `i`.
    pub fn geq_n<I: IntoIterator<Item = (i64, Functional)>>(n: i64, psi: I) -> Result<Self, SetupError> {
        let mut d = SetupData::new(PairKind::GeqN);
        d.n = Some(n);
        d.psi = psi.into_iter().collect();
        WhittakerSetup::from_data(d)
    }

    pub fn g_minus(phi: Functional) -> Result<Self, SetupError> {
        let mut d = SetupData::new(PairKind::GMinus);
        d.phi = Some(phi);
        WhittakerSetup::from_data(d)
    }

    pub fn vir_geq_n<I: IntoIterator<Item = (i64, Functional)>>(
        n: i64,
        psi: I,
        phi_c: Functional,
    ) -> Result<Self, SetupError> {
        let mut d = SetupData::new(PairKind::VirGeqN);
        d.n = Some(n);
        d.psi = psi.into_iter().collect();
        d.phi_c = Some(phi_c);
        WhittakerSetup::from_data(d)
    }

    pub fn sl2_e(phi: Functional, level: Scalar) -> Result<Self, SetupError> {
        let mut d = SetupData::new(PairKind::Sl2E);
        d.phi = Some(phi);
        d.level = Some(level);
        WhittakerSetup::from_data(d)
    }

    pub fn pair(&self) -> PairKind {
        self.pair
    }

    pub fn algebra(&self) -> AlgebraId {
        self.pair.algebra()
    }

    /// `N` for the `≥ N` pairs.
    pub fn n(&self) -> Option<i64> {
        self.pair.has_n().then_some(self.n)
    }

    /// `ψ_i`, zero outside `[N, 2N]`.
    pub fn psi(&self, i: i64) -> Functional {
        self.psi.get(&i).cloned().unwrap_or_default()
    }

    pub fn psi_map(&self) -> &BTreeMap<i64, Functional> {
        &self.psi
    }

    pub fn phi(&self) -> &Functional {
        &self.phi
    }

    pub fn phi_c(&self) -> &Functional {
        &self.phi_c
    }

    pub fn level(&self) -> &Scalar {
        &self.level
    }

    pub fn functional(&self, slot: Slot) -> Functional {
        match slot {
            Slot::Psi(i) => self.psi(i),
            Slot::Phi => self.phi.clone(),
            Slot::PhiC => self.phi_c.clone(),
        }
    }

    pub(crate) fn functional_ref(&self, slot: Slot) -> Option<&Functional> {
        match slot {
            Slot::Psi(i) => self.psi.get(&i),
            Slot::Phi => Some(&self.phi),
            Slot::PhiC => Some(&self.phi_c),
        }
    }

    /// Whether `kind` spans a PBW factor (as opposed to acting on the
    /// cyclic vector).
    pub(crate) fn is_free(&self, kind: Kind) -> bool {
        match (self.pair, kind) {
            (PairKind::GeqN | PairKind::VirGeqN, Kind::D(d)) => d < self.n,
            (PairKind::GMinus, Kind::D(d)) => d >= 0,
            (PairKind::Sl2E, Kind::Sl2(x)) => x != Sl2Basis::E,
            _ => false,
        }
    }

    /// How a non-free generator acts on the cyclic vector: a setup
    /// functional, a scalar, or zero.
    pub(crate) fn acting_value(&self, kind: Kind) -> ActingValue {
        match (self.pair, kind) {
            (PairKind::GeqN | PairKind::VirGeqN, Kind::D(d)) if d <= 2 * self.n => ActingValue::Slot(Slot::Psi(d)),
            (PairKind::GeqN | PairKind::VirGeqN, Kind::D(_)) => ActingValue::Zero,
            (PairKind::VirGeqN, Kind::C) => ActingValue::Slot(Slot::PhiC),
            (PairKind::GMinus, Kind::D(-1)) => ActingValue::Slot(Slot::Phi),
            (PairKind::Sl2E, Kind::Sl2(Sl2Basis::E)) => ActingValue::Slot(Slot::Phi),
            (PairKind::Sl2E, Kind::K) => ActingValue::Level,
            (pair, kind) => unreachable!("{kind:?} does not act in the {pair} pair"),
        }
    }
}

pub(crate) enum ActingValue {
    Slot(Slot),
    Level,
    Zero,
}
