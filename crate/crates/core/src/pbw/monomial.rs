//! PBW monomials over the free part of a pair, their statistics, and the
//! principal total order.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::lie::{Gen, Kind, Sl2Basis};

/// The tag of a free factor: a Witt/Virasoro degree, or `f`/`h` for `sl2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    D(i64),
    F,
    H,
}

impl Letter {
    /// Position in the canonical factor order: degrees descending, and the
    /// `f`-block before the `h`-block.
    pub fn rank(self) -> i64 {
        match self {
            Letter::D(n) => n,
            Letter::F => 1,
            Letter::H => 0,
        }
    }

    fn tag_id(self) -> u8 {
        match self {
            Letter::D(_) => 0,
            Letter::F => 1,
            Letter::H => 2,
        }
    }

    pub(crate) fn kind(self) -> Kind {
        match self {
            Letter::D(n) => Kind::D(n),
            Letter::F => Kind::Sl2(Sl2Basis::F),
            Letter::H => Kind::Sl2(Sl2Basis::H),
        }
    }

    pub(crate) fn from_kind(kind: Kind) -> Letter {
        match kind {
            Kind::D(n) => Letter::D(n),
            Kind::Sl2(Sl2Basis::F) => Letter::F,
            Kind::Sl2(Sl2Basis::H) => Letter::H,
            other => unreachable!("{other:?} is never a free factor"),
        }
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rank(), self.tag_id()).cmp(&(other.rank(), other.tag_id()))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::D(n) => write!(f, "D{n}"),
            Letter::F => write!(f, "f"),
            Letter::H => write!(f, "h"),
        }
    }
}

/// A block of equal factors `(letter ⊗ t^k)^mult`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Factor {
    pub letter: Letter,
    pub k: i64,
    pub mult: u32,
}

/// An ordered product of free factors applied to the cyclic vector.
///
/// Factors are stored one per occurrence, sorted so that `(letter, k)` is
/// non-increasing left to right. The empty monomial is the cyclic vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PbwMonomial {
    letters: Vec<(Letter, i64)>,
}

pub(crate) fn sort_desc<T: Ord>(v: &mut [T]) {
    v.sort_by(|a, b| b.cmp(a));
}

impl PbwMonomial {
    pub fn cyclic() -> Self {
        PbwMonomial::default()
    }

    /// Builds from factors in any order.
    pub fn from_factors<I: IntoIterator<Item = (Letter, i64)>>(it: I) -> Self {
        let mut letters: Vec<(Letter, i64)> = it.into_iter().collect();
        sort_desc(&mut letters);
        PbwMonomial { letters }
    }

    pub fn from_blocks<I: IntoIterator<Item = Factor>>(it: I) -> Self {
        PbwMonomial::from_factors(
            it.into_iter()
                .flat_map(|f| core::iter::repeat((f.letter, f.k)).take(f.mult as usize)),
        )
    }

    pub fn is_cyclic(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn lth(&self) -> usize {
        self.letters.len()
    }

    /// Factors one per occurrence, in canonical order.
    pub fn letters(&self) -> &[(Letter, i64)] {
        &self.letters
    }

    /// Factors grouped into blocks with multiplicities, in canonical order.
    pub fn factors(&self) -> Vec<Factor> {
        let mut out: Vec<Factor> = Vec::new();
        for &(letter, k) in &self.letters {
            match out.last_mut() {
                Some(f) if f.letter == letter && f.k == k => f.mult += 1,
                _ => out.push(Factor { letter, k, mult: 1 }),
            }
        }
        out
    }

    /// Least rank present, `None` for the cyclic vector.
    pub fn min_rank(&self) -> Option<i64> {
        self.letters.last().map(|(l, _)| l.rank())
    }

    pub fn stats(&self) -> MonomialStats {
        let mut s = MonomialStats { lth: self.lth(), ..MonomialStats::default() };
        for &(letter, k) in &self.letters {
            let d = letter.rank();
            *s.lth_by_degree.entry(d).or_insert(0) += 1;
            s.d_tuple.push(d);
            s.t_tuple.push(k);
            s.d_set.insert(d);
            s.t_set.insert(k);
            s.t_set_by_degree.entry(d).or_default().insert(k);
        }
        s
    }

    pub(crate) fn to_word<X: From<i64>>(&self) -> Vec<Gen<X>> {
        self.letters.iter().map(|(l, k)| Gen { kind: l.kind(), exp: X::from(*k) }).collect()
    }
}

/// Length and degree/exponent statistics of a monomial. For `sl2` the
/// `f`- and `h`-blocks are reported under degrees `1` and `0`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MonomialStats {
    pub lth: usize,
    pub lth_by_degree: BTreeMap<i64, usize>,
    pub d_tuple: Vec<i64>,
    pub t_tuple: Vec<i64>,
    pub d_set: BTreeSet<i64>,
    pub t_set: BTreeSet<i64>,
    pub t_set_by_degree: BTreeMap<i64, BTreeSet<i64>>,
}

impl MonomialStats {
    pub fn lth_at(&self, degree: i64) -> usize {
        self.lth_by_degree.get(&degree).copied().unwrap_or(0)
    }
}

impl PartialOrd for PbwMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The principal order: length, then the degree tuple, then the exponent
/// tuple, both lexicographically.
impl Ord for PbwMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let ranks = |m: &PbwMonomial| m.letters.iter().map(|(l, _)| l.rank()).collect::<Vec<_>>();
        let exps = |m: &PbwMonomial| m.letters.iter().map(|(_, k)| *k).collect::<Vec<_>>();
        let tags = |m: &PbwMonomial| m.letters.iter().map(|(l, _)| l.tag_id()).collect::<Vec<_>>();
        self.lth()
            .cmp(&other.lth())
            .then_with(|| ranks(self).cmp(&ranks(other)))
            .then_with(|| exps(self).cmp(&exps(other)))
            .then_with(|| tags(self).cmp(&tags(other)))
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.factors() {
            match b.letter {
                Letter::D(n) => write!(f, "D({n},{})", b.k)?,
                Letter::F => write!(f, "f(t^{})", b.k)?,
                Letter::H => write!(f, "h(t^{})", b.k)?,
            }
            if b.mult > 1 {
                write!(f, "^{}", b.mult)?;
            }
            write!(f, " ")?;
        }
        write!(f, "v")
    }
}

impl fmt::Debug for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
