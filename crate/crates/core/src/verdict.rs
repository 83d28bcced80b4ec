//! Integer windows and three-valued decision results.

use alloc::vec::Vec;
use core::fmt;

/// A closed integer interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub const fn new(lo: i64, hi: i64) -> Self {
        Window { lo, hi }
    }

    /// Number of integers in the window (0 when `hi < lo`).
    pub fn len(&self) -> usize {
        if self.hi < self.lo {
            0
        } else {
            (self.hi - self.lo + 1) as usize
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, n: i64) -> bool {
        self.lo <= n && n <= self.hi
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = i64> + Clone {
        self.lo..=self.hi
    }

    /// Points of the window ordered by distance from zero, nonnegative first
    /// on ties: `0, 1, -1, 2, -2, …`.
    pub fn scan_order(&self) -> Vec<i64> {
        let mut pts: Vec<i64> = self.iter().collect();
        pts.sort_by_key(|n| (n.unsigned_abs(), *n < 0));
        pts
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Outcome of a decision procedure, tagged with its epistemic status.
///
/// `Exact*` results are proofs. `WindowedTrue` means no counterexample was
/// found on the stated window. `WindowedFalse` carries a concrete witness
/// found by window scanning.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    ExactTrue,
    ExactFalse(W),
    WindowedTrue(Window),
    WindowedFalse(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::ExactTrue | Verdict::WindowedTrue(_))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Verdict::ExactTrue | Verdict::ExactFalse(_))
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::ExactFalse(w) | Verdict::WindowedFalse(w) => Some(w),
            _ => None,
        }
    }
}
