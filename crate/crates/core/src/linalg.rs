//! Exact sparse Gaussian elimination over the rationals.
//!
//! Rows are eliminated in the order they are pushed. Each pivot sits on the
//! smallest column index of its row, so the variables that stay free are the
//! largest columns a row cannot eliminate; callers that want a particular
//! normalization of the kernel basis order their columns accordingly.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::scalar::Scalar;

/// A sparse vector indexed by column.
pub type SparseRow = BTreeMap<usize, Scalar>;

/// Incrementally built row-echelon system.
#[derive(Debug, Clone, Default)]
pub struct EchelonSystem {
    ncols: usize,
    /// pivot column -> normalized row (entry at the pivot is 1)
    pivots: BTreeMap<usize, SparseRow>,
}

fn axpy(row: &mut SparseRow, factor: &Scalar, other: &SparseRow) {
    for (col, v) in other {
        let slot = row.entry(*col).or_insert_with(Scalar::zero);
        *slot -= factor * v;
        if slot.is_zero() {
            row.remove(col);
        }
    }
}

impl EchelonSystem {
    pub fn new(ncols: usize) -> Self {
        EchelonSystem { ncols, pivots: BTreeMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds an equation `Σ row[c]·x_c = 0`. Returns whether the rank grew.
    pub fn push(&mut self, mut row: SparseRow) -> bool {
        row.retain(|c, v| {
            assert!(*c < self.ncols, "column {c} out of range");
            !v.is_zero()
        });
        while let Some((&col, lead)) = row.iter().next() {
            match self.pivots.get(&col) {
                Some(p) => {
                    let factor = lead.clone();
                    axpy(&mut row, &factor, p);
                }
                None => {
                    let inv = lead.recip().expect("nonzero lead");
                    for v in row.values_mut() {
                        *v *= &inv;
                    }
                    self.pivots.insert(col, row);
                    return true;
                }
            }
        }
        false
    }

    /// Basis of the solution space of all pushed equations, one vector per
    /// free column in increasing column order. Each vector has a 1 at its
    /// free column and zeros at all other free columns.
    pub fn nullspace(&self) -> Vec<SparseRow> {
        // back-substitute to reduced form, largest pivot first
        let mut reduced: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (&pc, row) in self.pivots.iter().rev() {
            let mut r = row.clone();
            let targets: Vec<(usize, Scalar)> = r
                .iter()
                .filter(|(c, _)| **c != pc && reduced.contains_key(c))
                .map(|(c, v)| (*c, v.clone()))
                .collect();
            for (c, v) in targets {
                if let Some(val) = r.get(&c).cloned() {
                    debug_assert_eq!(val, v);
                    axpy(&mut r, &val, &reduced[&c]);
                }
            }
            reduced.insert(pc, r);
        }
        let mut basis = Vec::new();
        for free in (0..self.ncols).filter(|c| !reduced.contains_key(c)) {
            let mut v = SparseRow::new();
            v.insert(free, Scalar::one());
            for (&pc, row) in &reduced {
                if let Some(x) = row.get(&free) {
                    v.insert(pc, -x);
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Kernel of a dense `rows × ncols` matrix.
pub fn dense_nullspace(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut sys = EchelonSystem::new(ncols);
    for r in rows {
        debug_assert_eq!(r.len(), ncols);
        sys.push(r.iter().cloned().enumerate().filter(|(_, v)| !v.is_zero()).collect());
    }
    sys.nullspace()
        .into_iter()
        .map(|v| (0..ncols).map(|c| v.get(&c).cloned().unwrap_or_else(Scalar::zero)).collect())
        .collect()
}

/// The prime used for modular rank bounds.
pub const MODULUS: u64 = (1 << 61) - 1;

pub fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    acc
}

pub fn add_mod(a: u64, b: u64) -> u64 {
    (a + b) % MODULUS
}

/// Inverse of a nonzero residue.
pub fn inv_mod(a: u64) -> u64 {
    pow_mod(a, MODULUS - 2)
}

fn bigint_mod(n: &num_bigint::BigInt) -> u64 {
    use num_traits::ToPrimitive;
    let r = n % num_bigint::BigInt::from(MODULUS);
    let r = r.to_i128().expect("reduced below modulus");
    r.rem_euclid(MODULUS as i128) as u64
}

/// Reduction of a rational modulo [`MODULUS`], `None` if the denominator
/// vanishes there.
pub fn reduce_mod(x: &Scalar) -> Option<u64> {
    use num_traits::ToPrimitive;
    if let (Some(n), Some(d)) = (x.numer().to_i64(), x.denom().to_i64()) {
        let n = (n as i128).rem_euclid(MODULUS as i128) as u64;
        let d = (d as i128).rem_euclid(MODULUS as i128) as u64;
        return (d != 0).then(|| mul_mod(n, inv_mod(d)));
    }
    let d = bigint_mod(x.denom());
    if d == 0 {
        return None;
    }
    Some(mul_mod(bigint_mod(x.numer()), pow_mod(d, MODULUS - 2)))
}

/// Rank of the system modulo [`MODULUS`]. This never exceeds the rational
/// rank, so `ncols − rank` bounds the rational nullity from above. `None`
/// if some denominator vanishes modulo the prime.
pub fn modular_rank(rows: &[SparseRow], ncols: usize) -> Option<usize> {
    let mut residues = Vec::with_capacity(rows.len());
    for row in rows {
        let mut r: ModRow = Vec::with_capacity(row.len());
        for (c, v) in row {
            r.push((*c, reduce_mod(v)?));
        }
        residues.push(r);
    }
    Some(modular_rank_of(residues, ncols))
}

/// A sparse row of residues, sorted by column.
pub type ModRow = Vec<(usize, u64)>;

/// Rank modulo [`MODULUS`] of rows already reduced.
pub fn modular_rank_of(rows: Vec<ModRow>, ncols: usize) -> usize {
    let mut pivots: BTreeMap<usize, ModRow> = BTreeMap::new();
    for mut r in rows {
        r.retain(|(c, v)| {
            assert!(*c < ncols, "column {c} out of range");
            *v != 0
        });
        debug_assert!(r.windows(2).all(|w| w[0].0 < w[1].0));
        while let Some(&(col, lead)) = r.first() {
            match pivots.get(&col) {
                Some(p) => {
                    // r -= lead * p, both sorted by column
                    let mut out = Vec::with_capacity(r.len() + p.len());
                    let (mut i, mut j) = (0, 0);
                    while i < r.len() || j < p.len() {
                        let take_r = j == p.len() || (i < r.len() && r[i].0 < p[j].0);
                        let take_p = i == r.len() || (j < p.len() && p[j].0 < r[i].0);
                        if take_r {
                            out.push(r[i]);
                            i += 1;
                        } else if take_p {
                            out.push((p[j].0, MODULUS - mul_mod(lead, p[j].1)));
                            j += 1;
                        } else {
                            let v = (r[i].1 + MODULUS - mul_mod(lead, p[j].1)) % MODULUS;
                            if v != 0 {
                                out.push((r[i].0, v));
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                    r = out;
                }
                None => {
                    let inv = inv_mod(lead);
                    for e in r.iter_mut() {
                        e.1 = mul_mod(e.1, inv);
                    }
                    pivots.insert(col, r);
                    break;
                }
            }
        }
    }
    pivots.len()
}
