//! Exact symbolic kernel for universal Whittaker modules over the loop Witt
//! algebra, the loop Virasoro algebra and affine `sl2`.
//!
//! Everything here is `no_std` with `alloc`; file formats and the command
//! line live in the companion crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod functional;
pub mod laurent;
pub mod lie;
pub mod linalg;
pub mod pbw;
pub mod scalar;
pub mod verdict;

pub use functional::{Classification, ExpPoly, Functional, FunctionalError, OracleRule};
pub use laurent::LaurentPoly;
pub use scalar::Scalar;
pub use verdict::{Verdict, Window};
