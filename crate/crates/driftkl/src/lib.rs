//! Kazhdan-Lusztig polynomials P_{v,w}(q) and h-polynomials H_{v,w}(q) for
//! covexillary permutations, computed combinatorially via drift
//! configurations and flagged (set-valued) Young tableaux, together with a
//! Hecke-algebra oracle, a Gaussian-binomial determinant q-analogue, and the
//! associated tableau complex.
//!
//! Conventions throughout: French-convention Young diagrams with rows
//! indexed from the bottom and columns from the left, both 1-based;
//! permutations in one-line notation with 1-based values.

pub mod complex;
pub mod diagram;
pub mod drift;
pub mod error;
pub mod hecke;
pub mod perm;
pub mod poly;
pub mod tableaux;

pub use error::{Error, Result};
pub use perm::Permutation;
pub use poly::IntPoly;
