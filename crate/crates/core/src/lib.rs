//! Exact irreducible characters of the symmetric group, with a focus on
//! rectangular and multi-rectangular shapes.
//!
//! The crate is organised bottom-up:
//!
//! * [`partition`] and [`permutation`] hold the index objects (shapes,
//!   cycle types, permutations of `{1..k}`).
//! * [`character`] evaluates characters with the Murnaghan–Nakayama rule.
//! * [`schur`] has the principal specialisations `s_λ(1^p)` and `s_λ(1^{-q})`.
//! * [`rect`] enumerates factorizations `uv = w_μ` and compares the
//!   resulting polynomial with the normalized rectangular character.
//! * [`series`] is the algebra substrate: multivariate polynomials,
//!   expansions at infinity and truncated power series.
//! * [`frobenius`], [`leading`] and [`interp`] deal with unions of
//!   rectangles: the single-cycle polynomials `F_k`, their leading parts
//!   `G_k`, and interpolated `F_μ` for arbitrary `μ`.
//! * [`verify`] bundles the full set of exhaustive checks used by the
//!   `rectchar verify` command and the acceptance tests.

pub mod arith;
pub mod character;
pub mod error;
pub mod frobenius;
pub mod interp;
pub mod leading;
pub mod partition;
pub mod permutation;
pub mod rect;
pub mod schur;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use partition::Partition;
pub use permutation::Permutation;
pub use series::{IntPoly, MultivarPoly, RatPoly};
