//! Max-plus algebra of exponent matrices.
//!
//! An exponent matrix is a square matrix over the non-negative integers with
//! zero diagonal satisfying `a[i][j] + a[j][k] ≥ a[i][k]` for pairwise
//! distinct indices. Under componentwise maximum (`⊕`) and componentwise
//! addition (`⊙`) these matrices form an algebra whose unique minimal basis
//! is the family of block matrices `T_I`, indexed by the proper subsets of
//! the index set.
//!
//! The crate provides:
//!
//! - the value types and semiring operations ([`matrix`], [`block`],
//!   [`group`]);
//! - the constructive row/column decomposition over the block basis and the
//!   decomposition-based membership test ([`decompose`], [`expr`]);
//! - ⊙-irreducibility oracles, entry-sum extremality and block-join analysis
//!   ([`structure`]);
//! - strict downsets, chain height, bounded enumeration and the
//!   downset-uniqueness scan ([`order`]);
//! - text formats and seeded verification suites ([`text`], [`verify`]).
//!
//! Everything is exact integer arithmetic; enumeration-backed operations take
//! an explicit node [`Budget`] and fail loudly instead of truncating.

pub mod block;
pub mod budget;
pub mod decompose;
mod error;
pub mod expr;
pub mod group;
pub mod matrix;
pub mod order;
mod search;
pub mod structure;
pub mod text;
pub mod verify;

pub use block::Block;
pub use budget::Budget;
pub use error::{Error, Result};
pub use expr::{Factor, Term, TropicalExpression};
pub use group::{GroupElement, Permutation};
pub use matrix::{Entry, ExponentMatrix, NatMatrix, TriangleViolation};
pub use order::MatrixSet;
