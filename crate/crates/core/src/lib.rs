//! Exact computational core for higher associativity and Lusternik–Schnirelmann
//! style invariants.
//!
//! The crate is `no_std` and only needs `alloc`. It covers four areas:
//!
//! - [`polytopes`]: the simplex, associahedra `K(n)` and multiplihedra `J(n)` in
//!   partial-sum coordinates, with their face maps, degeneracies and the
//!   composition identities those maps satisfy.
//! - [`a_infty`]: A∞-forms on finite monoids and A∞-forms on homomorphisms,
//!   checked against the boundary and unit axioms.
//! - [`bar_models`]: normalized bar and join models of classifying spaces of
//!   finite groups, integral and mod-p (co)homology, cup products and the
//!   Berstein–Švarc class.
//! - [`ls_invariants`]: graded algebras given by structure constants, cup-length,
//!   zero-divisor cup-length and the bound reports built from them.
//!
//! All arithmetic is exact: rationals are `BigRational`, Smith normal forms run
//! over `BigInt`.

#![no_std]

extern crate alloc;

pub mod a_infty;
pub mod bar_models;
mod error;
pub mod field;
pub mod group;
pub mod linalg;
pub mod ls_invariants;
pub mod polytopes;
pub mod rational;

pub use error::{Error, Result};
pub use rational::RationalVector;

/// Default bound on the number of entries in any single matrix a computation
/// is allowed to build.
pub const DEFAULT_CAPACITY: usize = 1_000_000;
