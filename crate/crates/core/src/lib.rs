//! Finite combinatorics of free-group actions.
//!
//! An [`SLabeledGraph`] is a finite Schreier graph of a free group: one
//! permutation of `0..n` per letter. On top of that representation this crate
//! provides
//!
//! * random covers, iterated covers, covering verification and the two-edge
//!   gluing surgery ([`covers`]),
//! * finite-index subgroup calculus through pointed transitive actions:
//!   transversals, Nielsen–Schreier generators, intersections and orbit
//!   restriction ([`subgroups`]),
//! * exact expansion constants, adjacency spectra and bipartiteness
//!   quantities with witnesses ([`spectral`]),
//! * builders and auditors for the named constructions: congruence quotients
//!   of `SL(2,p)`, the index-two counterexample, intersection chains and the
//!   glued covering towers ([`constructions`]).
//!
//! The crate is `no_std` and only needs `alloc`. Counting ratios are exact
//! rationals; floating point appears only in eigenvalue computations.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod constructions;
pub mod covers;
pub mod decompose;
pub mod eigen;
mod error;
pub mod groups;
pub mod labeled;
pub mod multigraph;
pub mod rng;
pub mod spectral;
pub mod subgroups;
pub mod word;

pub use error::Error;
pub use labeled::{Alphabet, SLabeledGraph};
pub use multigraph::{Girth, GraphStats, Multigraph};
pub use word::{Sign, Word};

/// Exact ratio used for every counting quantity.
pub type Rational = num_rational::Ratio<i64>;

pub type Result<T, E = Error> = core::result::Result<T, E>;
