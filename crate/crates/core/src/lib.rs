//! Exact-arithmetic toolkit for lattice and Hodge-theoretic computations on
//! twisted K3 surfaces: the Mukai lattice and its standard isometries,
//! B-field twists, twisted Picard and transcendental lattices, Brauer-class
//! invariants, orientation tests, and runnable verification suites for the
//! explicit constructions.
//!
//! Every computation is exact (arbitrary-precision integers and rationals);
//! there is no floating point anywhere in the crate.

pub mod constructions;
pub mod error;
pub mod exactlin;
pub mod hodge;
pub mod lattice;
pub mod mukai;
pub mod orientation;
pub mod report;
pub mod suites;

pub use error::{Error, Result};
pub use exactlin::{Int, IntMatrix, Rat, RatMatrix};
pub use lattice::{IntLattice, LatticeInvariants, Sublattice};
pub use mukai::{Isometry, MukaiVector};
