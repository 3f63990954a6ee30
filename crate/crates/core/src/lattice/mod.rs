//! Exact integer and rational linear algebra over the lattice `N ≅ ℤ^r` and
//! its dual `M`, together with the exterior-algebra operations (wedge
//! products, interior contraction, Plücker vectors) used by the multiplicity
//! formulas.
//!
//! Everything here is arbitrary precision; no floating point is used
//! anywhere. All values are immutable after construction and all operations
//! are pure functions.

mod exterior;
mod matrix;
mod sublattice;
mod vector;

pub use exterior::Polyvector;
pub use matrix::{IntMat, Snf};
pub use sublattice::Sublattice;
pub use vector::{pair_index, unpair_index, Bivector, Covector, LatticeVector, TwoForm};
