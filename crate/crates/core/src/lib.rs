//! Exact enumeration of rational tropical curves in `ℝ^r` together with their
//! classical and refined multiplicities.
//!
//! The crate is organised in layers:
//!
//! * [`lattice`] — arbitrary-precision integer linear algebra over a lattice
//!   `N ≅ ℤ^r` and its dual, plus the exterior-algebra operations (wedge,
//!   interior product, Plücker vectors) every multiplicity formula is built
//!   from.
//! * [`group_ring`] — sparse Laurent polynomials whose exponents live in
//!   `Λ²N` or a quotient `Λ²N/K`, with canonical coset reduction and the
//!   one-variable specialisation used by the `q → 1` limit.
//! * [`moduli`] — combinatorial types of rational curves of a given degree:
//!   trivalent trees, walls (one quadrivalent vertex) and their resolutions,
//!   edge slopes from the balancing condition.
//! * [`evaluation`] — exact matrices of the composed evaluation maps on a
//!   cone of the moduli space, for both moment-style and affine-constraint
//!   problems.
//! * [`multiplicity`] — complex multiplicities (determinant and sink
//!   algorithm), refined vertex-product multiplicities, marked-point factors.
//! * [`solver`] — brute-force solving over all combinatorial types, assembly
//!   of the invariants with their signs, and the wall / continuity / limit
//!   verification routines.

pub mod error;
pub mod evaluation;
pub mod group_ring;
pub mod lattice;
pub mod moduli;
pub mod multiplicity;
pub mod solver;

pub use error::Error;

/// Exact integer scalar used throughout.
pub type Int = num::BigInt;
/// Exact rational scalar used when solving linear systems.
pub type Rat = num::BigRational;
