//! Exact integer computations with Johnson-type homomorphisms on surface
//! mapping class groups, Lagrangian filtrations of free Lie rings and the
//! embeddings of pure braid groups into the Lagrangian mapping class group.

pub mod error;
pub mod exterior;
pub mod braid;
pub mod lattice;
pub mod lie;
pub mod magnus;
pub mod mcg;
pub mod poly;
pub mod scalar;
pub mod truncated;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Arbitrary-precision integers.
pub type Int = num_bigint::BigInt;
pub type IntMatrix = lattice::Matrix<Int>;
pub type IntegerLattice = lattice::Lattice<Int>;
