//! Exact integer linear algebra: Smith and Hermite forms, kernels, images,
//! and lattice comparisons.

mod hnf;
mod integer_lattice;
mod matrix;
mod snf;

pub use hnf::{echelonize, hermite_normal_form};
pub use integer_lattice::{image_lattice, kernel_lattice, Lattice};
pub use matrix::Matrix;
pub use snf::{smith_normal_form, SmithForm};
