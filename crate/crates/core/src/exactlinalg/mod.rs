//! Exact dense linear algebra over the rationals.

pub mod matrix;
mod modular;
pub mod rational;
pub mod spectrum;
pub mod subspace;

pub use matrix::{restriction_of_power, Matrix};
pub use rational::{frac, int, parse_rational, Rational};
pub use spectrum::{diagonalize, eigenspace, eigenspaces, rational_eigenvalues, SpectrumError};
pub use subspace::{is_decomposition, BlockForm, Decomposition, Subspace};
