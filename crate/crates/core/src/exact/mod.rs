//! Exact arithmetic over the rationals and prime fields, and the dense
//! linear algebra built on it.

mod matrix;
mod poly;
mod rational;
mod scalar;
mod subspace;

pub use matrix::{
    add_vectors, axpy, is_zero_vector, kernel_basis, rref, rref_rows, scale_vector, solve_linear,
    sub_vectors, unit_vector, zero_vector, Matrix, Vector,
};
pub use poly::Poly;
pub use rational::{is_canonical, ParseRationalError, Rational};
pub use scalar::{Field, Scalar, MAX_PRIME};
pub use subspace::{EchelonBuilder, Subspace};
