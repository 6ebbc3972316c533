//! Exact structure theory for finite-dimensional associative algebras that
//! contain a split semisimple matrix subalgebra `S`.
//!
//! The crate is layered bottom-up:
//!
//! * [`exact`]: rationals, prime fields, row reduction and subspaces.
//! * [`algcore`]: algebras given by structure constants, products of
//!   subspaces, ideal closures and unitalization.
//! * [`wedderburn`]: Jacobson radical, split block discovery with explicit
//!   matrix units, Levi lifting and k-perfectness.
//! * [`sdecomp`]: the decomposition `A ≅ ⊕ V_ij ⊗ Λ(i,j)` relative to `S`.
//! * [`liegrade`]: derived subalgebras, commutator witnesses and the
//!   weight grading of `[A, A]`.
//!
//! All arithmetic is exact; there are no tolerances anywhere.

pub mod algcore;
pub mod error;
pub mod exact;
pub mod liegrade;
pub mod sdecomp;
pub mod wedderburn;

pub use error::{Error, Result};
