//! Exact and floating-point linear algebra used by the topology engines.
//!
//! Exact routines work over arbitrary-precision integers and rationals so that
//! ranks, determinants and signatures are never subject to rounding. The one
//! numeric routine is a cyclic Jacobi eigensolver for small dense symmetric
//! matrices.

mod dense;
mod eigen;
mod sparse;

pub use dense::{congruence_diagonal, determinant, signature_of, DenseError};
pub use eigen::{symmetric_eigenvalues, EigenError, JacobiOptions};
pub use sparse::{IntMatrix, SparseRow};
