//! Exact linear algebra over F2.
//!
//! Vectors and matrices are bit-packed into 64-bit words and all elimination
//! is word-wise Gauss-Jordan with deterministic pivoting. Subspaces are kept in
//! reduced row echelon form so that subspace equality is payload equality.

mod bitvec;
mod matrix;
mod subspace;

pub use bitvec::BitVec;
pub use matrix::F2Matrix;
pub use subspace::{quotient_map, Quotient, Subspace};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("the smaller space is not contained in the larger one")]
    NotASubspace,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

pub fn rank(m: &F2Matrix) -> usize {
    m.rank()
}

pub fn kernel(m: &F2Matrix) -> Subspace {
    m.kernel()
}

pub fn image(m: &F2Matrix) -> Subspace {
    m.image()
}

pub fn solve(m: &F2Matrix, b: &BitVec) -> Option<BitVec> {
    m.solve(b)
}
