//! Maslov index of sampled loops of Lagrangian subspaces of `C^n`.
//!
//! A Lagrangian subspace is given by a frame: an `n x n` complex matrix whose
//! columns span it over the reals. Each frame is orthonormalized to a unitary
//! matrix by polar decomposition, `det²` of that unitary is a well-defined
//! point of the circle, and the index is the winding number of `det²` around
//! the loop. Counterclockwise winding counts as +1.

mod cmat;
mod index;
mod loops;

pub use cmat::CMat;
pub use index::{det_squared, maslov_index, unitary_representative, MaslovIndex, STEP_GUARD, WINDING_TOLERANCE};
pub use loops::{concatenate, LagrangianLoop, LoopJson};

use thiserror::Error;

/// Relative tolerance for the Lagrangian condition and for basepoint
/// comparison.
pub const LAGRANGIAN_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MaslovError {
    #[error("loop has no samples")]
    Empty,
    #[error("sample {sample} is not {n}x{n}")]
    Shape { sample: usize, n: usize },
    #[error("sample {sample} is not Lagrangian (defect {defect:.3e})")]
    NotLagrangian { sample: usize, defect: f64 },
    #[error("sample {sample} does not have full real rank")]
    DegenerateFrame { sample: usize },
    #[error("step {step} turns det² by {change:.4} rad; resample the loop more finely")]
    InsufficientSampling { step: usize, change: f64 },
    #[error("winding {winding} is not within tolerance of an integer")]
    NonInteger { winding: f64 },
    #[error("loops are based at different subspaces")]
    BasepointMismatch,
    #[error("invalid loop JSON: {0}")]
    Json(String),
}
