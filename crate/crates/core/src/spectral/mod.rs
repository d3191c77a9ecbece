//! The spectral sequence of the T-power filtration.
//!
//! Each page is stored per Morse degree as cycles `Z_r ⊇ B_r` with
//! canonical coset representatives. `δ_r` is computed by zig-zag lifts
//! `x, y_1, .., y_{r-1}` obtained from one block-triangular linear system per
//! degree. In paranoid mode every `δ_r` is recomputed with a second
//! representative and a second lift, and the cycle spaces are recomputed
//! from the kernel of the full lift system.

mod dump;
mod oracle;
mod page;
mod product;
mod run;

pub use dump::{dump_page, dump_run, PageDump};
pub use oracle::{e1_identification, window_homology, E1Report};
pub use page::{page0, turn_page, DegreeSlot, PageChecks, SpectralPage};
pub use product::{induced_page_product, PageProduct, ProductChecks};
pub use run::{
    check_convergence, default_window, run_to_collapse, ConvergenceReport, ResidueComparison, SpectralRun,
};

use thiserror::Error;

use crate::floercomplex::FloerError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpectralOptions {
    pub paranoid: bool,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        Self { paranoid: true }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectralError {
    #[error("page {r}, degree {m}: a cycle has no lift")]
    LiftFailure { r: usize, m: i64 },
    #[error("page {r}, degree {m}: boundaries are not inside cycles")]
    NotNested { r: usize, m: i64 },
    #[error("page {r}, degree {m}: δ lands outside the page cycles")]
    NotACycle { r: usize, m: i64 },
    #[error("page {r} still has a nonzero differential")]
    NoCollapse { r: usize },
    #[error("complex carries no product tables")]
    ProductsAbsent,
    #[error("product is not compatible with the differential on page {r}: {detail}")]
    LeibnizFailure { r: usize, detail: String },
    #[error(transparent)]
    Floer(#[from] FloerError),
}
