//! The Floer complex over `F2[T, T⁻¹]` in T-periodic form.
//!
//! Since `T` is invertible and the differential is `T`-linear, the complex is
//! determined by a Morse-graded F2 complex with operators `∂_k` of T-weight
//! `k`. Homology is computed on the fold of Morse degrees modulo `NL`.

mod complex;
mod filtered;
mod from_ring;
mod json;
mod morse;
mod random;

pub use complex::{nu, product_bound, ConvolutionCheck, FloerComplex, ProductTable, Summand};
pub use filtered::{
    check_product_leibniz, differential, star_product, FilteredElement, ProductLeibnizFailure,
    ProductLeibnizReport,
};
pub use from_ring::perfect_ring_complex;
pub use json::ComplexJson;
pub use morse::{canonical_order, Generator, MorseComplex};
pub use random::{random_complex_with_prediction, random_valid_complex, RandomComplex, MAX_RANDOM_GENERATORS};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FloerError {
    #[error("generator {name} has Morse index {index} outside [0, {dim_l}]")]
    IndexOutOfRange { name: String, index: i64, dim_l: usize },
    #[error("duplicate generator name {0:?}")]
    DuplicateName(String),
    #[error("generators are not in canonical (index, name) order")]
    GeneratorOrder,
    #[error("operator ∂{k} has an entry at ({row}, {col}) with the wrong degree shift")]
    ShapeMismatch { k: usize, row: usize, col: usize },
    #[error("operator ∂{k} is nonzero but ν = {nu}")]
    OperatorBeyondNu { k: usize, nu: usize },
    #[error("d_F² ≠ 0: identity l = {l} fails on generator {generator}")]
    NotADifferential { l: usize, generator: String },
    #[error("minimal Maslov number must be at least 2, got {0}")]
    MaslovTooSmall(usize),
    #[error("product m{l} is nonzero but the bound is {bound}")]
    ProductBeyondBound { l: usize, bound: usize },
    #[error("product m{l} entry ({i}, {j}) -> {k} has the wrong degree")]
    ProductShape { l: usize, i: usize, j: usize, k: usize },
    #[error("complex carries no product tables")]
    ProductsAbsent,
    #[error("derivation has shift {found_shift} or another ring; expected shift {expected_shift}")]
    DerivationMismatch { expected_shift: i32, found_shift: i32 },
    #[error("{total} generators exceed the limit of {max}")]
    TooLarge { total: usize, max: usize },
    #[error("malformed complex: {0}")]
    Json(String),
}
