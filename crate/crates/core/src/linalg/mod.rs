//! Exact linear algebra on vectorized `n x n` integer matrices.
//!
//! Nothing here touches floating point: spans are kept in reduced echelon form
//! over the rationals (with denominators cleared row-wise), so dimensions and
//! membership answers are exact.

mod closure;
mod echelon;
mod int;
mod intmat;

use thiserror::Error;

pub use closure::{
    algebra_closure, center_basis, center_with_generators, is_multiplicatively_closed,
    MatrixAlgebra,
};
pub use echelon::{RowEchelon, SpanBasis};
pub use int::{make_primitive, Int};
pub use intmat::IntMat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("span is not closed under multiplication")]
    NotClosed,
}
