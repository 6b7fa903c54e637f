//! Dense linear algebra over GF(2).
//!
//! Everything here is exact and allocation-light: vectors are packed into
//! 64-bit words and subspaces are kept in canonical reduced echelon form, so
//! equality of subspaces is a bitwise comparison. Vectors are rows acting on
//! the left (`v ↦ v·g`).

mod echelon;
mod matrix;
mod subspace;
pub mod text;
mod vector;

use thiserror::Error;

pub(crate) use echelon::EchelonBasis;
pub use matrix::BitMatrix;
pub use subspace::{common_fixed_space, fixed_space, intersect, kernel, rank, Subspace};
pub use vector::BitVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("{op}: dimension mismatch ({}x{} vs {}x{})", left.0, left.1, right.0, right.1)]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("ambient dimensions differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("matrices must have at least one row and one column")]
    Empty,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Exact product `a · b`.
pub fn mat_mul(a: &BitMatrix, b: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
    a.checked_mul(b)
}
