//! Sparse multivariate polynomials over exact rationals or complex doubles.

mod coeff;
mod matrix;
mod monomial;
mod parse;
mod polynomial;

pub use coeff::{int, rat, Coeff, CoeffKind, Rational};
pub use matrix::{combinations, PolyMatrix, PolySystem};
pub use monomial::Monomial;
pub use parse::{format, parse};
pub use polynomial::{CPoly, Polynomial, Ring};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("minor size {size} out of range for a {rows}x{cols} matrix")]
    MinorSizeOutOfRange { size: usize, rows: usize, cols: usize },
    #[error("a polynomial system needs at least one polynomial")]
    EmptySystem,
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}
