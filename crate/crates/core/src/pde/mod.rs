//! Linear PDE with constant coefficients read off polynomial ideals and
//! modules: variables `x_i` act as `∂/∂z_i`.
//!
//! Solutions are checked exactly inside the class of exponential
//! polynomials `Σ p_j(z) exp(a_j · z)` with rational frequencies.

mod diffop;
mod examples;
mod exppoly;
mod module;
mod wave;

pub use diffop::{apply_diffop, membership, DiffOp, LinearPrime};
pub use examples::{
    axis_scheme_ideal, general_solution, hankel_module, hankel_syzygies, noetherian_operators, primary_components,
    verify_general_solution,
};
pub use exppoly::ExpPoly;
pub use module::{apply_module_generator, is_exponential_solution, is_exponential_solution_approx, is_module_solution, PdeModule};
pub use wave::{build_wave_solution, build_wave_solution_with, hankel, hankel_rank, syzygy_solution, wave_forms};

use thiserror::Error;

use crate::poly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PdeError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("operands live over rings with {expected} and {got} variables")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("variable index {0} out of range")]
    VariableOutOfRange(usize),
    #[error("Hankel matrix has full rank, no wave directions")]
    FullRank,
    #[error("vector is not in the kernel of the Hankel matrix")]
    NotInKernel,
    #[error("invalid JSON: {0}")]
    Json(String),
}
