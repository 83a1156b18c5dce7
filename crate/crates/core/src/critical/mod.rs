//! Square critical-point systems for distance and likelihood problems.

mod cegm;
mod discrete;
mod ed;
mod gaussian;
mod model;
mod system;

pub use cegm::{
    build_cegm_matrix, build_cegm_scattering, cegm_minors, cegm_ring, random_mandelstam, scattering_residual,
    Mandelstam,
};
pub use discrete::{
    build_discrete_mle, closed_form_mle_coin, closed_form_mle_independence, log_likelihood, negative_log_likelihood,
};
pub use ed::{build_ed_system, build_ed_system_with, build_linear_section_system, build_linear_section_with, EdForm, LinearSection};
pub use gaussian::{
    build_gaussian_concentration, build_gaussian_covariance, inverse_defect, span_at, symmetric_from_point,
};
pub use model::{random, Lssm, ModelSpec};
pub use system::{RankCondition, SquareSystem};

use thiserror::Error;

use crate::poly::PolyError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BuildError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("system has {equations} equations in {variables} variables")]
    NotSquare { equations: usize, variables: usize },
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("model JSON: {0}")]
    Json(String),
    #[error("only complete intersections are supported (codim {codim}, {generators} generators)")]
    NotCompleteIntersection { codim: usize, generators: usize },
    #[error("data has {got} entries, expected {expected}")]
    DataLength { expected: usize, got: usize },
    #[error("data index mismatch: {0}")]
    DataIndex(String),
    #[error("data must be positive")]
    NonpositiveData,
    #[error("degenerate data: {0}")]
    DegenerateData(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("basis matrices are linearly dependent")]
    DegenerateBasis,
    #[error("degenerate system: {0}")]
    Degenerate(String),
}
