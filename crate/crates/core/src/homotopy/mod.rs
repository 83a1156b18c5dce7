//! Total-degree homotopy continuation for square polynomial systems.

mod config;
mod eval;
pub(crate) mod linalg;
mod solution;
mod solve;
mod start;
mod track;

pub use config::TrackerConfig;
pub use solution::{dedup, Solution, SolutionSet};
pub use solve::{refine, solve, solve_polys, Refined};
pub use start::StartSystem;
pub use track::{track, Homotopy, PathResult, PathStatus};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("invalid tracker configuration: {0}")]
    InvalidConfig(String),
    #[error("cannot solve an empty system")]
    EmptySystem,
    #[error("polynomial {0} has degree zero")]
    ZeroDegree(usize),
    #[error("system has {equations} equations in {variables} variables")]
    NotSquare { equations: usize, variables: usize },
    #[error("start and target degrees differ")]
    DegreeMismatch,
    #[error("no real solution satisfies the feasibility test")]
    NoFeasibleSolution,
    #[error("could not build thread pool: {0}")]
    ThreadPool(String),
}
