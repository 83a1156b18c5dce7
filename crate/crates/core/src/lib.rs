//! Critical points of distance and likelihood functions on algebraic
//! varieties: exact polynomial construction, homotopy continuation, closed
//! form degree counts, and verification of polynomial-exponential PDE
//! solutions.

pub mod critical;
pub mod degree;
pub mod exact;
pub mod homotopy;
pub mod pde;
pub mod poly;

pub use critical::{BuildError, Lssm, ModelSpec, SquareSystem};
pub use degree::{DegreeError, DegreeValue};
pub use homotopy::{Solution, SolutionSet, SolveError, TrackerConfig};
pub use pde::PdeError;
pub use poly::{parse, Polynomial, Rational, Ring};
