use crate::poly::{PolyMatrix, PolySystem, Polynomial, Ring};

use super::BuildError;

/// The matrix must have at least `rank` numerically at an accepted point.
#[derive(Clone, Debug)]
pub struct RankCondition {
    pub matrix: PolyMatrix,
    pub rank: usize,
}

/// Square polynomial system plus the side conditions that separate genuine
/// critical points from spurious solutions of the multiplier formulation.
#[derive(Clone, Debug)]
pub struct SquareSystem {
    pub equations: PolySystem,
    /// Number of leading variables that belong to the model; the rest are
    /// multipliers or auxiliary unknowns.
    pub model_vars: usize,
    pub expected_count: Option<u64>,
    /// Each must be nonzero at an accepted solution.
    pub nonvanishing: Vec<Polynomial>,
    pub rank_condition: Option<RankCondition>,
    /// Consequences of the intended equations that were left out to keep
    /// the system square; each must vanish at an accepted solution.
    pub must_vanish: Vec<Polynomial>,
    pub label: String,
}

impl SquareSystem {
    pub fn new(equations: Vec<Polynomial>, model_vars: usize, label: impl Into<String>) -> Result<Self, BuildError> {
        let equations = PolySystem::new(equations)?;
        if equations.len() != equations.nvars() {
            return Err(BuildError::NotSquare { equations: equations.len(), variables: equations.nvars() });
        }
        Ok(SquareSystem {
            equations,
            model_vars,
            expected_count: None,
            nonvanishing: Vec::new(),
            rank_condition: None,
            must_vanish: Vec::new(),
            label: label.into(),
        })
    }

    pub fn with_expected(mut self, count: Option<u64>) -> Self {
        self.expected_count = count;
        self
    }

    pub fn with_nonvanishing(mut self, polys: Vec<Polynomial>) -> Self {
        self.nonvanishing = polys;
        self
    }

    pub fn with_rank_condition(mut self, matrix: PolyMatrix, rank: usize) -> Self {
        self.rank_condition = Some(RankCondition { matrix, rank });
        self
    }

    pub fn with_must_vanish(mut self, polys: Vec<Polynomial>) -> Self {
        self.must_vanish = polys;
        self
    }

    pub fn ring(&self) -> &Ring {
        self.equations.ring()
    }

    pub fn nvars(&self) -> usize {
        self.equations.nvars()
    }

    /// Product of the equation degrees, the number of paths tracked.
    pub fn bezout(&self) -> u128 {
        self.equations.degrees().iter().map(|&d| d as u128).product()
    }
}
