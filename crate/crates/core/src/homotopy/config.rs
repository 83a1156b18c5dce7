use serde::{Deserialize, Serialize};

use super::SolveError;

/// Path tracker and endpoint processing settings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrackerConfig {
    pub initial_step: f64,
    pub min_step: f64,
    /// Step floor once `t > 0.99`. Finite roots close to infinity are only
    /// reached in the last stretch before `t = 1`.
    pub endgame_min_step: f64,
    /// Relative Newton update size that ends a corrector run.
    pub corrector_tolerance: f64,
    pub max_corrector_iterations: usize,
    /// Relative Newton update size that ends endpoint refinement.
    pub endpoint_tolerance: f64,
    /// Relative ∞-norm distance under which two endpoints are merged.
    pub dedup_tolerance: f64,
    /// Bound on |Im| / (1 + |Re|) for a coordinate to count as real.
    pub reality_tolerance: f64,
    /// Largest accepted relative residual of a refined solution.
    pub residual_tolerance: f64,
    /// Side-condition polynomials must exceed this magnitude.
    pub nonvanishing_tolerance: f64,
    /// Affine norm beyond which an endpoint counts as lying at infinity.
    pub divergence_norm: f64,
    pub max_steps: usize,
    pub seed: u64,
    /// Worker threads; 0 picks the rayon default.
    pub threads: usize,
}

impl Default for TrackerConfig {
    fn default() -> Self {
        TrackerConfig {
            initial_step: 0.05,
            min_step: 1e-7,
            endgame_min_step: 1e-13,
            corrector_tolerance: 1e-10,
            max_corrector_iterations: 3,
            endpoint_tolerance: 1e-13,
            dedup_tolerance: 1e-8,
            reality_tolerance: 1e-8,
            residual_tolerance: 1e-8,
            nonvanishing_tolerance: 1e-8,
            divergence_norm: 1e8,
            max_steps: 50_000,
            seed: 0,
            threads: 0,
        }
    }
}

impl TrackerConfig {
    pub fn with_seed(seed: u64) -> Self {
        TrackerConfig { seed, ..Default::default() }
    }

    pub fn validate(&self) -> Result<(), SolveError> {
        let positive = [
            ("initial_step", self.initial_step),
            ("min_step", self.min_step),
            ("endgame_min_step", self.endgame_min_step),
            ("corrector_tolerance", self.corrector_tolerance),
            ("endpoint_tolerance", self.endpoint_tolerance),
            ("dedup_tolerance", self.dedup_tolerance),
            ("reality_tolerance", self.reality_tolerance),
            ("residual_tolerance", self.residual_tolerance),
            ("nonvanishing_tolerance", self.nonvanishing_tolerance),
            ("divergence_norm", self.divergence_norm),
        ];
        if let Some((name, _)) = positive.iter().find(|(_, v)| !(*v > 0.0)) {
            return Err(SolveError::InvalidConfig(format!("{name} must be positive")));
        }
        if self.min_step >= self.initial_step {
            return Err(SolveError::InvalidConfig("min_step must be below initial_step".into()));
        }
        if self.endgame_min_step > self.min_step {
            return Err(SolveError::InvalidConfig("endgame_min_step must not exceed min_step".into()));
        }
        if self.max_corrector_iterations == 0 {
            return Err(SolveError::InvalidConfig("need at least one corrector iteration".into()));
        }
        Ok(())
    }
}
