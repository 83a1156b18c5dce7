use num::complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::eval::CompiledSystem;
use super::linalg::{max_norm, numerical_rank, solve_in_place, Mat};
use super::solution::{dedup, is_real_point, Solution, SolutionSet};
use super::start::StartSystem;
use super::track::{track, Homotopy, PathStatus};
use super::{SolveError, TrackerConfig};
use crate::critical::SquareSystem;
use crate::poly::{Coeff, Polynomial};

const MAX_REFINE_ITERATIONS: usize = 50;

/// Result of Newton refinement on the affine target.
#[derive(Clone, Debug)]
pub struct Refined {
    pub point: Vec<Complex64>,
    pub residual: f64,
    /// Residual relative to the size of the terms, see [`Solution`].
    pub relative_residual: f64,
    /// Ratio of the last two update norms above the roundoff floor; 0 when
    /// the first update was already at the floor, infinite when Newton
    /// never got there.
    pub certificate: f64,
}

pub(crate) fn refine_compiled(sys: &CompiledSystem, start: &[Complex64], config: &TrackerConfig) -> Refined {
    let n = start.len();
    let mut x = start.to_vec();
    let mut pw = sys.powers();
    let mut jac = Mat::zeros(n, n);
    let mut vals = vec![Complex64::new(0.0, 0.0); n];
    let mut updates: Vec<f64> = Vec::new();
    let mut stalls = 0;
    // only a run that reaches the roundoff floor has a contraction to report
    let mut converged = false;
    for _ in 0..MAX_REFINE_ITERATIONS {
        sys.eval_jac(&x, &mut pw, &mut vals, &mut jac);
        vals.iter_mut().for_each(|v| *v = -*v);
        if !solve_in_place(&mut jac, &mut vals) {
            break;
        }
        for (xi, d) in x.iter_mut().zip(&vals) {
            *xi += d;
        }
        let d = max_norm(&vals);
        if let Some(&last) = updates.last() {
            stalls = if d >= last { stalls + 1 } else { 0 };
        }
        updates.push(d);
        if d <= config.endpoint_tolerance * (1.0 + max_norm(&x)) {
            converged = true;
            break;
        }
        if stalls >= 3 || !d.is_finite() {
            break;
        }
    }
    let floor = config.endpoint_tolerance * (1.0 + max_norm(&x));
    let certificate = match updates.len() {
        _ if !converged => f64::INFINITY,
        _ => (1..updates.len())
            .rev()
            .find(|&k| updates[k - 1] > floor)
            .map_or(0.0, |k| updates[k] / updates[k - 1]),
    };
    sys.eval(&x, &mut pw, &mut vals);
    let residual = max_norm(&vals);
    let relative_residual = sys.relative_residual(&x, &mut pw);
    Refined { point: x, residual, relative_residual, certificate }
}

/// Newton refinement of `start` on `polys`.
pub fn refine<C: Coeff>(polys: &[Polynomial<C>], start: &[Complex64], config: &TrackerConfig) -> Refined {
    let sys = CompiledSystem::new(polys, start.len());
    refine_compiled(&sys, start, config)
}

/// Side conditions applied to refined endpoints.
struct Filters<'a> {
    nonvanishing: &'a [Polynomial],
    must_vanish: &'a [Polynomial],
    rank: Option<&'a crate::critical::RankCondition>,
}

impl Filters<'_> {
    fn none() -> Self {
        Filters { nonvanishing: &[], must_vanish: &[], rank: None }
    }

    fn accepts(&self, x: &[Complex64], config: &TrackerConfig) -> bool {
        let eval = |p: &Polynomial| p.evaluate(x).map(|v| v.norm()).unwrap_or(f64::NAN);
        if self.nonvanishing.iter().any(|p| !(eval(p) >= config.nonvanishing_tolerance)) {
            return false;
        }
        if self.must_vanish.iter().any(|p| !(eval(p) <= config.residual_tolerance)) {
            return false;
        }
        if let Some(rc) = self.rank {
            match rc.matrix.evaluate(x) {
                Ok(rows) => numerical_rank(&rows, config.nonvanishing_tolerance) >= rc.rank,
                Err(_) => false,
            }
        } else {
            true
        }
    }
}

enum Outcome {
    Accepted(Solution),
    Failed,
    Filtered,
    Diverged,
}

/// Largest relative distance endpoint refinement may move a tracked point.
const MAX_REFINE_MOVE: f64 = 1e-3;

/// Solves a square system and applies its side conditions.
pub fn solve(system: &SquareSystem, config: &TrackerConfig) -> Result<SolutionSet, SolveError> {
    let filters = Filters {
        nonvanishing: &system.nonvanishing,
        must_vanish: &system.must_vanish,
        rank: system.rank_condition.as_ref(),
    };
    run(system.equations.polys(), &filters, system.expected_count, config)
}

/// Solves a bare square polynomial system with no side conditions.
pub fn solve_polys<C: Coeff>(polys: &[Polynomial<C>], config: &TrackerConfig) -> Result<SolutionSet, SolveError> {
    run(polys, &Filters::none(), None, config)
}

fn run<C: Coeff>(
    polys: &[Polynomial<C>],
    filters: &Filters<'_>,
    expected: Option<u64>,
    config: &TrackerConfig,
) -> Result<SolutionSet, SolveError> {
    config.validate()?;
    let n = polys.len();
    let nvars = polys.first().ok_or(SolveError::EmptySystem)?.nvars();
    if n != nvars {
        return Err(SolveError::NotSquare { equations: n, variables: nvars });
    }
    let degrees: Vec<u32> = polys.iter().map(|p| p.degree().unwrap_or(0)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let start = StartSystem::new(&degrees, &mut rng)?;
    let homotopy = Homotopy::with_random_gamma(polys, &start, &mut rng)?;
    let target = CompiledSystem::new(polys, n);
    let paths = start.num_roots();

    let process = |id: u64| -> Outcome {
        let root = start.root(id);
        let path = track(&homotopy, &root, config);
        let near_end = path.t > 0.99;
        match path.status {
            PathStatus::Diverged => return Outcome::Diverged,
            PathStatus::Truncated if !near_end => return Outcome::Failed,
            _ => {}
        }
        if !path.endpoint.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Outcome::Diverged;
        }
        let r = refine_compiled(&target, &path.endpoint, config);
        if !(max_norm(&r.point) <= config.divergence_norm) {
            return Outcome::Diverged;
        }
        // a stalled path heading to infinity can be pulled onto some other
        // finite root by Newton; such an endpoint belongs to no root
        let moved = path.endpoint.iter().zip(&r.point).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        let (from, to) = (max_norm(&path.endpoint), max_norm(&r.point));
        if moved > MAX_REFINE_MOVE * (1.0 + from.max(to)) {
            return if from > 100.0 * (1.0 + to) { Outcome::Diverged } else { Outcome::Failed };
        }
        if !(r.relative_residual < config.residual_tolerance) {
            return Outcome::Failed;
        }
        if !filters.accepts(&r.point, config) {
            return Outcome::Filtered;
        }
        if !(r.certificate < 0.5) {
            return Outcome::Failed;
        }
        Outcome::Accepted(Solution {
            is_real: is_real_point(&r.point, config.reality_tolerance),
            point: r.point,
            residual: r.residual,
            relative_residual: r.relative_residual,
            certificate: r.certificate,
            path_id: id,
        })
    };

    let outcomes: Vec<Outcome> = if config.threads == 1 {
        (0..paths).map(process).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build()
            .map_err(|e| SolveError::ThreadPool(e.to_string()))?;
        pool.install(|| (0..paths).into_par_iter().map(process).collect())
    };

    let (mut failed, mut filtered, mut diverged) = (0u64, 0u64, 0u64);
    let mut accepted = Vec::new();
    for o in outcomes {
        match o {
            Outcome::Accepted(s) => accepted.push(s),
            Outcome::Failed => failed += 1,
            Outcome::Filtered => filtered += 1,
            Outcome::Diverged => diverged += 1,
        }
    }
    let (solutions, dups) = dedup(accepted, config.dedup_tolerance);
    failed += dups as u64;

    let mut warnings = Vec::new();
    if let Some(e) = expected {
        if e != solutions.len() as u64 {
            warnings.push(format!("expected {e} solutions, found {}", solutions.len()));
        }
    }
    if failed > 0 {
        warnings.push(format!("{failed} paths failed ({dups} duplicate endpoints)"));
    }
    Ok(SolutionSet {
        solutions,
        paths,
        failed,
        filtered,
        diverged,
        duplicates: dups as u64,
        expected_count: expected,
        warnings,
        config: config.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse, Ring};

    #[test]
    fn circle_line_intersection() {
        let r = Ring::standard(2);
        let fs = vec![parse("x1^2 + x2^2 - 1", &r).unwrap(), parse("x1 - x2", &r).unwrap()];
        let set = solve_polys(&fs, &TrackerConfig::default()).unwrap();
        assert_eq!(set.len(), 2);
        assert_eq!(set.count_real(), 2);
        let h = 0.5f64.sqrt();
        assert!((set.solutions[0].point[0].re + h).abs() < 1e-12);
        assert!((set.solutions[1].point[1].re - h).abs() < 1e-12);
        for s in &set.solutions {
            assert!(s.residual < 1e-12 && s.certificate < 0.5);
        }
    }

    #[test]
    fn double_root_paths_merge() {
        let r = Ring::standard(1);
        let fs = vec![parse("x1^2 - 2*x1 + 1", &r).unwrap()];
        let set = solve_polys(&fs, &TrackerConfig::default()).unwrap();
        assert!(set.len() <= 1);
        assert_eq!(set.len() as u64 + set.failed + set.filtered + set.diverged, 2);
    }

    #[test]
    fn counts_add_up() {
        let r = Ring::standard(2);
        let fs = vec![parse("x1*x2 - 1", &r).unwrap(), parse("x1^2 - 4", &r).unwrap()];
        let set = solve_polys(&fs, &TrackerConfig::default()).unwrap();
        assert_eq!(set.len(), 2);
        assert_eq!(set.len() as u64 + set.failed + set.filtered + set.diverged, set.paths);
    }
}
