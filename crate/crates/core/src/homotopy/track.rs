//! Predictor-corrector path tracking for the straight-line homotopy
//! `H(x, t) = γ (1 - t) G(x) + t F(x)`.
//!
//! Tracking happens in projective space: both systems are homogenized with
//! an extra coordinate `x0` and a random affine chart `c · y = 1` closes the
//! system. Paths heading to infinity then converge to points with `x0 ≈ 0`
//! instead of blowing up. After every accepted step the chart is moved to
//! `conj(y) · y = 1` with `|y| = 1`, so it never degenerates along a path.

use std::f64::consts::TAU;

use num::complex::Complex64;
use rand::Rng;
use serde::Serialize;

use super::eval::{CompiledSystem, Powers};
use super::linalg::{max_norm, solve_in_place, Mat};
use super::start::StartSystem;
use super::{SolveError, TrackerConfig};
use crate::poly::{Coeff, Polynomial};

/// A homotopy from a total-degree start system to a target system.
#[derive(Clone, Debug)]
pub struct Homotopy {
    target: CompiledSystem,
    start: CompiledSystem,
    gamma: Complex64,
    chart: Vec<Complex64>,
    n: usize,
}

impl Homotopy {
    /// `target` must be square with total degrees equal to `start.degrees()`.
    pub fn new<C: Coeff>(
        target: &[Polynomial<C>],
        start: &StartSystem,
        gamma: Complex64,
        chart: Vec<Complex64>,
    ) -> Result<Self, SolveError> {
        let n = target.len();
        let nvars = target.first().map(|p| p.nvars()).ok_or(SolveError::EmptySystem)?;
        if nvars != n {
            return Err(SolveError::NotSquare { equations: n, variables: nvars });
        }
        let degrees: Vec<u32> = target.iter().map(|p| p.degree().unwrap_or(0)).collect();
        if degrees != start.degrees() {
            return Err(SolveError::DegreeMismatch);
        }
        if chart.len() != n + 1 {
            return Err(SolveError::InvalidConfig("chart needs n + 1 entries".into()));
        }
        let ring = target[0].ring().clone();
        let g = start.polys(&ring);
        Ok(Homotopy {
            target: CompiledSystem::homogenized(target, &degrees, n),
            start: CompiledSystem::homogenized(g.polys(), &degrees, n),
            gamma,
            chart,
            n,
        })
    }

    /// Draws γ and the chart from `rng`.
    pub fn with_random_gamma<C: Coeff, R: Rng + ?Sized>(
        target: &[Polynomial<C>],
        start: &StartSystem,
        rng: &mut R,
    ) -> Result<Self, SolveError> {
        let gamma = Complex64::from_polar(1.0, rng.random::<f64>() * TAU);
        let chart = (0..=target.len())
            .map(|_| Complex64::new(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0))
            .collect();
        Self::new(target, start, gamma, chart)
    }

    pub fn gamma(&self) -> Complex64 {
        self.gamma
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    /// Lifts an affine point onto the chart.
    fn lift(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut y = Vec::with_capacity(self.n + 1);
        y.push(Complex64::new(1.0, 0.0));
        y.extend_from_slice(x);
        let s: Complex64 = self.chart.iter().zip(&y).map(|(c, v)| c * v).sum();
        y.iter_mut().for_each(|v| *v /= s);
        y
    }

    /// Fills `ws.jac`, `ws.h` and `ws.ht` at `(y, t)` on the chart `ws.chart`.
    fn evaluate(&self, y: &[Complex64], t: f64, ws: &mut Workspace) {
        let n = self.n;
        ws.pt.fill(y);
        ws.ps.fill(y);
        ws.jac.fill_zero();
        let wg = self.gamma * (1.0 - t);
        let wf = Complex64::new(t, 0.0);
        let m = ws.jac.m;
        for i in 0..n {
            let row = &mut ws.jac.data[i * m..(i + 1) * m];
            let f = self.target.polys[i].eval_grad(&ws.pt, wf, row);
            let g = self.start.polys[i].eval_grad(&ws.ps, wg, row);
            ws.h[i] = wg * g + wf * f;
            ws.ht[i] = f - self.gamma * g;
        }
        let mut c = Complex64::new(-1.0, 0.0);
        for (j, (&cj, &yj)) in ws.chart.iter().zip(y).enumerate() {
            *ws.jac.at_mut(n, j) = cj;
            c += cj * yj;
        }
        ws.h[n] = c;
        ws.ht[n] = Complex64::new(0.0, 0.0);
    }
}

struct Workspace {
    pt: Powers,
    ps: Powers,
    jac: Mat,
    h: Vec<Complex64>,
    ht: Vec<Complex64>,
    a: Mat,
    rhs: Vec<Complex64>,
    chart: Vec<Complex64>,
}

impl Workspace {
    fn new(h: &Homotopy) -> Self {
        let m = h.n + 1;
        Workspace {
            pt: h.target.powers(),
            ps: h.start.powers(),
            jac: Mat::zeros(m, m),
            h: vec![Complex64::new(0.0, 0.0); m],
            ht: vec![Complex64::new(0.0, 0.0); m],
            a: Mat::zeros(m, m),
            rhs: vec![Complex64::new(0.0, 0.0); m],
            chart: h.chart.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PathStatus {
    Converged,
    /// Endpoint lies at (or numerically near) infinity.
    Diverged,
    /// Step size underflow or step budget exhausted.
    Truncated,
}

#[derive(Clone, Debug)]
pub struct PathResult {
    pub status: PathStatus,
    /// Affine endpoint `y[1..] / y[0]`; meaningless for diverged paths.
    pub endpoint: Vec<Complex64>,
    /// Homogeneous coordinates on the chart.
    pub projective: Vec<Complex64>,
    /// Last accepted time.
    pub t: f64,
    pub steps: usize,
    pub rejected: usize,
}

/// Scales `y` to unit length and makes `conj(y)` the chart through it.
fn recenter(y: &mut [Complex64], chart: &mut [Complex64]) {
    let norm = y.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 && norm.is_finite() {
        for (c, v) in chart.iter_mut().zip(y.iter_mut()) {
            *v /= norm;
            *c = v.conj();
        }
    }
}

fn affine_norm(y: &[Complex64]) -> f64 {
    let y0 = y[0].norm();
    let rest = max_norm(&y[1..]);
    if y0 == 0.0 {
        f64::INFINITY
    } else {
        rest / y0
    }
}

fn to_affine(y: &[Complex64]) -> Vec<Complex64> {
    y[1..].iter().map(|v| v / y[0]).collect()
}

/// Tracks one path from `root` (a solution of the start system) to `t = 1`.
pub fn track(h: &Homotopy, root: &[Complex64], config: &TrackerConfig) -> PathResult {
    let mut ws = Workspace::new(h);
    let mut y = h.lift(root);
    let mut t = 0.0;
    let mut step = config.initial_step;
    let mut streak = 0;
    let mut steps = 0;
    let mut rejected = 0;
    let m = h.n + 1;
    let mut y_new = vec![Complex64::new(0.0, 0.0); m];

    let finish = |status, y: Vec<Complex64>, t, steps, rejected| PathResult {
        status,
        endpoint: to_affine(&y),
        projective: y,
        t,
        steps,
        rejected,
    };

    while t < 1.0 {
        if steps + rejected >= config.max_steps {
            return finish(PathStatus::Truncated, y, t, steps, rejected);
        }
        let dt = step.min(1.0 - t);
        let t_next = if dt >= 1.0 - t { 1.0 } else { t + dt };

        // Euler predictor: H_y dy/dt = -H_t
        h.evaluate(&y, t, &mut ws);
        ws.a.data.copy_from_slice(&ws.jac.data);
        for i in 0..m {
            ws.rhs[i] = -ws.ht[i];
        }
        let ok = solve_in_place(&mut ws.a, &mut ws.rhs);
        let mut accepted = false;
        if ok {
            for i in 0..m {
                y_new[i] = y[i] + ws.rhs[i] * dt;
            }
            accepted = correct(h, &mut y_new, t_next, config, &mut ws);
        }

        if accepted {
            y.copy_from_slice(&y_new);
            recenter(&mut y, &mut ws.chart);
            t = t_next;
            steps += 1;
            streak += 1;
            if streak >= 4 {
                step = (step * 1.5).min(config.initial_step);
                streak = 0;
            }
            if t > 0.99 && affine_norm(&y) > config.divergence_norm {
                return finish(PathStatus::Diverged, y, t, steps, rejected);
            }
        } else {
            rejected += 1;
            streak = 0;
            step *= 0.5;
            let floor = if t > 0.99 { config.endgame_min_step } else { config.min_step };
            if step < floor {
                return finish(PathStatus::Truncated, y, t, steps, rejected);
            }
        }
    }
    let status =
        if affine_norm(&y) > config.divergence_norm { PathStatus::Diverged } else { PathStatus::Converged };
    finish(status, y, t, steps, rejected)
}

/// Newton corrector at fixed `t`. Succeeds when an update falls under the
/// relative tolerance within the iteration budget while contracting.
fn correct(h: &Homotopy, y: &mut [Complex64], t: f64, config: &TrackerConfig, ws: &mut Workspace) -> bool {
    let m = h.n + 1;
    let mut prev = f64::INFINITY;
    for _ in 0..config.max_corrector_iterations {
        h.evaluate(y, t, ws);
        ws.a.data.copy_from_slice(&ws.jac.data);
        for i in 0..m {
            ws.rhs[i] = -ws.h[i];
        }
        if !solve_in_place(&mut ws.a, &mut ws.rhs) {
            return false;
        }
        for i in 0..m {
            y[i] += ws.rhs[i];
        }
        let d = max_norm(&ws.rhs);
        if d <= config.corrector_tolerance * (1.0 + max_norm(y)) {
            return true;
        }
        if d > 0.5 * prev {
            return false;
        }
        prev = d;
    }
    false
}
