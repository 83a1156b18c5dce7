use std::cmp::Ordering;

use num::complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{SolveError, TrackerConfig};

/// A refined, accepted endpoint.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub point: Vec<Complex64>,
    /// Largest absolute equation value at `point`.
    pub residual: f64,
    /// Largest `|f_i| / (1 + Σ |c_m x^m|)`. Acceptance uses this one: far
    /// from the origin the absolute residual is dominated by rounding.
    pub relative_residual: f64,
    pub is_real: bool,
    /// Ratio of the last two Newton update norms during refinement.
    pub certificate: f64,
    pub path_id: u64,
}

impl Solution {
    pub fn real_parts(&self) -> Vec<f64> {
        self.point.iter().map(|z| z.re).collect()
    }

    /// The first `k` coordinates (model variables ahead of multipliers).
    pub fn head(&self, k: usize) -> &[Complex64] {
        &self.point[..k.min(self.point.len())]
    }
}

pub(crate) fn is_real_point(point: &[Complex64], tol: f64) -> bool {
    point.iter().all(|z| z.im.abs() <= tol * (1.0 + z.re.abs()))
}

impl Serialize for Solution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pts: Vec<[f64; 2]> = self.point.iter().map(|z| [z.re, z.im]).collect();
        let mut st = s.serialize_struct("Solution", 6)?;
        st.serialize_field("point", &pts)?;
        st.serialize_field("residual", &self.residual)?;
        st.serialize_field("relative_residual", &self.relative_residual)?;
        st.serialize_field("is_real", &self.is_real)?;
        st.serialize_field("certificate", &self.certificate)?;
        st.serialize_field("path_id", &self.path_id)?;
        st.end()
    }
}

fn grid_key(z: &Complex64) -> (i64, i64) {
    ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64)
}

/// Canonical order: coordinates rounded to a 1e-6 grid compared
/// lexicographically, then exact values, then path id.
pub(crate) fn canonical_cmp(a: &Solution, b: &Solution) -> Ordering {
    let ka = a.point.iter().map(grid_key);
    let kb = b.point.iter().map(grid_key);
    ka.cmp(kb)
        .then_with(|| {
            for (x, y) in a.point.iter().zip(&b.point) {
                let o = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
        .then(a.path_id.cmp(&b.path_id))
}

fn close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    let mut dist = 0.0f64;
    let mut scale = 0.0f64;
    for (x, y) in a.iter().zip(b) {
        dist = dist.max((x - y).norm());
        scale = scale.max(x.norm()).max(y.norm());
    }
    dist <= tol * (1.0 + scale)
}

/// Sorts canonically and drops every solution within `tol` (relative
/// ∞-norm) of an earlier kept one. Returns the kept solutions and the
/// number removed.
pub fn dedup(mut sols: Vec<Solution>, tol: f64) -> (Vec<Solution>, usize) {
    sols.sort_by(canonical_cmp);
    let mut kept: Vec<Solution> = Vec::with_capacity(sols.len());
    let mut removed = 0;
    for s in sols {
        if kept.iter().any(|k| close(&k.point, &s.point, tol)) {
            removed += 1;
        } else {
            kept.push(s);
        }
    }
    (kept, removed)
}

/// Outcome of solving one system.
#[derive(Clone, Debug, Serialize)]
pub struct SolutionSet {
    pub solutions: Vec<Solution>,
    pub paths: u64,
    /// Truncated paths, refinement failures and duplicates.
    pub failed: u64,
    /// Endpoints rejected by side conditions.
    pub filtered: u64,
    pub diverged: u64,
    /// Portion of `failed` that were duplicates of kept solutions.
    pub duplicates: u64,
    pub expected_count: Option<u64>,
    pub warnings: Vec<String>,
    pub config: TrackerConfig,
}

impl SolutionSet {
    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn count_real(&self) -> usize {
        self.solutions.iter().filter(|s| s.is_real).count()
    }

    pub fn real_solutions(&self) -> impl Iterator<Item = &Solution> {
        self.solutions.iter().filter(|s| s.is_real)
    }

    /// True when an expected count is set and matches.
    pub fn matches_expected(&self) -> Option<bool> {
        self.expected_count.map(|e| e == self.solutions.len() as u64)
    }

    /// Real solution minimizing `objective` over the real parts. The
    /// objective returns `None` outside the feasible region. Ties keep the
    /// canonically first solution.
    pub fn select_minimizer<F>(&self, objective: F) -> Result<&Solution, SolveError>
    where
        F: Fn(&[f64]) -> Option<f64>,
    {
        let mut best: Option<(&Solution, f64)> = None;
        for s in self.real_solutions() {
            let Some(v) = objective(&s.real_parts()) else { continue };
            if !v.is_finite() {
                continue;
            }
            if best.is_none_or(|(_, b)| v < b) {
                best = Some((s, v));
            }
        }
        best.map(|(s, _)| s).ok_or(SolveError::NoFeasibleSolution)
    }
}
