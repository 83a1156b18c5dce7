use num::complex::Complex64;
use num::Zero;
use serde::Deserialize;

use super::{ExpPoly, PdeError};
use crate::poly::{parse, PolySystem, Polynomial, Rational, Ring};

/// Submodule of `R^k` given by generators; each generator is one PDE for
/// functions `ℂⁿ → ℂ^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct PdeModule {
    ring: Ring,
    k: usize,
    generators: Vec<Vec<Polynomial>>,
}

#[derive(Deserialize)]
struct ModuleJson {
    variables: Vec<String>,
    generators: Vec<Vec<String>>,
}

impl PdeModule {
    pub fn new(ring: &Ring, k: usize, generators: Vec<Vec<Polynomial>>) -> Result<Self, PdeError> {
        for g in &generators {
            if g.len() != k {
                return Err(PdeError::LengthMismatch { expected: k, got: g.len() });
            }
            if let Some(p) = g.iter().find(|p| p.ring() != ring) {
                return Err(PdeError::DimensionMismatch { expected: ring.nvars(), got: p.nvars() });
            }
        }
        Ok(PdeModule { ring: ring.clone(), k, generators })
    }

    /// An ideal as a module with `k = 1`.
    pub fn from_ideal(ideal: &PolySystem) -> Self {
        let generators = ideal.polys().iter().map(|p| vec![p.clone()]).collect();
        PdeModule { ring: ideal.ring().clone(), k: 1, generators }
    }

    /// Parses `{"variables": [...], "generators": [["x1", "0", ...], ...]}`.
    pub fn from_json(text: &str) -> Result<Self, PdeError> {
        let m: ModuleJson = serde_json::from_str(text).map_err(|e| PdeError::Json(e.to_string()))?;
        let ring = Ring::new(m.variables);
        let k = m.generators.first().map_or(0, Vec::len);
        let gens = m
            .generators
            .iter()
            .map(|g| g.iter().map(|s| parse(s, &ring)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(&ring, k, gens)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.ring.nvars()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generators(&self) -> &[Vec<Polynomial>] {
        &self.generators
    }

    /// Generator-by-vector products `g · s`; all zero iff `s` is a syzygy
    /// in the sense that `s(∂)` maps functions to solutions.
    pub fn pairings(&self, s: &[Polynomial]) -> Result<Vec<Polynomial>, PdeError> {
        if s.len() != self.k {
            return Err(PdeError::LengthMismatch { expected: self.k, got: s.len() });
        }
        Ok(self
            .generators
            .iter()
            .map(|g| g.iter().zip(s).fold(Polynomial::zero(&self.ring), |acc, (a, b)| &acc + &(a * b)))
            .collect())
    }
}

/// `Σ_j g_j(∂_z) • φ_j`.
pub fn apply_module_generator(g: &[Polynomial], phi: &[ExpPoly]) -> Result<ExpPoly, PdeError> {
    if g.len() != phi.len() {
        return Err(PdeError::LengthMismatch { expected: g.len(), got: phi.len() });
    }
    let ring = phi.first().map(|f| f.ring().clone()).ok_or(PdeError::LengthMismatch { expected: 1, got: 0 })?;
    let mut out = ExpPoly::zero(&ring);
    for (gj, fj) in g.iter().zip(phi) {
        if !gj.is_zero() {
            out = out.add(&fj.apply_operator(gj)?)?;
        }
    }
    Ok(out)
}

/// Every generator annihilates `φ` identically.
pub fn is_module_solution(m: &PdeModule, phi: &[ExpPoly]) -> Result<bool, PdeError> {
    if phi.len() != m.k {
        return Err(PdeError::LengthMismatch { expected: m.k, got: phi.len() });
    }
    if let Some(f) = phi.iter().find(|f| f.nvars() != m.n()) {
        return Err(PdeError::DimensionMismatch { expected: m.n(), got: f.nvars() });
    }
    for g in &m.generators {
        if !apply_module_generator(g, phi)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `exp(a · z)` solves the PDE of `I` iff `a` is a point of `V(I)`; exact.
pub fn is_exponential_solution(ideal: &PolySystem, a: &[Rational]) -> Result<bool, PdeError> {
    if a.len() != ideal.nvars() {
        return Err(PdeError::LengthMismatch { expected: ideal.nvars(), got: a.len() });
    }
    for f in ideal.polys() {
        if !f.evaluate_exact(a)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Floating point variant: every generator is below `1e-10` at `a`.
pub fn is_exponential_solution_approx(ideal: &PolySystem, a: &[Complex64]) -> Result<bool, PdeError> {
    if a.len() != ideal.nvars() {
        return Err(PdeError::LengthMismatch { expected: ideal.nvars(), got: a.len() });
    }
    for f in ideal.polys() {
        if !(f.evaluate(a)?.norm() < 1e-10) {
            return Ok(false);
        }
    }
    Ok(true)
}
