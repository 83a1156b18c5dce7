use std::f64::consts::TAU;

use num::complex::Complex64;
use rand::Rng;

use super::SolveError;
use crate::poly::{CPoly, Monomial, PolySystem, Ring};

/// Total-degree start system `x_i^{d_i} - r_i = 0` with random unit
/// complex constants `r_i`.
#[derive(Clone, Debug)]
pub struct StartSystem {
    degrees: Vec<u32>,
    constants: Vec<Complex64>,
}

impl StartSystem {
    pub fn new<R: Rng + ?Sized>(degrees: &[u32], rng: &mut R) -> Result<Self, SolveError> {
        if degrees.is_empty() {
            return Err(SolveError::EmptySystem);
        }
        if let Some(i) = degrees.iter().position(|&d| d == 0) {
            return Err(SolveError::ZeroDegree(i));
        }
        let constants = degrees.iter().map(|_| Complex64::from_polar(1.0, rng.random::<f64>() * TAU)).collect();
        Ok(StartSystem { degrees: degrees.to_vec(), constants })
    }

    pub fn with_constants(degrees: &[u32], constants: Vec<Complex64>) -> Result<Self, SolveError> {
        if let Some(i) = degrees.iter().position(|&d| d == 0) {
            return Err(SolveError::ZeroDegree(i));
        }
        assert_eq!(degrees.len(), constants.len());
        Ok(StartSystem { degrees: degrees.to_vec(), constants })
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn constants(&self) -> &[Complex64] {
        &self.constants
    }

    /// Bézout number: the product of the degrees.
    pub fn num_roots(&self) -> u64 {
        self.degrees.iter().map(|&d| d as u64).product()
    }

    pub fn polys(&self, ring: &Ring) -> PolySystem<Complex64> {
        let n = self.degrees.len();
        let polys = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = self.degrees[i];
                let lead = CPoly::monomial(ring, Monomial::new(e), Complex64::new(1.0, 0.0));
                &lead - &CPoly::constant(ring, self.constants[i])
            })
            .collect();
        PolySystem::new(polys).expect("start system is nonempty")
    }

    /// The `index`-th root in mixed-radix order (first variable fastest).
    pub fn root(&self, index: u64) -> Vec<Complex64> {
        let mut rest = index;
        self.degrees
            .iter()
            .zip(&self.constants)
            .map(|(&d, &r)| {
                let k = rest % d as u64;
                rest /= d as u64;
                let (mag, arg) = r.to_polar();
                Complex64::from_polar(mag.powf(1.0 / d as f64), (arg + TAU * k as f64) / d as f64)
            })
            .collect()
    }

    pub fn roots(&self) -> impl Iterator<Item = Vec<Complex64>> + '_ {
        (0..self.num_roots()).map(|i| self.root(i))
    }
}
