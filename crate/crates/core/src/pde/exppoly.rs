use std::collections::BTreeMap;
use std::fmt;

use num::Zero;

use super::PdeError;
use crate::poly::{Polynomial, Rational, Ring};

/// `Σ_j p_j(z) exp(a_j · z)` with distinct rational frequencies `a_j`.
///
/// Closed under differentiation, so any constant-coefficient operator maps
/// the class to itself and the result can be compared to zero exactly.
#[derive(Clone, PartialEq)]
pub struct ExpPoly {
    ring: Ring,
    terms: BTreeMap<Vec<Rational>, Polynomial>,
}

impl ExpPoly {
    pub fn zero(ring: &Ring) -> Self {
        ExpPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    /// A polynomial times `exp(0)`.
    pub fn polynomial(p: Polynomial) -> Self {
        let n = p.nvars();
        Self::zero(p.ring()).plus_term(p, vec![Rational::zero(); n]).expect("sizes match")
    }

    /// `exp(a · z)`.
    pub fn exponential(ring: &Ring, a: Vec<Rational>) -> Result<Self, PdeError> {
        Self::zero(ring).plus_term(Polynomial::one(ring), a)
    }

    /// `p(z) exp(a · z)`.
    pub fn term(p: Polynomial, a: Vec<Rational>) -> Result<Self, PdeError> {
        Self::zero(p.ring()).plus_term(p, a)
    }

    /// Adds `p(z) exp(a · z)`.
    pub fn plus_term(mut self, p: Polynomial, a: Vec<Rational>) -> Result<Self, PdeError> {
        let n = self.ring.nvars();
        if a.len() != n {
            return Err(PdeError::LengthMismatch { expected: n, got: a.len() });
        }
        if p.ring() != &self.ring {
            return Err(PdeError::DimensionMismatch { expected: n, got: p.nvars() });
        }
        let sum = match self.terms.remove(&a) {
            Some(old) => &old + &p,
            None => p,
        };
        if !sum.is_zero() {
            self.terms.insert(a, sum);
        }
        Ok(self)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(polynomial part, frequency)` pairs in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Polynomial, &[Rational])> {
        self.terms.iter().map(|(a, p)| (p, a.as_slice()))
    }

    pub fn add(&self, other: &Self) -> Result<Self, PdeError> {
        other.terms.iter().try_fold(self.clone(), |acc, (a, p)| acc.plus_term(p.clone(), a.clone()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        ExpPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(a, p)| (a.clone(), p.scale(c))).collect() }
    }

    /// `∂/∂z_var`: `(p e^{a·z})' = (∂p + a_var p) e^{a·z}`.
    pub fn differentiate(&self, var: usize) -> Result<Self, PdeError> {
        if var >= self.nvars() {
            return Err(PdeError::VariableOutOfRange(var));
        }
        let mut out = Self::zero(&self.ring);
        for (a, p) in &self.terms {
            let d = &p.differentiate(var) + &p.scale(&a[var]);
            out = out.plus_term(d, a.clone())?;
        }
        Ok(out)
    }

    /// `∂^exps` applied to `self`.
    pub fn differentiate_multi(&self, exps: &[u32]) -> Result<Self, PdeError> {
        if exps.len() != self.nvars() {
            return Err(PdeError::LengthMismatch { expected: self.nvars(), got: exps.len() });
        }
        let mut out = self.clone();
        for (var, &k) in exps.iter().enumerate() {
            for _ in 0..k {
                if out.is_zero() {
                    return Ok(out);
                }
                out = out.differentiate(var)?;
            }
        }
        Ok(out)
    }

    /// `g(∂_z) • self` for a polynomial `g` in as many variables.
    pub fn apply_operator(&self, g: &Polynomial) -> Result<Self, PdeError> {
        if g.nvars() != self.nvars() {
            return Err(PdeError::DimensionMismatch { expected: self.nvars(), got: g.nvars() });
        }
        let mut out = Self::zero(&self.ring);
        for (m, c) in g.terms() {
            out = out.add(&self.differentiate_multi(m.exponents())?.scale(c))?;
        }
        Ok(out)
    }
}

impl fmt::Debug for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (a, p)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if a.iter().all(Zero::is_zero) {
                write!(f, "({p})")?;
            } else {
                let freq: Vec<String> = a.iter().map(ToString::to_string).collect();
                write!(f, "({p})*exp([{}].z)", freq.join(", "))?;
            }
        }
        Ok(())
    }
}
