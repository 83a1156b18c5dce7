use std::collections::BTreeMap;

use serde::Deserialize;

use super::PdeError;
use crate::poly::{parse, Polynomial, Ring};

/// Element of the Weyl algebra in normal order: `Σ c_e(x) ∂^e` with every
/// coefficient to the left of its derivative.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOp {
    ring: Ring,
    terms: BTreeMap<Vec<u32>, Polynomial>,
}

#[derive(Deserialize)]
struct TermJson {
    coeff: String,
    partial: Vec<u32>,
}

impl DiffOp {
    pub fn zero(ring: &Ring) -> Self {
        DiffOp { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn identity(ring: &Ring) -> Self {
        Self::zero(ring).with_term(vec![0; ring.nvars()], Polynomial::one(ring)).expect("sizes match")
    }

    /// `∂^partial` with coefficient one.
    pub fn partial(ring: &Ring, partial: Vec<u32>) -> Result<Self, PdeError> {
        Self::zero(ring).with_term(partial, Polynomial::one(ring))
    }

    /// Adds `coeff · ∂^partial`.
    pub fn with_term(mut self, partial: Vec<u32>, coeff: Polynomial) -> Result<Self, PdeError> {
        let n = self.ring.nvars();
        if partial.len() != n {
            return Err(PdeError::LengthMismatch { expected: n, got: partial.len() });
        }
        if coeff.ring() != &self.ring {
            return Err(PdeError::DimensionMismatch { expected: n, got: coeff.nvars() });
        }
        let sum = match self.terms.remove(&partial) {
            Some(old) => &old + &coeff,
            None => coeff,
        };
        if !sum.is_zero() {
            self.terms.insert(partial, sum);
        }
        Ok(self)
    }

    /// Parses `[{"coeff": "x3", "partial": [1, 0, 0]}, ...]`.
    pub fn from_json(text: &str, ring: &Ring) -> Result<Self, PdeError> {
        let terms: Vec<TermJson> = serde_json::from_str(text).map_err(|e| PdeError::Json(e.to_string()))?;
        terms.into_iter().try_fold(Self::zero(ring), |op, t| {
            let c = parse(&t.coeff, ring)?;
            op.with_term(t.partial, c)
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Polynomial)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `D • f`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial, PdeError> {
        if f.ring() != &self.ring {
            return Err(PdeError::DimensionMismatch { expected: self.ring.nvars(), got: f.nvars() });
        }
        let mut out = Polynomial::zero(&self.ring);
        for (e, c) in &self.terms {
            let d = f.differentiate_multi(e);
            if !d.is_zero() {
                out = &out + &(c * &d);
            }
        }
        Ok(out)
    }
}

/// `D • f`: derivatives act first, then coefficients multiply.
pub fn apply_diffop(d: &DiffOp, f: &Polynomial) -> Result<Polynomial, PdeError> {
    d.apply(f)
}

/// Prime ideal generated by a set of coordinates; the empty set is the zero
/// ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearPrime {
    vars: Vec<usize>,
}

impl LinearPrime {
    pub fn zero_ideal() -> Self {
        LinearPrime { vars: Vec::new() }
    }

    pub fn coordinates(mut vars: Vec<usize>) -> Self {
        vars.sort_unstable();
        vars.dedup();
        LinearPrime { vars }
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    /// A polynomial lies in the prime iff it vanishes once the generating
    /// coordinates are set to zero.
    pub fn contains(&self, f: &Polynomial) -> Result<bool, PdeError> {
        if let Some(&v) = self.vars.iter().find(|&&v| v >= f.nvars()) {
            return Err(PdeError::VariableOutOfRange(v));
        }
        Ok(f.set_to_zero(&self.vars).is_zero())
    }
}

/// Membership in an intersection of primary ideals described by Noetherian
/// operators: `f` belongs iff `D • f ∈ P` for every pair `(D, P)`.
pub fn membership(ops: &[(DiffOp, LinearPrime)], f: &Polynomial) -> Result<bool, PdeError> {
    for (d, p) in ops {
        if !p.contains(&d.apply(f)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}
