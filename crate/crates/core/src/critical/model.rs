use num::{Signed, Zero};
use rand::Rng;
use serde::Deserialize;

use super::BuildError;
use crate::exact::{rank, RatMatrix};
use crate::poly::{int, parse, rat, PolySystem, Polynomial, Rational, Ring};

/// A variety given by generators together with its codimension.
#[derive(Clone, Debug)]
pub struct ModelSpec {
    pub generators: PolySystem,
    pub codim: usize,
}

#[derive(Deserialize)]
struct ModelJson {
    variables: Vec<String>,
    generators: Vec<String>,
    codim: usize,
}

impl ModelSpec {
    pub fn new(generators: Vec<Polynomial>, codim: usize) -> Result<Self, BuildError> {
        let generators = PolySystem::new(generators)?;
        let k = generators.len();
        let n = generators.nvars();
        if codim == 0 || codim > k || codim > n {
            return Err(BuildError::InvalidModel(format!("codimension {codim} with {k} generators in {n} variables")));
        }
        Ok(ModelSpec { generators, codim })
    }

    /// Parses `{"variables": [...], "generators": [...], "codim": c}`.
    pub fn from_json(text: &str) -> Result<Self, BuildError> {
        let m: ModelJson = serde_json::from_str(text).map_err(|e| BuildError::Json(e.to_string()))?;
        let ring = Ring::new(m.variables);
        let gens = m.generators.iter().map(|g| parse(g, &ring)).collect::<Result<Vec<_>, _>>()?;
        Self::new(gens, m.codim)
    }

    pub fn ring(&self) -> &Ring {
        self.generators.ring()
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.generators.nvars()
    }

    pub fn k(&self) -> usize {
        self.generators.len()
    }

    pub fn is_complete_intersection(&self) -> bool {
        self.codim == self.k()
    }

    /// Generator degrees in decreasing order.
    pub fn sorted_degrees(&self) -> Vec<u32> {
        let mut d = self.generators.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }
}

/// Linear space of symmetric matrices spanned by `basis`.
#[derive(Clone, Debug)]
pub struct Lssm {
    n: usize,
    basis: Vec<RatMatrix>,
}

impl Lssm {
    pub fn new(basis: Vec<RatMatrix>) -> Result<Self, BuildError> {
        let n = basis.first().map(Vec::len).ok_or_else(|| BuildError::InvalidModel("empty basis".into()))?;
        for a in &basis {
            check_symmetric(a, n)?;
        }
        let vecs: RatMatrix = basis.iter().map(|a| upper_entries(a)).collect();
        if rank(&vecs) != basis.len() {
            return Err(BuildError::DegenerateBasis);
        }
        Ok(Lssm { n, basis })
    }

    /// The span of all symmetric `n×n` matrices.
    pub fn full(n: usize) -> Self {
        let mut basis = Vec::new();
        for i in 0..n {
            for j in i..n {
                let mut a = vec![vec![Rational::zero(); n]; n];
                a[i][j] = int(1);
                a[j][i] = int(1);
                basis.push(a);
            }
        }
        Lssm { n, basis }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RatMatrix] {
        &self.basis
    }
}

pub(crate) fn check_symmetric(a: &RatMatrix, n: usize) -> Result<(), BuildError> {
    if a.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(BuildError::InvalidModel(format!("expected a {n}x{n} matrix")));
    }
    for i in 0..n {
        for j in 0..i {
            if a[i][j] != a[j][i] {
                return Err(BuildError::NotSymmetric);
            }
        }
    }
    Ok(())
}

fn upper_entries(a: &RatMatrix) -> Vec<Rational> {
    let n = a.len();
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).map(|(i, j)| a[i][j].clone()).collect()
}

/// Seeded generators of generic test data.
pub mod random {
    use super::*;

    pub fn small_int<R: Rng + ?Sized>(rng: &mut R) -> Rational {
        int(rng.random_range(-9..=9))
    }

    /// `p/q` with `p` in [-9, 9] and `q` in [1, 9].
    pub fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
        rat(rng.random_range(-9..=9), rng.random_range(1..=9))
    }

    /// Positive `p/q` with `p` in [1, 99] and `q` in [1, 9].
    pub fn positive_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
        rat(rng.random_range(1..=99), rng.random_range(1..=9))
    }

    pub fn positive_vector<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<Rational> {
        (0..len).map(|_| positive_rational(rng)).collect()
    }

    pub fn rational_vector<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<Rational> {
        (0..len).map(|_| small_rational(rng)).collect()
    }

    fn monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
        if nvars == 0 {
            return if degree == 0 { vec![vec![]] } else { vec![] };
        }
        (0..=degree)
            .rev()
            .flat_map(|e| {
                monomials(nvars - 1, degree - e).into_iter().map(move |mut rest| {
                    rest.insert(0, e);
                    rest
                })
            })
            .collect()
    }

    /// Dense polynomial of exactly `degree` with nonzero integer coefficients
    /// in [-9, 9]; only top-degree terms when `homogeneous`.
    pub fn dense_poly<R: Rng + ?Sized>(ring: &Ring, degree: u32, homogeneous: bool, rng: &mut R) -> Polynomial {
        let n = ring.nvars();
        let degs: Vec<u32> = if homogeneous { vec![degree] } else { (0..=degree).collect() };
        let mut terms = Vec::new();
        for d in degs {
            for e in monomials(n, d) {
                let c = loop {
                    let c = small_int(rng);
                    if !c.is_zero() {
                        break c;
                    }
                };
                terms.push((e, c));
            }
        }
        Polynomial::from_terms(ring, terms).expect("monomials match the ring")
    }

    /// LSSM with integer basis entries in [-9, 9], redrawn until independent.
    pub fn lssm<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Lssm {
        loop {
            let basis = (0..k)
                .map(|_| {
                    let mut a = vec![vec![Rational::zero(); n]; n];
                    for i in 0..n {
                        for j in i..n {
                            let v = small_int(rng);
                            a[i][j] = v.clone();
                            a[j][i] = v;
                        }
                    }
                    a
                })
                .collect();
            if let Ok(l) = Lssm::new(basis) {
                return l;
            }
        }
    }

    /// `S = G Gᵀ / N` for a random rational `n×N` matrix `G`, `N = n + 2`.
    pub fn sample_covariance<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RatMatrix {
        let big_n = n + 2;
        let g: RatMatrix = (0..n).map(|_| rational_vector(big_n, rng)).collect();
        let scale = rat(1, big_n as i64);
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let s: Rational = (0..big_n).map(|t| &g[i][t] * &g[j][t]).sum();
                        s * &scale
                    })
                    .collect()
            })
            .collect()
    }
}

pub(crate) fn require_positive(u: &[Rational]) -> Result<(), BuildError> {
    if u.iter().any(|v| !v.is_positive()) {
        return Err(BuildError::NonpositiveData);
    }
    Ok(())
}
