//! Linear concentration and linear covariance models in primal-dual
//! coordinates `(Σ, K)`.
//!
//! `KΣ = Id` has `n²` entries. For symmetric `K` and `Σ` the symmetrized
//! product `(KΣ + ΣK)/2` is symmetric, so its upper triangle gives
//! `n(n+1)/2` equations and keeps the system square. The commutator
//! `KΣ - ΣK` is recorded as a side condition that every accepted solution
//! must satisfy.

use num::complex::Complex64;
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::model::check_symmetric;
use super::{BuildError, Lssm, SquareSystem};
use crate::degree::gaussian_ml_degrees_n4;
use crate::exact::RatMatrix;
use crate::homotopy::linalg::numerical_rank;
use crate::poly::{PolyMatrix, Polynomial, Ring};

type PolyGrid = Vec<Vec<Polynomial>>;

fn sym_names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).flat_map(|i| (i..n).map(move |j| format!("{prefix}{}{}", i + 1, j + 1))).collect()
}

/// Symmetric matrix of fresh variables starting at `offset`.
fn sym_vars(ring: &Ring, n: usize, offset: usize) -> PolyGrid {
    let mut idx = vec![vec![0; n]; n];
    let mut v = offset;
    for i in 0..n {
        for j in i..n {
            idx[i][j] = v;
            idx[j][i] = v;
            v += 1;
        }
    }
    idx.iter().map(|r| r.iter().map(|&k| Polynomial::var(ring, k)).collect()).collect()
}

/// `Σ_l λ_l A_l` with `λ_l` the variables `offset..offset + k`.
fn span(ring: &Ring, l: &Lssm, offset: usize) -> PolyGrid {
    let n = l.n();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut p = Polynomial::zero(ring);
                    for (t, a) in l.basis().iter().enumerate() {
                        if !a[i][j].is_zero() {
                            p = &p + &Polynomial::var(ring, offset + t).scale(&a[i][j]);
                        }
                    }
                    p
                })
                .collect()
        })
        .collect()
}

fn constant_grid(ring: &Ring, m: &RatMatrix) -> PolyGrid {
    m.iter().map(|r| r.iter().map(|v| Polynomial::constant(ring, v.clone())).collect()).collect()
}

fn matmul(a: &PolyGrid, b: &PolyGrid) -> PolyGrid {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut p = Polynomial::zero(a[0][0].ring());
                    for t in 0..n {
                        if !a[i][t].is_zero() && !b[t][j].is_zero() {
                            p = &p + &(&a[i][t] * &b[t][j]);
                        }
                    }
                    p
                })
                .collect()
        })
        .collect()
}

/// `trace(M A)` for a constant matrix `A`.
fn trace_with(m: &PolyGrid, a: &RatMatrix) -> Polynomial {
    let n = m.len();
    let mut p = Polynomial::zero(m[0][0].ring());
    for i in 0..n {
        for j in 0..n {
            if !a[j][i].is_zero() {
                p = &p + &m[i][j].scale(&a[j][i]);
            }
        }
    }
    p
}

/// Upper triangle of the symmetrized product `(KΣ + ΣK)/2 - Id`, and the
/// strictly upper entries of the commutator `KΣ - ΣK` as side conditions.
fn inverse_pair(k: &PolyGrid, s: &PolyGrid) -> (Vec<Polynomial>, Vec<Polynomial>) {
    let ks = matmul(k, s);
    let ring = k[0][0].ring().clone();
    let half = Polynomial::constant(&ring, crate::poly::rat(1, 2));
    let n = k.len();
    let (mut eqs, mut side) = (Vec::new(), Vec::new());
    for i in 0..n {
        for j in i..n {
            // (ΣK)_{ij} = (KΣ)_{ji} for symmetric K and Σ
            let mut e = &(&ks[i][j] + &ks[j][i]) * &half;
            if i == j {
                e = &e - &Polynomial::one(&ring);
            } else {
                side.push(&ks[i][j] - &ks[j][i]);
            }
            eqs.push(e);
        }
    }
    (eqs, side)
}

fn det(grid: PolyGrid) -> Result<Polynomial, BuildError> {
    let ring = grid[0][0].ring().clone();
    Ok(PolyMatrix::new(&ring, grid)?.det()?)
}

/// Full-rank Jacobian at a random complex point, so the square system is
/// not degenerate by construction.
fn assert_generically_finite(eqs: &[Polynomial]) -> Result<(), BuildError> {
    let n = eqs.len();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let x: Vec<Complex64> = (0..n).map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)).collect();
    let rows: Vec<Vec<Complex64>> = eqs
        .iter()
        .map(|f| (0..n).map(|j| f.differentiate(j).evaluate(&x).expect("ring size")).collect())
        .collect();
    if numerical_rank(&rows, 1e-10) < n {
        return Err(BuildError::Degenerate("Jacobian is rank deficient at a random point".into()));
    }
    Ok(())
}

fn check_data(l: &Lssm, s: &RatMatrix) -> Result<(), BuildError> {
    check_symmetric(s, l.n())
}

fn table_entry(l: &Lssm, reciprocal: bool) -> Option<u64> {
    if l.n() != 4 {
        return None;
    }
    gaussian_ml_degrees_n4(l.k()).ok().map(|(ml, rml)| if reciprocal { rml } else { ml })
}

/// Critical equations of the linear concentration model `K ∈ 𝓛`:
/// unknowns `λ` (with `K = Σ λ_i A_i`) and the entries of `Σ`.
pub fn build_gaussian_concentration(l: &Lssm, s: &RatMatrix) -> Result<SquareSystem, BuildError> {
    check_data(l, s)?;
    let (n, k) = (l.n(), l.k());
    let mut names: Vec<String> = (1..=k).map(|i| format!("l{i}")).collect();
    names.extend(sym_names("s", n));
    let ring = Ring::new(names);
    let kmat = span(&ring, l, 0);
    let sigma = sym_vars(&ring, n, k);
    let (mut eqs, lower) = inverse_pair(&kmat, &sigma);
    let sdiff: PolyGrid = sigma
        .iter()
        .zip(constant_grid(&ring, s))
        .map(|(r, c)| r.iter().zip(c).map(|(a, b)| a - &b).collect())
        .collect();
    for a in l.basis() {
        eqs.push(trace_with(&sdiff, a));
    }
    assert_generically_finite(&eqs)?;
    Ok(SquareSystem::new(eqs, k, "gaussian-concentration")?
        .with_expected(table_entry(l, false))
        .with_nonvanishing(vec![det(kmat)?])
        .with_must_vanish(lower))
}

/// Critical equations of the linear covariance model `Σ ∈ 𝓛`:
/// unknowns `λ` (with `Σ = Σ λ_i A_i`) and the entries of `K`.
pub fn build_gaussian_covariance(l: &Lssm, s: &RatMatrix) -> Result<SquareSystem, BuildError> {
    check_data(l, s)?;
    let (n, k) = (l.n(), l.k());
    let mut names: Vec<String> = (1..=k).map(|i| format!("l{i}")).collect();
    names.extend(sym_names("k", n));
    let ring = Ring::new(names);
    let sigma = span(&ring, l, 0);
    let kmat = sym_vars(&ring, n, k);
    let (mut eqs, lower) = inverse_pair(&kmat, &sigma);
    let ksk = matmul(&matmul(&kmat, &constant_grid(&ring, s)), &kmat);
    let diff: PolyGrid = ksk.iter().zip(&kmat).map(|(r, c)| r.iter().zip(c).map(|(a, b)| a - b).collect()).collect();
    for a in l.basis() {
        eqs.push(trace_with(&diff, a));
    }
    assert_generically_finite(&eqs)?;
    Ok(SquareSystem::new(eqs, k, "gaussian-covariance")?
        .with_expected(table_entry(l, true))
        .with_nonvanishing(vec![det(sigma)?])
        .with_must_vanish(lower))
}

/// Rebuilds the symmetric matrix whose upper-triangle entries start at
/// `offset` in a solution vector.
pub fn symmetric_from_point(point: &[Complex64], n: usize, offset: usize) -> Vec<Vec<Complex64>> {
    let mut m = vec![vec![Complex64::zero(); n]; n];
    let mut v = offset;
    for i in 0..n {
        for j in i..n {
            m[i][j] = point[v];
            m[j][i] = point[v];
            v += 1;
        }
    }
    m
}

/// `Σ λ_i A_i` evaluated at `λ`.
pub fn span_at(l: &Lssm, lambda: &[Complex64]) -> Vec<Vec<Complex64>> {
    let n = l.n();
    let mut m = vec![vec![Complex64::zero(); n]; n];
    for (a, &c) in l.basis().iter().zip(lambda) {
        for i in 0..n {
            for j in 0..n {
                m[i][j] += c * crate::poly::Coeff::to_complex(&a[i][j]);
            }
        }
    }
    m
}

/// Max-entry distance of `a b` from the identity.
pub fn inverse_defect(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> f64 {
    let n = a.len();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let mut s: Complex64 = (0..n).map(|t| a[i][t] * b[t][j]).sum();
            if i == j {
                s -= Complex64::one();
            }
            worst = worst.max(s.norm());
        }
    }
    worst
}
