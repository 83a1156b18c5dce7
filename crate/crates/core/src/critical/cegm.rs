//! Scattering equations of the CEGM model: `m` points in general position in
//! `P^{k-1}`, coordinatized by the non-constant maximal minors of `M_{k,m}`.

use std::collections::BTreeMap;

use num::{ToPrimitive, Zero};
use rand::Rng;

use super::model::{random::positive_rational, require_positive};
use super::{BuildError, SquareSystem};
use crate::degree::cegm_ml_degree;
use crate::poly::{combinations, int, PolyMatrix, Polynomial, Rational, Ring};

/// Mandelstam data indexed by 1-based column sets of non-constant minors.
pub type Mandelstam = BTreeMap<Vec<usize>, Rational>;

fn check_range(k: usize, m: usize) -> Result<(), BuildError> {
    if k < 2 || m < k + 2 {
        return Err(BuildError::InvalidModel(format!("need 2 <= k <= m - 2, got k = {k}, m = {m}")));
    }
    Ok(())
}

/// Ring of the unknowns `x_{i,j}`, `1 ≤ i ≤ k-1`, `1 ≤ j ≤ m-k-1`. For
/// `k = 2` they are named `x1, x2, ...`.
pub fn cegm_ring(k: usize, m: usize) -> Ring {
    let cols = m - k - 1;
    if k == 2 {
        Ring::standard(cols)
    } else {
        Ring::new((1..k).flat_map(|i| (1..=cols).map(move |j| format!("x{i}_{j}"))))
    }
}

/// The `k×m` matrix with an antidiagonal sign block, a column of ones, and
/// unknowns in the lower right block.
pub fn build_cegm_matrix(k: usize, m: usize) -> Result<PolyMatrix, BuildError> {
    check_range(k, m)?;
    let ring = cegm_ring(k, m);
    let cols = m - k - 1;
    let rows = (1..=k)
        .map(|r| {
            (1..=m)
                .map(|c| {
                    if c <= k {
                        if c == k + 1 - r {
                            let sign = if (k + 1 - r) % 2 == 0 { 1 } else { -1 };
                            Polynomial::constant(&ring, int(sign))
                        } else {
                            Polynomial::zero(&ring)
                        }
                    } else if c == k + 1 || r == 1 {
                        Polynomial::one(&ring)
                    } else {
                        Polynomial::var(&ring, (r - 2) * cols + (c - k - 2))
                    }
                })
                .collect()
        })
        .collect();
    Ok(PolyMatrix::new(&ring, rows)?)
}

/// All non-constant maximal minors, keyed by 1-based column sets.
pub fn cegm_minors(k: usize, m: usize) -> Result<Vec<(Vec<usize>, Polynomial)>, BuildError> {
    let mat = build_cegm_matrix(k, m)?;
    let rows: Vec<usize> = (0..k).collect();
    let mut out = Vec::new();
    for cols in combinations(m, k) {
        let p = mat.submatrix(&rows, &cols).det()?;
        if !p.is_constant() {
            out.push((cols.iter().map(|c| c + 1).collect(), p));
        }
    }
    Ok(out)
}

/// Seeded positive rational Mandelstam data.
pub fn random_mandelstam<R: Rng + ?Sized>(k: usize, m: usize, rng: &mut R) -> Result<Mandelstam, BuildError> {
    Ok(cegm_minors(k, m)?.into_iter().map(|(idx, _)| (idx, positive_rational(rng))).collect())
}

/// `p = c q` for a nonzero rational `c`.
fn scalar_ratio(p: &Polynomial, q: &Polynomial) -> Option<Rational> {
    if p.num_terms() != q.num_terms() {
        return None;
    }
    let (mp, cp) = p.leading_term()?;
    let (mq, cq) = q.leading_term()?;
    if mp != mq {
        return None;
    }
    let c = cp / cq;
    (p == &q.scale(&c)).then_some(c)
}

/// Each unknown gets `Σ_F w_F ∂F/∂x · Π_{G ≠ F} G = 0`, the products
/// ranging over the factors `F` whose derivative in `x` is nonzero. Minors
/// that are scalar multiples of each other are merged with summed weights.
pub fn build_cegm_scattering(k: usize, m: usize, u: &Mandelstam) -> Result<SquareSystem, BuildError> {
    let minors = cegm_minors(k, m)?;
    if u.len() != minors.len() || minors.iter().any(|(idx, _)| !u.contains_key(idx)) {
        return Err(BuildError::DataIndex(format!(
            "expected data for the {} non-constant minors of M_{{{k},{m}}}",
            minors.len()
        )));
    }
    let values: Vec<Rational> = u.values().cloned().collect();
    require_positive(&values)?;

    // distinct factors up to scalars, with weights
    let mut factors: Vec<(Polynomial, Rational)> = Vec::new();
    for (idx, p) in &minors {
        let w = u[idx].clone();
        match factors.iter_mut().find(|(q, _)| scalar_ratio(p, q).is_some()) {
            Some((_, acc)) => *acc += w,
            None => factors.push((p.clone(), w)),
        }
    }

    let ring = cegm_ring(k, m);
    let mut eqs = Vec::with_capacity(ring.nvars());
    for var in 0..ring.nvars() {
        let support: Vec<(&Polynomial, &Rational, Polynomial)> = factors
            .iter()
            .filter_map(|(f, w)| {
                let d = f.differentiate(var);
                (!d.is_zero()).then_some((f, w, d))
            })
            .collect();
        let mut eq = Polynomial::zero(&ring);
        for (i, (_, w, d)) in support.iter().enumerate() {
            let mut term = d.scale(w);
            for (j, (g, _, _)) in support.iter().enumerate() {
                if i != j {
                    term = &term * *g;
                }
            }
            eq = &eq + &term;
        }
        eqs.push(eq);
    }
    let expected = cegm_ml_degree(k as u64, m as u64).ok().and_then(|v| v.to_u64());
    let nonvanishing = factors.into_iter().map(|(f, _)| f).collect();
    Ok(SquareSystem::new(eqs, ring.nvars(), format!("cegm-{k}-{m}"))?
        .with_expected(expected)
        .with_nonvanishing(nonvanishing))
}

/// Per unknown, the terms `(u_I, ∂p_I/∂x, p_I)` of the gradient of the
/// scattering potential `Σ u_I log p_I`.
fn scattering_potential_gradient(k: usize, m: usize, u: &Mandelstam) -> Result<Vec<Vec<(Rational, Polynomial, Polynomial)>>, BuildError> {
    let minors = cegm_minors(k, m)?;
    let ring = cegm_ring(k, m);
    Ok((0..ring.nvars())
        .map(|v| {
            minors
                .iter()
                .filter_map(|(idx, p)| {
                    let d = p.differentiate(v);
                    (!d.is_zero()).then(|| (u.get(idx).cloned().unwrap_or_else(Rational::zero), d, p.clone()))
                })
                .collect()
        })
        .collect())
}

/// `Σ_I u_I (∂p_I/∂x)(x) / p_I(x)` for each unknown; zero at critical
/// points of the scattering potential.
pub fn scattering_residual(k: usize, m: usize, u: &Mandelstam, x: &[num::complex::Complex64]) -> Result<f64, BuildError> {
    let grad = scattering_potential_gradient(k, m, u)?;
    let mut worst = 0.0f64;
    for terms in grad {
        let mut s = num::complex::Complex64::zero();
        for (w, d, p) in terms {
            let wv = w.to_f64().unwrap_or(f64::NAN);
            s += d.evaluate(x)? / p.evaluate(x)? * wv;
        }
        worst = worst.max(s.norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m26_minors_match_coordinates() {
        let minors: BTreeMap<Vec<usize>, String> =
            cegm_minors(2, 6).unwrap().into_iter().map(|(i, p)| (i, p.to_string())).collect();
        assert_eq!(minors.len(), 9);
        assert_eq!(minors[&vec![2, 4]], "x1");
        assert_eq!(minors[&vec![3, 4]], "x1 - 1");
        assert_eq!(minors[&vec![4, 5]], "-x1 + x2");
        assert_eq!(minors[&vec![5, 6]], "-x2 + x3");
    }
}
