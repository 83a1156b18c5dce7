use num::{ToPrimitive, Zero};

use super::ed::{extend_ring, fresh_names};
use super::model::require_positive;
use super::{BuildError, ModelSpec, SquareSystem};
use crate::degree::ml_degree_ci;
use crate::poly::{int, Polynomial, Rational};

/// Likelihood equations of a model in the probability simplex with
/// coordinates `p_0..p_n`, in denominator-free multiplier form:
/// `f_i = 0`, `Σ p_j = 1`, and `u_j = p_j (y_0 + Σ_i y_i ∂f_i/∂p_j)`.
pub fn build_discrete_mle(model: &ModelSpec, u: &[Rational]) -> Result<SquareSystem, BuildError> {
    if !model.is_complete_intersection() {
        return Err(BuildError::NotCompleteIntersection { codim: model.codim, generators: model.k() });
    }
    let (np1, k) = (model.n(), model.k());
    if u.len() != np1 {
        return Err(BuildError::DataLength { expected: np1, got: u.len() });
    }
    require_positive(u)?;
    let ring = model.ring();
    let (big, map) = extend_ring(ring, fresh_names(ring, "y", k + 1));
    let ys: Vec<Polynomial> = (0..=k).map(|i| Polynomial::var(&big, np1 + i)).collect();
    let gens: Vec<Polynomial> = model.generators.polys().iter().map(|f| f.embed(&big, &map)).collect();

    let mut eqs = gens.clone();
    let mut total = Polynomial::constant(&big, int(-1));
    for j in 0..np1 {
        total = &total + &Polynomial::var(&big, j);
    }
    eqs.push(total);
    for j in 0..np1 {
        let mut inner = ys[0].clone();
        for (i, g) in gens.iter().enumerate() {
            inner = &inner + &(&ys[i + 1] * &g.differentiate(j));
        }
        let e = &(&Polynomial::var(&big, j) * &inner) - &Polynomial::constant(&big, u[j].clone());
        eqs.push(e);
    }
    let nonvanishing = (0..np1).map(|j| Polynomial::var(&big, j)).collect();
    let expected = ml_degree_ci(np1 - 1, model.codim, &model.sorted_degrees()).ok().and_then(|v| v.to_u64());
    Ok(SquareSystem::new(eqs, np1, "discrete-mle")?.with_expected(expected).with_nonvanishing(nonvanishing))
}

/// Log-likelihood `Σ u_j log p_j` on the open simplex, `None` outside it.
pub fn log_likelihood(u: &[f64], p: &[f64]) -> Option<f64> {
    if p.len() < u.len() || p[..u.len()].iter().any(|&v| !(v > 0.0)) {
        return None;
    }
    Some(u.iter().zip(p).map(|(a, b)| a * b.ln()).sum())
}

/// Objective for minimizer selection: the negated log-likelihood.
pub fn negative_log_likelihood(u: &[Rational]) -> impl Fn(&[f64]) -> Option<f64> {
    let u: Vec<f64> = u.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect();
    move |p| log_likelihood(&u, p).map(|v| -v)
}

/// Maximum likelihood estimate for the 2×2 independence model, data
/// `[u0, u1, u2, u3]` read row by row.
pub fn closed_form_mle_independence(u: &[Rational; 4]) -> Result<[Rational; 4], BuildError> {
    let total: Rational = u.iter().sum();
    if total.is_zero() {
        return Err(BuildError::DegenerateData("zero sample size".into()));
    }
    if u.iter().any(|v| v < &Rational::zero()) {
        return Err(BuildError::NonpositiveData);
    }
    let rows = [&u[0] + &u[1], &u[2] + &u[3]];
    let cols = [&u[0] + &u[2], &u[1] + &u[3]];
    let sq = &total * &total;
    Ok([
        &rows[0] * &cols[0] / &sq,
        &rows[0] * &cols[1] / &sq,
        &rows[1] * &cols[0] / &sq,
        &rows[1] * &cols[1] / &sq,
    ])
}

/// Maximum likelihood estimate for the coin model `p0 p2 = (p0 + p1) p1`.
pub fn closed_form_mle_coin(u: &[Rational; 3]) -> Result<[Rational; 3], BuildError> {
    if u.iter().any(|v| v < &Rational::zero()) {
        return Err(BuildError::NonpositiveData);
    }
    let two = int(2);
    let d = &two * &u[0] + &two * &u[1] + &u[2];
    if d.is_zero() {
        return Err(BuildError::DegenerateData("denominator 2u0 + 2u1 + u2 vanishes".into()));
    }
    let a = &two * &u[0] + &u[1];
    let b = &u[1] + &u[2];
    let d2 = &d * &d;
    Ok([&a * &a / &d2, &a * &b / &d2, b / d])
}
