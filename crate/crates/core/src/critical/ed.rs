use num::{ToPrimitive, Zero};
use rand::Rng;

use super::model::random::small_int;
use super::{BuildError, ModelSpec, SquareSystem};
use crate::degree::{ed_degree_ci, polar_degrees_surface};
use crate::poly::{PolyMatrix, Polynomial, Rational, Ring};

/// How the critical equations of the distance function are written.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EdForm {
    /// Determinant form when `n = k + 1`, multipliers otherwise.
    #[default]
    Auto,
    /// `f = 0` and `(x - u) + Σ y_i ∇f_i = 0` in unknowns `(x, y)`.
    Multiplier,
    /// `f = 0` and `det [x - u; J] = 0`; needs `n = k + 1`.
    Determinant,
}

/// Names `{prefix}1..` that do not clash with `ring`.
pub(crate) fn fresh_names(ring: &Ring, prefix: &str, count: usize) -> Vec<String> {
    let mut p = prefix.to_string();
    loop {
        let names: Vec<String> = (1..=count).map(|i| format!("{p}{i}")).collect();
        if names.iter().all(|n| ring.index_of(n).is_none()) {
            return names;
        }
        p.push('_');
    }
}

/// `ring` extended by `extra` new variables, and the embedding of `ring`.
pub(crate) fn extend_ring(ring: &Ring, extra: Vec<String>) -> (Ring, Vec<usize>) {
    let big = ring.concat(&Ring::new(extra));
    (big, (0..ring.nvars()).collect())
}

fn embedded_jacobian(model: &ModelSpec, ring: &Ring, map: &[usize]) -> Result<PolyMatrix, BuildError> {
    let j = model.generators.jacobian();
    let rows = j.rows().iter().map(|r| r.iter().map(|p| p.embed(ring, map)).collect()).collect();
    Ok(PolyMatrix::new(ring, rows)?)
}

fn ed_expected(model: &ModelSpec) -> Option<u64> {
    ed_degree_ci(model.n(), model.codim, &model.sorted_degrees()).ok().and_then(|v| v.to_u64())
}

/// Critical points of the squared distance from `u` to the model.
pub fn build_ed_system(model: &ModelSpec, u: &[Rational]) -> Result<SquareSystem, BuildError> {
    build_ed_system_with(model, u, EdForm::Auto)
}

pub fn build_ed_system_with(model: &ModelSpec, u: &[Rational], form: EdForm) -> Result<SquareSystem, BuildError> {
    if !model.is_complete_intersection() {
        return Err(BuildError::NotCompleteIntersection { codim: model.codim, generators: model.k() });
    }
    let (n, k) = (model.n(), model.k());
    if u.len() != n {
        return Err(BuildError::DataLength { expected: n, got: u.len() });
    }
    let ring = model.ring();
    let diff: Vec<Polynomial> =
        (0..n).map(|i| &Polynomial::var(ring, i) - &Polynomial::constant(ring, u[i].clone())).collect();
    let form = match form {
        EdForm::Auto if n == k + 1 => EdForm::Determinant,
        EdForm::Auto => EdForm::Multiplier,
        f => f,
    };
    let system = match form {
        EdForm::Determinant => {
            if n != k + 1 {
                return Err(BuildError::InvalidModel("determinant form needs n = k + 1".into()));
            }
            let aj = model.generators.jacobian().with_top_row(diff)?;
            let mut eqs = model.generators.polys().to_vec();
            eqs.push(aj.det()?);
            SquareSystem::new(eqs, n, "ed-determinant")?
                .with_rank_condition(model.generators.jacobian(), model.codim)
        }
        _ => {
            let (big, map) = extend_ring(ring, fresh_names(ring, "y", k));
            let ys: Vec<Polynomial> = (0..k).map(|i| Polynomial::var(&big, n + i)).collect();
            let jac = embedded_jacobian(model, &big, &map)?;
            let mut eqs: Vec<Polynomial> = model.generators.polys().iter().map(|f| f.embed(&big, &map)).collect();
            for j in 0..n {
                let mut e = diff[j].embed(&big, &map);
                for (i, y) in ys.iter().enumerate() {
                    e = &e + &(y * jac.get(i, j));
                }
                eqs.push(e);
            }
            SquareSystem::new(eqs, n, "ed-multiplier")?.with_rank_condition(jac, model.codim)
        }
    };
    Ok(system.with_expected(ed_expected(model)))
}

/// Random affine section and linear objective for a polar-degree count.
#[derive(Clone, Debug)]
pub struct LinearSection {
    /// Objective coefficients.
    pub objective: Vec<Rational>,
    /// Rows `(a, b)` of the affine equations `a · x = b`.
    pub equations: Vec<(Vec<Rational>, Rational)>,
}

impl LinearSection {
    pub fn random<R: Rng + ?Sized>(n: usize, codim: usize, rng: &mut R) -> Self {
        let nonzero_vec = |rng: &mut R| loop {
            let v: Vec<Rational> = (0..n).map(|_| small_int(rng)).collect();
            if v.iter().any(|c| !c.is_zero()) {
                break v;
            }
        };
        let objective = nonzero_vec(rng);
        let equations = (0..codim).map(|_| (nonzero_vec(rng), small_int(rng))).collect();
        LinearSection { objective, equations }
    }
}

/// Critical points of a random linear form on a random affine section of
/// codimension `i - 1`. For a generic surface in 3-space the count is the
/// polar degree `δ_i`.
pub fn build_linear_section_system<R: Rng + ?Sized>(
    model: &ModelSpec,
    i: usize,
    rng: &mut R,
) -> Result<SquareSystem, BuildError> {
    let n = model.n();
    if i == 0 || i > n {
        return Err(BuildError::IndexOutOfRange { index: i, max: n });
    }
    let section = LinearSection::random(n, i - 1, rng);
    build_linear_section_with(model, i, &section)
}

/// Unknowns `x`, `y` (objective weight), `μ` (section weights) and `ν`
/// (weights of generators beyond the first). Equations:
/// `y ℓ + Σ μ_j a_j - ∇f_1 - Σ ν_i ∇f_i = 0`, `a_j · x = b_j`, `f = 0`.
pub fn build_linear_section_with(model: &ModelSpec, i: usize, section: &LinearSection) -> Result<SquareSystem, BuildError> {
    if !model.is_complete_intersection() {
        return Err(BuildError::NotCompleteIntersection { codim: model.codim, generators: model.k() });
    }
    let (n, k) = (model.n(), model.k());
    if i == 0 || i > n {
        return Err(BuildError::IndexOutOfRange { index: i, max: n });
    }
    if section.equations.len() != i - 1 || section.objective.len() != n {
        return Err(BuildError::DataLength { expected: i - 1, got: section.equations.len() });
    }
    let ring = model.ring();
    let mut extra = fresh_names(ring, "y", 1);
    extra.extend(fresh_names(ring, "mu", i - 1));
    extra.extend(fresh_names(ring, "nu", k - 1));
    let (big, map) = extend_ring(ring, extra);
    let y = Polynomial::var(&big, n);
    let mus: Vec<Polynomial> = (0..i - 1).map(|j| Polynomial::var(&big, n + 1 + j)).collect();
    let nus: Vec<Polynomial> = (0..k - 1).map(|j| Polynomial::var(&big, n + i + j)).collect();
    let jac = embedded_jacobian(model, &big, &map)?;
    let c = |v: &Rational| Polynomial::constant(&big, v.clone());

    let mut eqs = Vec::with_capacity(n + i + k - 1);
    for col in 0..n {
        let mut e = &y * &c(&section.objective[col]);
        for (mu, (a, _)) in mus.iter().zip(&section.equations) {
            e = &e + &(mu * &c(&a[col]));
        }
        e = &e - jac.get(0, col);
        for (nu, row) in nus.iter().zip(1..k) {
            e = &e - &(nu * jac.get(row, col));
        }
        eqs.push(e);
    }
    for (a, b) in &section.equations {
        let mut e = -&c(b);
        for (col, aj) in a.iter().enumerate() {
            e = &e + &(&Polynomial::var(&big, col) * &c(aj));
        }
        eqs.push(e);
    }
    eqs.extend(model.generators.polys().iter().map(|f| f.embed(&big, &map)));

    let expected = if n == 3 && k == 1 {
        polar_degrees_surface(model.generators.degrees()[0] as u64).ok().map(|(d1, d2, d3)| [d1, d2, d3][i - 1])
    } else {
        None
    };
    // smoothness of the section: [J; a_1; ...] has full row rank, which
    // also rules out y = 0
    let mut rows = jac.rows().to_vec();
    for (a, _) in &section.equations {
        rows.push(a.iter().map(|v| c(v)).collect());
    }
    let full = PolyMatrix::new(&big, rows)?;
    Ok(SquareSystem::new(eqs, n, format!("linear-section-{i}"))?
        .with_expected(expected)
        .with_rank_condition(full, k + i - 1))
}
