//! Worked systems in three and four variables.

use super::{is_module_solution, DiffOp, ExpPoly, LinearPrime, PdeError, PdeModule};
use crate::poly::{parse, PolySystem, Polynomial, Rational, Ring};

fn system(ring: &Ring, gens: &[&str]) -> PolySystem {
    PolySystem::new(gens.iter().map(|g| parse(g, ring).expect("literal parses")).collect()).expect("nonempty")
}

/// `x1², x2², x1 x3 - x2 x3²`: a double line along the `x3`-axis with an
/// embedded point at the origin.
pub fn axis_scheme_ideal() -> PolySystem {
    system(&Ring::standard(3), &["x1^2", "x2^2", "x1*x3 - x2*x3^2"])
}

/// The primary components `⟨x1², x2², x1 - x2 x3⟩` and `⟨x1², x2², x3⟩`
/// whose intersection is [`axis_scheme_ideal`].
pub fn primary_components() -> (PolySystem, PolySystem) {
    let r = Ring::standard(3);
    (system(&r, &["x1^2", "x2^2", "x1 - x2*x3"]), system(&r, &["x1^2", "x2^2", "x3"]))
}

/// Noetherian operators of the intersection: `1` and `x3 ∂1 + ∂2` along
/// the `x3`-axis, `∂1 ∂2` and `∂1` at the origin.
pub fn noetherian_operators() -> Vec<(DiffOp, LinearPrime)> {
    let r = Ring::standard(3);
    let line = LinearPrime::coordinates(vec![0, 1]);
    let origin = LinearPrime::coordinates(vec![0, 1, 2]);
    let x3 = Polynomial::var(&r, 2);
    let twist = DiffOp::partial(&r, vec![0, 1, 0]).and_then(|d| d.with_term(vec![1, 0, 0], x3)).expect("sizes match");
    vec![
        (DiffOp::identity(&r), line.clone()),
        (twist, line),
        (DiffOp::partial(&r, vec![1, 1, 0]).expect("sizes match"), origin.clone()),
        (DiffOp::partial(&r, vec![1, 0, 0]).expect("sizes match"), origin),
    ]
}

/// `φ = ξ(z3) + z2 ψ(z3) + z1 ψ'(z3) + α z1 z2 + β z1` for univariate
/// polynomials `ξ`, `ψ`.
pub fn general_solution(xi: &Polynomial, psi: &Polynomial, alpha: &Rational, beta: &Rational) -> Result<Polynomial, PdeError> {
    for p in [xi, psi] {
        if p.nvars() != 1 {
            return Err(PdeError::DimensionMismatch { expected: 1, got: p.nvars() });
        }
    }
    let z = Ring::with_prefix("z", 3);
    let (z1, z2, z3) = (Polynomial::var(&z, 0), Polynomial::var(&z, 1), Polynomial::var(&z, 2));
    let at_z3 = |p: &Polynomial| p.compose(std::slice::from_ref(&z3), &z);
    let mut phi = at_z3(xi);
    phi = &phi + &(&z2 * &at_z3(psi));
    phi = &phi + &(&z1 * &at_z3(&psi.differentiate(0)));
    phi = &phi + &(&z1 * &z2).scale(alpha);
    phi = &phi + &z1.scale(beta);
    Ok(phi)
}

/// Builds [`general_solution`] and checks it against the three PDE
/// `∂1² φ = ∂2² φ = ∂1∂3 φ - ∂2∂3² φ = 0`.
pub fn verify_general_solution(xi: &Polynomial, psi: &Polynomial, alpha: &Rational, beta: &Rational) -> Result<bool, PdeError> {
    let phi = general_solution(xi, psi, alpha, beta)?;
    is_module_solution(&PdeModule::from_ideal(&axis_scheme_ideal()), &[ExpPoly::polynomial(phi)])
}

/// The module in `R^7` generated by the four shifted copies of
/// `(x1, x2, x3, x4)`, i.e. the entries of `x · H(u)`.
pub fn hankel_module() -> PdeModule {
    let r = Ring::standard(4);
    let gens = (0..4)
        .map(|shift| {
            (0..7)
                .map(|j| if (shift..shift + 4).contains(&j) { Polynomial::var(&r, j - shift) } else { Polynomial::zero(&r) })
                .collect()
        })
        .collect();
    PdeModule::new(&r, 7, gens).expect("rows have length 7")
}

/// Three vectors orthogonal to every generator of [`hankel_module`]; each
/// turns an arbitrary `f(z)` into a solution.
pub fn hankel_syzygies() -> Vec<Vec<Polynomial>> {
    let r = Ring::standard(4);
    let rows: [[&str; 7]; 3] = [
        [
            "x2^4 - 3*x1*x2^2*x3 + x1^2*x3^2 + 2*x1^2*x2*x4",
            "2*x1^2*x2*x3 - x1*x2^3 - x1^3*x4",
            "x1^2*x2^2 - x1^3*x3",
            "-x1^3*x2",
            "x1^4",
            "0",
            "0",
        ],
        [
            "x2^3*x3 - 2*x1*x2*x3^2 - x1*x2^2*x4 + 2*x1^2*x3*x4",
            "x1^2*x3^2 - x1*x2^2*x3 + x1^2*x2*x4",
            "x1^2*x2*x3 - x1^3*x4",
            "-x1^3*x3",
            "0",
            "x1^4",
            "0",
        ],
        [
            "x2^3*x4 - 2*x1*x2*x3*x4 + x1^2*x4^2",
            "-x1*x2^2*x4 + x1^2*x3*x4",
            "x1^2*x2*x4",
            "-x1^3*x4",
            "0",
            "0",
            "x1^4",
        ],
    ];
    rows.iter().map(|row| row.iter().map(|s| parse(s, &r).expect("literal parses")).collect()).collect()
}
