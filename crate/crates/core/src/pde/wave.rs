use num::Zero;

use super::{ExpPoly, PdeError};
use crate::exact::{kernel, mat_vec, rank, RatMatrix};
use crate::poly::{Polynomial, Rational, Ring};

/// The 4×4 Hankel matrix `H(u)_{ij} = u_{i+j-1}` of a 7-vector.
pub fn hankel(u: &[Rational]) -> Result<RatMatrix, PdeError> {
    if u.len() != 7 {
        return Err(PdeError::LengthMismatch { expected: 7, got: u.len() });
    }
    Ok((0..4).map(|i| u[i..i + 4].to_vec()).collect())
}

pub fn hankel_rank(u: &[Rational]) -> Result<usize, PdeError> {
    Ok(rank(&hankel(u)?))
}

/// Kernel basis of `H(u)`; each vector `c` stands for the linear form
/// `c1 z1 + ... + c4 z4`.
pub fn wave_forms(u: &[Rational]) -> Result<Vec<Vec<Rational>>, PdeError> {
    let k = kernel(&hankel(u)?);
    if k.is_empty() {
        return Err(PdeError::FullRank);
    }
    Ok(k)
}

/// `φ(z) = ψ(ζ_1, ..., ζ_r) · u` with `ζ` read from the kernel of `H(u)`.
pub fn build_wave_solution(u: &[Rational], psi: &Polynomial) -> Result<Vec<ExpPoly>, PdeError> {
    let forms = wave_forms(u)?;
    build_wave_solution_with(u, &forms, psi)
}

/// Same with caller-chosen kernel vectors, which must lie in the kernel.
pub fn build_wave_solution_with(u: &[Rational], forms: &[Vec<Rational>], psi: &Polynomial) -> Result<Vec<ExpPoly>, PdeError> {
    let h = hankel(u)?;
    if psi.nvars() != forms.len() {
        return Err(PdeError::LengthMismatch { expected: forms.len(), got: psi.nvars() });
    }
    for c in forms {
        if c.len() != 4 {
            return Err(PdeError::LengthMismatch { expected: 4, got: c.len() });
        }
        if mat_vec(&h, c).iter().any(|v| !v.is_zero()) {
            return Err(PdeError::NotInKernel);
        }
    }
    let z = Ring::with_prefix("z", 4);
    let zero = vec![Rational::zero(); forms.len()];
    let wave = psi.substitute_linear(forms, &zero, &z)?;
    Ok(u.iter().map(|uj| ExpPoly::polynomial(wave.scale(uj))).collect())
}

/// `φ_j = s_j(∂_z) • f` for a vector `s` of polynomials in `x` and a
/// polynomial `f(z)`.
pub fn syzygy_solution(s: &[Polynomial], f: &Polynomial) -> Result<Vec<ExpPoly>, PdeError> {
    let phi = ExpPoly::polynomial(f.clone());
    s.iter().map(|sj| phi.apply_operator(sj)).collect()
}
