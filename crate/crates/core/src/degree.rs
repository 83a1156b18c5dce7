//! Closed-form solution counts: ED and ML degrees of generic complete
//! intersections, curves, polar degrees, Gaussian tables and CEGM models.

use std::fmt;

use num::{BigUint, One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegreeError {
    #[error("degrees must be given in decreasing order")]
    Unsorted,
    #[error("expected {expected} degrees, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
}

/// A degree that is either known in closed form or not available.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeValue {
    Known(BigUint),
    Unknown,
}

impl DegreeValue {
    pub fn known(&self) -> Option<&BigUint> {
        match self {
            DegreeValue::Known(v) => Some(v),
            DegreeValue::Unknown => None,
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.known().and_then(ToPrimitive::to_u64)
    }
}

impl fmt::Display for DegreeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeValue::Known(v) => write!(f, "{v}"),
            DegreeValue::Unknown => f.write_str("unknown"),
        }
    }
}

impl Serialize for DegreeValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            DegreeValue::Known(v) => s.serialize_str(&v.to_string()),
            DegreeValue::Unknown => s.serialize_none(),
        }
    }
}

fn check_sorted(n: usize, c: usize, degrees: &[u32]) -> Result<(), DegreeError> {
    if degrees.len() != c {
        return Err(DegreeError::WrongCount { expected: c, got: degrees.len() });
    }
    if c == 0 || c > n {
        return Err(DegreeError::OutOfRange(format!("codimension {c} in dimension {n}")));
    }
    if degrees.iter().any(|&d| d == 0) {
        return Err(DegreeError::OutOfRange("degrees must be positive".into()));
    }
    if degrees.windows(2).any(|w| w[0] < w[1]) {
        return Err(DegreeError::Unsorted);
    }
    Ok(())
}

/// `Π b_i · Σ_{i_1+…+i_c ≤ budget} Π base_j^{i_j}`.
fn weighted_sum(prefix: &[u32], bases: &[u32], budget: usize) -> BigUint {
    // h[s] = sum of monomials of total degree exactly s in the bases
    let mut h = vec![BigUint::zero(); budget + 1];
    h[0] = BigUint::one();
    for &b in bases {
        let b = BigUint::from(b);
        for s in 1..=budget {
            let prev = h[s - 1].clone();
            h[s] += prev * &b;
        }
    }
    let total: BigUint = h.into_iter().sum();
    prefix.iter().fold(total, |acc, &d| acc * BigUint::from(d))
}

/// ED degree of a generic complete intersection of codimension `c` in
/// n-space with degrees `d_1 ≥ … ≥ d_c`.
pub fn ed_degree_ci(n: usize, c: usize, degrees: &[u32]) -> Result<BigUint, DegreeError> {
    check_sorted(n, c, degrees)?;
    let bases: Vec<u32> = degrees.iter().map(|d| d - 1).collect();
    Ok(weighted_sum(degrees, &bases, n - c))
}

/// ML degree of a generic complete intersection of codimension `c` in the
/// simplex with coordinates `p_0..p_n`.
pub fn ml_degree_ci(n: usize, c: usize, degrees: &[u32]) -> Result<BigUint, DegreeError> {
    check_sorted(n, c, degrees)?;
    Ok(weighted_sum(degrees, degrees, n - c))
}

/// ED degree `3d + 2g - 2` of a smooth curve of degree `d` and genus `g`.
pub fn ed_degree_curve(d: u64, g: u64) -> Result<BigUint, DegreeError> {
    if d == 0 {
        return Err(DegreeError::OutOfRange("curve degree must be positive".into()));
    }
    Ok(BigUint::from(3 * d + 2 * g) - BigUint::from(2u32))
}

/// Degree and genus of a generic complete-intersection space curve cut out
/// by surfaces of degrees `d1`, `d2`.
pub fn space_curve_degree_genus(d1: u64, d2: u64) -> (u64, u64) {
    let d = d1 * d2;
    // d1²d2/2 + d1d2²/2 - 2d1d2 + 1; the first two terms sum to an integer
    let g = (d1 * d1 * d2 + d1 * d2 * d2) / 2 + 1 - 2 * d1 * d2;
    (d, g)
}

/// Polar degrees `(δ1, δ2, δ3)` of a generic surface of degree `d` in 3-space.
pub fn polar_degrees_surface(d: u64) -> Result<(u64, u64, u64), DegreeError> {
    if d < 2 {
        return Err(DegreeError::OutOfRange("surface degree must be at least 2".into()));
    }
    Ok((d * (d - 1) * (d - 1), d * (d - 1), d))
}

const GAUSSIAN_N4_ML: [u64; 8] = [3, 9, 17, 21, 21, 17, 9, 3];
const GAUSSIAN_N4_RML: [u64; 8] = [5, 19, 45, 71, 81, 63, 29, 7];

/// ML degree and reciprocal ML degree of a generic linear Gaussian model of
/// dimension `k` on 4×4 symmetric matrices.
pub fn gaussian_ml_degrees_n4(k: usize) -> Result<(u64, u64), DegreeError> {
    if !(2..=9).contains(&k) {
        return Err(DegreeError::OutOfRange(format!("k = {k} not in 2..=9")));
    }
    Ok((GAUSSIAN_N4_ML[k - 2], GAUSSIAN_N4_RML[k - 2]))
}

const CEGM_K3: [(u64, u64); 5] = [(5, 2), (6, 26), (7, 1272), (8, 188112), (9, 74570400)];

/// ML degree of the CEGM model of `m` points in general position in
/// `P^{k-1}`, where known.
pub fn cegm_ml_degree(k: u64, m: u64) -> Result<DegreeValue, DegreeError> {
    if k < 2 || m < k + 2 {
        return Err(DegreeError::OutOfRange(format!("need 2 <= k <= m - 2, got k = {k}, m = {m}")));
    }
    let k = k.min(m - k);
    let v = match k {
        2 => (1..=m - 3).fold(BigUint::one(), |acc, i| acc * BigUint::from(i)),
        3 => match CEGM_K3.iter().find(|e| e.0 == m) {
            Some(&(_, v)) => BigUint::from(v),
            None => return Ok(DegreeValue::Unknown),
        },
        4 if m == 8 => BigUint::from(5_211_816u64),
        _ => return Ok(DegreeValue::Unknown),
    };
    Ok(DegreeValue::Known(v))
}
