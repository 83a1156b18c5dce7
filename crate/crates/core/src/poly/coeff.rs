use std::fmt;

use num::bigint::BigInt;
use num::complex::Complex64;
use num::traits::{One, Signed, ToPrimitive, Zero};
use num::BigRational;

/// Exact rational coefficient.
pub type Rational = BigRational;

/// Shorthand for the rational `num / den`.
///
/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer-valued rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Which arithmetic a polynomial's coefficients use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffKind {
    Rational,
    Complex,
}

/// Coefficient field of a [`Polynomial`](super::Polynomial).
///
/// Implemented for exact rationals and for complex doubles. All operations
/// are by reference so big rationals are not cloned needlessly.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    const KIND: CoeffKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(value: i64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Field division; the caller guarantees `other` is nonzero.
    fn div(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Round-to-nearest conversion for exact kinds.
    fn to_complex(&self) -> Complex64;

    /// Writes the coefficient for polynomial display.
    fn write(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result;
    /// `Some(true)` when the coefficient is a negative real number with an
    /// exact sign, `None` when the notion does not apply.
    fn is_negative(&self) -> Option<bool>;
}

impl Coeff for Rational {
    const KIND: CoeffKind = CoeffKind::Rational;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(value: i64) -> Self {
        int(value)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn write(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
    fn is_negative(&self) -> Option<bool> {
        Some(Signed::is_negative(self))
    }
}

impl Coeff for Complex64 {
    const KIND: CoeffKind = CoeffKind::Complex;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn from_i64(value: i64) -> Self {
        Complex64::new(value as f64, 0.0)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn write(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0.0 {
            write!(f, "{}", self.re)
        } else {
            write!(f, "({}{:+}i)", self.re, self.im)
        }
    }
    fn is_negative(&self) -> Option<bool> {
        None
    }
}
