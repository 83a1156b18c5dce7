use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::complex::Complex64;

use super::coeff::{Coeff, Rational};
use super::monomial::Monomial;
use super::PolyError;

/// Ordered list of variable names shared by polynomials that can be combined.
#[derive(Clone)]
pub struct Ring {
    names: Arc<[String]>,
}

impl Ring {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Ring { names: names.into_iter().map(Into::into).collect() }
    }

    /// The default ring `x1, ..., xn`.
    pub fn standard(n: usize) -> Self {
        Ring::with_prefix("x", n)
    }

    /// Variables `{prefix}1, ..., {prefix}n`.
    pub fn with_prefix(prefix: &str, n: usize) -> Self {
        Ring::new((1..=n).map(|i| format!("{prefix}{i}")))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Concatenation of two rings; names must stay distinct for parsing to
    /// make sense, which is the caller's business.
    pub fn concat(&self, other: &Ring) -> Ring {
        Ring::new(self.names.iter().chain(other.names.iter()).cloned())
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

/// Sparse multivariate polynomial.
///
/// Terms are kept in a map keyed by grevlex-ordered monomials, so iteration
/// is canonical and no zero coefficient is ever stored.
#[derive(Clone, PartialEq)]
pub struct Polynomial<C: Coeff = Rational> {
    ring: Ring,
    terms: BTreeMap<Monomial, C>,
}

/// Polynomial with complex double coefficients.
pub type CPoly = Polynomial<Complex64>;

impl<C: Coeff> Polynomial<C> {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Ring, c: C) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, C::one())
    }

    /// The variable `x_var`. Panics when `var` is outside the ring.
    pub fn var(ring: &Ring, var: usize) -> Self {
        assert!(var < ring.nvars(), "variable index {var} out of range");
        Self::monomial(ring, Monomial::var(ring.nvars(), var), C::one())
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: C) -> Self {
        assert_eq!(m.nvars(), ring.nvars());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { ring: ring.clone(), terms }
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, merging
    /// repeated monomials.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
    {
        let mut p = Self::zero(ring);
        for (exps, c) in terms {
            if exps.len() != ring.nvars() {
                return Err(PolyError::LengthMismatch { expected: ring.nvars(), got: exps.len() });
            }
            p.add_term(Monomial::new(exps), c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Leading term under grevlex.
    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exponents()[var]).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// True when the polynomial involves variable `var`.
    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponents()[var] > 0)
    }

    fn check_ring(&self, other: &Self) -> Result<(), PolyError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let mut out = Self::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to `var`.
    pub fn differentiate(&self, var: usize) -> Self {
        assert!(var < self.nvars(), "variable index {var} out of range");
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.exponents_mut()[var] -= 1;
            out.add_term(dm, c.mul(&C::from_i64(e as i64)));
        }
        out
    }

    /// Applies the derivative `∂^exps` (one order per variable).
    pub fn differentiate_multi(&self, exps: &[u32]) -> Self {
        let mut out = self.clone();
        for (var, &k) in exps.iter().enumerate() {
            for _ in 0..k {
                if out.is_zero() {
                    return out;
                }
                out = out.differentiate(var);
            }
        }
        out
    }

    /// Evaluates at a complex point. Exact coefficients are first rounded
    /// to the nearest double.
    pub fn evaluate(&self, point: &[Complex64]) -> Result<Complex64, PolyError> {
        if point.len() != self.nvars() {
            return Err(PolyError::LengthMismatch { expected: self.nvars(), got: point.len() });
        }
        let powers = power_table(point, |v| self.degree_in(v));
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_complex();
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= powers[v][e as usize];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Moves the polynomial into `ring`, sending variable `i` to `map[i]`.
    pub fn embed(&self, ring: &Ring, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars());
        let mut out = Self::zero(ring);
        for (m, c) in &self.terms {
            let mut e = vec![0; ring.nvars()];
            for (i, &k) in m.exponents().iter().enumerate() {
                e[map[i]] += k;
            }
            out.add_term(Monomial::new(e), c.clone());
        }
        out
    }

    /// Same polynomial over a ring with identical variable count but new
    /// names.
    pub fn rename(&self, ring: &Ring) -> Self {
        assert_eq!(ring.nvars(), self.nvars());
        Polynomial { ring: ring.clone(), terms: self.terms.clone() }
    }

    /// Sets the listed variables to zero.
    pub fn set_to_zero(&self, vars: &[usize]) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            if vars.iter().all(|&v| m.exponents()[v] == 0) {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Substitutes `x_i = Σ_j a[i][j] z_j + b[i]` where the `z` live in
    /// `new_ring`.
    pub fn substitute_linear(&self, a: &[Vec<C>], b: &[C], new_ring: &Ring) -> Result<Self, PolyError> {
        if a.len() != self.nvars() || b.len() != self.nvars() {
            return Err(PolyError::DimensionMismatch(format!(
                "substitution has {} rows and {} offsets for {} variables",
                a.len(),
                b.len(),
                self.nvars()
            )));
        }
        if let Some(row) = a.iter().find(|row| row.len() != new_ring.nvars()) {
            return Err(PolyError::DimensionMismatch(format!(
                "substitution row has {} entries, new ring has {} variables",
                row.len(),
                new_ring.nvars()
            )));
        }
        let images: Vec<Self> = a
            .iter()
            .zip(b)
            .map(|(row, off)| {
                let mut p = Self::constant(new_ring, off.clone());
                for (j, c) in row.iter().enumerate() {
                    p.add_term(Monomial::var(new_ring.nvars(), j), c.clone());
                }
                p
            })
            .collect();
        Ok(self.compose(&images, new_ring))
    }

    /// Substitutes polynomial `images[i]` (over `new_ring`) for variable `i`.
    pub fn compose(&self, images: &[Self], new_ring: &Ring) -> Self {
        assert_eq!(images.len(), self.nvars());
        let mut cache: Vec<Vec<Self>> = images.iter().map(|p| vec![Self::one(new_ring), p.clone()]).collect();
        let mut out = Self::zero(new_ring);
        for (m, c) in &self.terms {
            let mut t = Self::constant(new_ring, c.clone());
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[v].len() <= e as usize {
                    let next = &cache[v][cache[v].len() - 1] * &images[v];
                    cache[v].push(next);
                }
                t = &t * &cache[v][e as usize];
            }
            for (tm, tc) in t.terms {
                out.add_term(tm, tc);
            }
        }
        out
    }

    /// Converts coefficients to complex doubles.
    pub fn to_complex(&self) -> CPoly {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.to_complex())).collect(),
        }
    }

    /// Exact division by a polynomial known to divide `self`.
    ///
    /// Returns `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (lm, lc) = divisor.leading_term()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.ring);
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return None;
            }
            let m = m.clone();
            let qm = lm.quotient_of(&m);
            let qc = c.div(&lc);
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&qm), dc.mul(&qc).neg());
            }
            // float rounding may leave a residue on the cancelled monomial
            rem.terms.remove(&m);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }
}

impl Polynomial<Rational> {
    /// Exact evaluation at a rational point.
    pub fn evaluate_exact(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.nvars() {
            return Err(PolyError::LengthMismatch { expected: self.nvars(), got: point.len() });
        }
        let mut acc = Rational::from_integer(0.into());
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= num::pow::pow(point[v].clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }
}

/// `powers[v][e] = point[v]^e` for `e` up to the degree in `v`.
pub(crate) fn power_table(point: &[Complex64], degree: impl Fn(usize) -> u32) -> Vec<Vec<Complex64>> {
    point
        .iter()
        .enumerate()
        .map(|(v, &x)| {
            let d = degree(v) as usize;
            let mut row = Vec::with_capacity(d + 1);
            row.push(Complex64::new(1.0, 0.0));
            for e in 1..=d {
                row.push(row[e - 1] * x);
            }
            row
        })
        .collect()
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        /// Panics if the operands live in different rings; use the
        /// `checked_*` methods to get an error instead.
        impl<C: Coeff> $trait<&Polynomial<C>> for &Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: &Polynomial<C>) -> Polynomial<C> {
                self.$checked(rhs).expect("polynomial ring mismatch")
            }
        }
        impl<C: Coeff> $trait<Polynomial<C>> for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: Polynomial<C>) -> Polynomial<C> {
                (&self).$method(&rhs)
            }
        }
        impl<C: Coeff> $trait<&Polynomial<C>> for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: &Polynomial<C>) -> Polynomial<C> {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<C: Coeff> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }
}

impl<C: Coeff> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        -&self
    }
}

impl<C: Coeff> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative() == Some(true);
            let c = if negative { c.neg() } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = c == C::one();
            if m.is_one() {
                c.write(f)?;
                continue;
            }
            if !unit {
                c.write(f)?;
                write!(f, "*")?;
            }
            let mut first = true;
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", self.ring.names()[v])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
