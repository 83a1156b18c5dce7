//! Flat, allocation-free evaluation of polynomial systems and their
//! Jacobians, used in the inner tracking loop.

use num::complex::Complex64;

use super::linalg::Mat;
use crate::poly::{Coeff, Polynomial};

#[derive(Clone, Debug)]
struct Term {
    coef: Complex64,
    /// (variable, exponent) pairs with exponent > 0
    factors: Vec<(usize, u32)>,
}

#[derive(Clone, Debug)]
pub(crate) struct CompiledPoly {
    terms: Vec<Term>,
}

impl CompiledPoly {
    /// Compiles `p`, optionally homogenizing to `homogenize_to` with a new
    /// variable 0 (all original variables shift by one).
    pub fn new<C: Coeff>(p: &Polynomial<C>, homogenize_to: Option<u32>) -> Self {
        let shift = usize::from(homogenize_to.is_some());
        let terms = p
            .terms()
            .map(|(m, c)| {
                let mut factors: Vec<(usize, u32)> = m
                    .exponents()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(v, &e)| (v + shift, e))
                    .collect();
                if let Some(d) = homogenize_to {
                    let e0 = d - m.degree();
                    if e0 > 0 {
                        factors.insert(0, (0, e0));
                    }
                }
                Term { coef: c.to_complex(), factors }
            })
            .collect();
        CompiledPoly { terms }
    }

    pub fn max_exponent(&self) -> u32 {
        self.terms.iter().flat_map(|t| t.factors.iter().map(|f| f.1)).max().unwrap_or(0)
    }

    /// Value, and gradient accumulated into `grad` scaled by `weight`.
    #[inline]
    pub fn eval_grad(&self, powers: &Powers, weight: Complex64, grad: &mut [Complex64]) -> Complex64 {
        let mut val = Complex64::new(0.0, 0.0);
        // prefix products of the factors, then a backward sweep with suffixes
        let mut prefix = [Complex64::new(0.0, 0.0); 16];
        for t in &self.terms {
            let nf = t.factors.len();
            if nf > prefix.len() {
                val += self.slow_term(t, powers, weight, grad);
                continue;
            }
            let mut acc = Complex64::new(1.0, 0.0);
            for (k, &(v, e)) in t.factors.iter().enumerate() {
                prefix[k] = acc;
                acc *= powers.get(v, e);
            }
            val += t.coef * acc;
            let cw = t.coef * weight;
            let mut suffix = Complex64::new(1.0, 0.0);
            for k in (0..nf).rev() {
                let (v, e) = t.factors[k];
                let mut d = cw * prefix[k] * suffix;
                if e > 1 {
                    d *= powers.get(v, e - 1) * (e as f64);
                }
                grad[v] += d;
                suffix *= powers.get(v, e);
            }
        }
        val
    }

    #[cold]
    fn slow_term(&self, t: &Term, powers: &Powers, weight: Complex64, grad: &mut [Complex64]) -> Complex64 {
        let mut prod = t.coef;
        for &(v, e) in &t.factors {
            prod *= powers.get(v, e);
        }
        for (k, &(v, e)) in t.factors.iter().enumerate() {
            let mut d = t.coef * (e as f64) * weight;
            if e > 1 {
                d *= powers.get(v, e - 1);
            }
            for (l, &(w, f)) in t.factors.iter().enumerate() {
                if l != k {
                    d *= powers.get(w, f);
                }
            }
            grad[v] += d;
        }
        prod
    }

    /// `Σ |c_m x^m|`, the size of the terms whose sum is the value.
    pub fn term_magnitude(&self, powers: &Powers) -> f64 {
        let mut total = 0.0;
        for t in &self.terms {
            let mut prod = t.coef.norm();
            for &(v, e) in &t.factors {
                prod *= powers.get(v, e).norm();
            }
            total += prod;
        }
        total
    }

    #[inline]
    pub fn eval(&self, powers: &Powers) -> Complex64 {
        let mut val = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            let mut prod = t.coef;
            for &(v, e) in &t.factors {
                prod *= powers.get(v, e);
            }
            val += prod;
        }
        val
    }
}

/// Table of `x_v^e` for every variable up to a fixed exponent.
#[derive(Clone, Debug)]
pub(crate) struct Powers {
    stride: usize,
    data: Vec<Complex64>,
}

impl Powers {
    pub fn new(nvars: usize, max_exp: u32) -> Self {
        let stride = max_exp as usize + 1;
        Powers { stride, data: vec![Complex64::new(1.0, 0.0); nvars * stride] }
    }

    pub fn fill(&mut self, x: &[Complex64]) {
        for (v, &xv) in x.iter().enumerate() {
            let row = &mut self.data[v * self.stride..(v + 1) * self.stride];
            row[0] = Complex64::new(1.0, 0.0);
            for e in 1..row.len() {
                row[e] = row[e - 1] * xv;
            }
        }
    }

    #[inline]
    pub fn get(&self, v: usize, e: u32) -> Complex64 {
        self.data[v * self.stride + e as usize]
    }
}

/// A square (or rectangular) system compiled for repeated evaluation.
#[derive(Clone, Debug)]
pub(crate) struct CompiledSystem {
    pub polys: Vec<CompiledPoly>,
    pub nvars: usize,
    pub max_exp: u32,
}

impl CompiledSystem {
    pub fn new<C: Coeff>(polys: &[Polynomial<C>], nvars: usize) -> Self {
        let polys: Vec<CompiledPoly> = polys.iter().map(|p| CompiledPoly::new(p, None)).collect();
        let max_exp = polys.iter().map(CompiledPoly::max_exponent).max().unwrap_or(0);
        CompiledSystem { polys, nvars, max_exp }
    }

    pub fn homogenized<C: Coeff>(polys: &[Polynomial<C>], degrees: &[u32], nvars: usize) -> Self {
        let polys: Vec<CompiledPoly> =
            polys.iter().zip(degrees).map(|(p, &d)| CompiledPoly::new(p, Some(d))).collect();
        let max_exp = polys.iter().map(CompiledPoly::max_exponent).max().unwrap_or(0);
        CompiledSystem { polys, nvars: nvars + 1, max_exp }
    }

    pub fn powers(&self) -> Powers {
        Powers::new(self.nvars, self.max_exp)
    }

    /// Values into `vals`, Jacobian into rows `0..len` of `jac`.
    pub fn eval_jac(&self, x: &[Complex64], powers: &mut Powers, vals: &mut [Complex64], jac: &mut Mat) {
        powers.fill(x);
        jac.fill_zero();
        let m = jac.m;
        for (i, p) in self.polys.iter().enumerate() {
            vals[i] = p.eval_grad(powers, Complex64::new(1.0, 0.0), &mut jac.data[i * m..i * m + self.nvars]);
        }
    }

    /// Largest `|f_i(x)| / (1 + Σ |c_m x^m|)` over the system.
    pub fn relative_residual(&self, x: &[Complex64], powers: &mut Powers) -> f64 {
        powers.fill(x);
        self.polys.iter().map(|p| p.eval(powers).norm() / (1.0 + p.term_magnitude(powers))).fold(0.0, f64::max)
    }

    pub fn eval(&self, x: &[Complex64], powers: &mut Powers, vals: &mut [Complex64]) {
        powers.fill(x);
        for (i, p) in self.polys.iter().enumerate() {
            vals[i] = p.eval(powers);
        }
    }
}
