use num::complex::Complex64;

/// Dense row-major complex matrix, sized once and reused along a path.
#[derive(Clone, Debug)]
pub(crate) struct Mat {
    pub n: usize,
    pub m: usize,
    pub data: Vec<Complex64>,
}

impl Mat {
    pub fn zeros(n: usize, m: usize) -> Self {
        Mat { n, m, data: vec![Complex64::new(0.0, 0.0); n * m] }
    }

    #[cfg(test)]
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.m + j]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Complex64 {
        &mut self.data[i * self.m + j]
    }

    pub fn fill_zero(&mut self) {
        self.data.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
    }
}

/// Solves `a x = b` in place by LU with partial pivoting; `b` becomes `x`.
///
/// `a` is destroyed. Returns `false` for a numerically singular matrix.
pub(crate) fn solve_in_place(a: &mut Mat, b: &mut [Complex64]) -> bool {
    let n = a.n;
    debug_assert_eq!(a.m, n);
    debug_assert_eq!(b.len(), n);
    // pivoting compares the cheap 1-norm |re| + |im|
    let l1 = |z: &Complex64| z.re.abs() + z.im.abs();
    let scale = a.data.iter().map(l1).fold(0.0, f64::max);
    if !(scale.is_finite() && scale > 0.0) {
        return false;
    }
    let data = &mut a.data[..n * n];
    for k in 0..n {
        let (mut piv, mut best) = (k, l1(&data[k * n + k]));
        for i in k + 1..n {
            let v = l1(&data[i * n + k]);
            if v > best {
                piv = i;
                best = v;
            }
        }
        if best <= scale * 1e-15 {
            return false;
        }
        if piv != k {
            for j in 0..n {
                data.swap(k * n + j, piv * n + j);
            }
            b.swap(k, piv);
        }
        let (top, rest) = data.split_at_mut((k + 1) * n);
        let pivot_row = &top[k * n..];
        let inv = pivot_row[k].inv();
        let bk = b[k];
        for (r, row) in rest.chunks_exact_mut(n).enumerate() {
            let f = row[k] * inv;
            if f.re == 0.0 && f.im == 0.0 {
                continue;
            }
            for (x, &v) in row[k + 1..].iter_mut().zip(&pivot_row[k + 1..]) {
                *x -= f * v;
            }
            b[k + 1 + r] -= f * bk;
        }
    }
    for k in (0..n).rev() {
        let row = &data[k * n..(k + 1) * n];
        let mut s = b[k];
        for (&v, &x) in row[k + 1..].iter().zip(&b[k + 1..]) {
            s -= v * x;
        }
        b[k] = s / row[k];
    }
    b.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

pub(crate) fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Numerical rank from singular values, relative to the largest one.
pub(crate) fn numerical_rank(rows: &[Vec<Complex64>], rel_tol: f64) -> usize {
    let nr = rows.len();
    let nc = rows.first().map_or(0, Vec::len);
    if nr == 0 || nc == 0 {
        return 0;
    }
    let m = nalgebra::DMatrix::from_fn(nr, nc, |i, j| rows[i][j]);
    let sv = m.singular_values();
    let top = sv.iter().cloned().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * top).count()
}
