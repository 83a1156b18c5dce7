use super::coeff::{Coeff, CoeffKind};
use super::polynomial::{Polynomial, Ring};
use super::PolyError;

/// Nonempty list of polynomials over one ring.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySystem<C: Coeff = super::Rational> {
    ring: Ring,
    polys: Vec<Polynomial<C>>,
}

impl<C: Coeff> PolySystem<C> {
    pub fn new(polys: Vec<Polynomial<C>>) -> Result<Self, PolyError> {
        let ring = polys.first().ok_or(PolyError::EmptySystem)?.ring().clone();
        if polys.iter().any(|p| *p.ring() != ring) {
            return Err(PolyError::RingMismatch);
        }
        Ok(PolySystem { ring, polys })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn polys(&self) -> &[Polynomial<C>] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    /// Total degrees of the members (zero polynomials count as degree 0).
    pub fn degrees(&self) -> Vec<u32> {
        self.polys.iter().map(|p| p.degree().unwrap_or(0)).collect()
    }

    /// `k × n` matrix of first partials.
    pub fn jacobian(&self) -> PolyMatrix<C> {
        let rows = self
            .polys
            .iter()
            .map(|f| (0..self.nvars()).map(|j| f.differentiate(j)).collect())
            .collect();
        PolyMatrix { ring: self.ring.clone(), rows }
    }

    pub fn to_complex(&self) -> PolySystem<num::complex::Complex64> {
        PolySystem { ring: self.ring.clone(), polys: self.polys.iter().map(Polynomial::to_complex).collect() }
    }

    pub fn into_polys(self) -> Vec<Polynomial<C>> {
        self.polys
    }
}

/// Rectangular grid of polynomials over a shared ring.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<C: Coeff = super::Rational> {
    ring: Ring,
    rows: Vec<Vec<Polynomial<C>>>,
}

impl<C: Coeff> PolyMatrix<C> {
    pub fn new(ring: &Ring, rows: Vec<Vec<Polynomial<C>>>) -> Result<Self, PolyError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(PolyError::DimensionMismatch("ragged matrix rows".into()));
        }
        if rows.iter().flatten().any(|p| p.ring() != ring) {
            return Err(PolyError::RingMismatch);
        }
        Ok(PolyMatrix { ring: ring.clone(), rows })
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Polynomial::one(ring) } else { Polynomial::zero(ring) })
                    .collect()
            })
            .collect();
        PolyMatrix { ring: ring.clone(), rows }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial<C> {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<Polynomial<C>>] {
        &self.rows
    }

    /// Returns a copy with `row` placed on top.
    pub fn with_top_row(&self, row: Vec<Polynomial<C>>) -> Result<Self, PolyError> {
        if row.len() != self.ncols() && !self.rows.is_empty() {
            return Err(PolyError::DimensionMismatch("new row has wrong length".into()));
        }
        let mut rows = Vec::with_capacity(self.nrows() + 1);
        rows.push(row);
        rows.extend(self.rows.iter().cloned());
        PolyMatrix::new(&self.ring, rows)
    }

    /// Sub-matrix on the given row and column indices.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        PolyMatrix {
            ring: self.ring.clone(),
            rows: rows.iter().map(|&i| cols.iter().map(|&j| self.rows[i][j].clone()).collect()).collect(),
        }
    }

    /// Determinant: cofactor expansion up to size 4, fraction-free
    /// elimination above that for exact coefficients.
    pub fn det(&self) -> Result<Polynomial<C>, PolyError> {
        self.check_square()?;
        if self.nrows() <= 4 || C::KIND == CoeffKind::Complex {
            self.det_laplace()
        } else {
            self.det_bareiss()
        }
    }

    fn check_square(&self) -> Result<(), PolyError> {
        if self.nrows() != self.ncols() {
            return Err(PolyError::NotSquare { rows: self.nrows(), cols: self.ncols() });
        }
        Ok(())
    }

    /// Cofactor expansion along the first row.
    pub fn det_laplace(&self) -> Result<Polynomial<C>, PolyError> {
        self.check_square()?;
        let idx: Vec<usize> = (0..self.nrows()).collect();
        Ok(self.laplace(&idx, &idx))
    }

    fn laplace(&self, rows: &[usize], cols: &[usize]) -> Polynomial<C> {
        match rows.len() {
            0 => Polynomial::one(&self.ring),
            1 => self.rows[rows[0]][cols[0]].clone(),
            2 => {
                let a = &self.rows[rows[0]][cols[0]] * &self.rows[rows[1]][cols[1]];
                let b = &self.rows[rows[0]][cols[1]] * &self.rows[rows[1]][cols[0]];
                a - b
            }
            _ => {
                let mut acc = Polynomial::zero(&self.ring);
                let r0 = rows[0];
                for (k, &c) in cols.iter().enumerate() {
                    let entry = &self.rows[r0][c];
                    if entry.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = cols.iter().copied().filter(|&j| j != c).collect();
                    let term = entry * &self.laplace(&rows[1..], &rest);
                    acc = if k % 2 == 0 { acc + term } else { acc - term };
                }
                acc
            }
        }
    }

    /// Bareiss fraction-free elimination with row pivoting.
    pub fn det_bareiss(&self) -> Result<Polynomial<C>, PolyError> {
        self.check_square()?;
        let n = self.nrows();
        if n == 0 {
            return Ok(Polynomial::one(&self.ring));
        }
        let mut a = self.rows.clone();
        let mut prev = Polynomial::one(&self.ring);
        let mut negate = false;
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        negate = !negate;
                    }
                    None => return Ok(Polynomial::zero(&self.ring)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                a[i][k] = Polynomial::zero(&self.ring);
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// All `size × size` minors, rows-major over lexicographically ordered
    /// (row tuple, column tuple) pairs.
    pub fn minors(&self, size: usize) -> Result<PolySystem<C>, PolyError> {
        if size == 0 || size > self.nrows().min(self.ncols()) {
            return Err(PolyError::MinorSizeOutOfRange { size, rows: self.nrows(), cols: self.ncols() });
        }
        let mut out = Vec::new();
        for rs in combinations(self.nrows(), size) {
            for cs in combinations(self.ncols(), size) {
                out.push(self.submatrix(&rs, &cs).det()?);
            }
        }
        PolySystem::new(out)
    }

    pub fn evaluate(&self, point: &[num::complex::Complex64]) -> Result<Vec<Vec<num::complex::Complex64>>, PolyError> {
        self.rows.iter().map(|r| r.iter().map(|p| p.evaluate(point)).collect()).collect()
    }
}

/// `size`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    if size > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..size).collect();
    loop {
        out.push(cur.clone());
        // rightmost position that can still move right
        let mut i = size;
        while i > 0 && cur[i - 1] == n - size + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..size {
            cur[j] = cur[j - 1] + 1;
        }
    }
}
