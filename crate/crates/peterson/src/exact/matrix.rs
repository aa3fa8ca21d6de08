use super::Scalar;
use crate::error::{Error, Result};
use crate::{Int, Rat};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::ops::{Index, IndexMut};

/// Dense row-major matrix over any [`Scalar`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == n_cols), "ragged rows");
        Matrix { rows: n_rows, cols: n_cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    /// Side length of a square matrix.
    pub fn dim(&self) -> usize {
        assert_eq!(self.rows, self.cols, "matrix is not square");
        self.rows
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn mul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a.clone() * rhs[(k, j)].clone();
                    let cur = std::mem::replace(&mut out[(i, j)], T::zero());
                    out[(i, j)] = cur + prod;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Matrix<T> {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn pow(&self, e: usize) -> Matrix<T> {
        let n = self.dim();
        let mut out = Matrix::identity(n);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl Matrix<Int> {
    /// Exact determinant by fraction-free (Bareiss) elimination.
    /// Every intermediate value is an integer by construction.
    pub fn bareiss_det(&self) -> Int {
        let n = self.dim();
        if n == 0 {
            return Int::one();
        }
        let mut m = self.clone();
        let mut sign = 1i32;
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&r| !m[(r, k)].is_zero()) {
                    Some(r) => {
                        m.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[(k, k)] * &m[(i, j)] - &m[(i, k)] * &m[(k, j)];
                    debug_assert!((&num % &prev).is_zero(), "Bareiss division not exact");
                    m[(i, j)] = num / &prev;
                }
                m[(i, k)] = Int::zero();
            }
            prev = m[(k, k)].clone();
        }
        let det = m[(n - 1, n - 1)].clone();
        if sign < 0 {
            -det
        } else {
            det
        }
    }

    /// Fraction-free forward elimination of `[self | rhs]`.
    /// Returns the sign of the row permutation and the reduced augmented
    /// matrix (self-part upper triangular), or `None` if singular.
    fn bareiss_echelon(&self, rhs: &Matrix<Int>) -> Option<(i32, Matrix<Int>)> {
        let n = self.dim();
        assert_eq!(rhs.n_rows(), n);
        let width = n + rhs.n_cols();
        let mut aug = Matrix::from_fn(n, width, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - n)].clone()
            }
        });
        let mut sign = 1i32;
        let mut prev = Int::one();
        for k in 0..n {
            if aug[(k, k)].is_zero() {
                let r = (k + 1..n).find(|&r| !aug[(r, k)].is_zero())?;
                aug.swap_rows(k, r);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..width {
                    let num = &aug[(k, k)] * &aug[(i, j)] - &aug[(i, k)] * &aug[(k, j)];
                    debug_assert!((&num % &prev).is_zero(), "Bareiss division not exact");
                    aug[(i, j)] = num / &prev;
                }
                aug[(i, k)] = Int::zero();
            }
            prev = aug[(k, k)].clone();
        }
        Some((sign, aug))
    }
}

impl Matrix<Rat> {
    pub fn from_int(m: &Matrix<Int>) -> Matrix<Rat> {
        m.map(|x| Rat::from_integer(x.clone()))
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(|x| x.to_f64().expect("rational out of f64 range"))
    }

    /// Clear denominators row by row: returns the integer matrix `S * self`
    /// together with the diagonal scaling factors of `S`.
    fn clear_denominators(&self) -> (Matrix<Int>, Vec<Int>) {
        let mut scales = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut l = Int::one();
            for j in 0..self.cols {
                l = num_integer::lcm(l, self[(i, j)].denom().clone());
            }
            scales.push(l);
        }
        let int = Matrix::from_fn(self.rows, self.cols, |i, j| {
            let scaled = self[(i, j)].clone() * Rat::from_integer(scales[i].clone());
            debug_assert!(scaled.is_integer());
            scaled.to_integer()
        });
        (int, scales)
    }

    /// Exact determinant via fraction-free elimination on the cleared matrix.
    pub fn determinant(&self) -> Rat {
        let (int, scales) = self.clear_denominators();
        let mut denom = Int::one();
        for s in &scales {
            denom *= s;
        }
        Rat::new(int.bareiss_det(), denom)
    }

    /// Exact inverse: fraction-free forward elimination to a triangular
    /// integer system, then rational back-substitution.
    pub fn bareiss_inverse(&self) -> Result<Matrix<Rat>> {
        if self.rows != self.cols {
            return Err(Error::NotSquare);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Matrix::zeros(0, 0));
        }
        let (int, scales) = self.clear_denominators();
        let (_, aug) = int.bareiss_echelon(&Matrix::identity(n)).ok_or(Error::Singular)?;
        // Solve U x = b for each right-hand column; entries of aug are integers.
        let mut inv = Matrix::zeros(n, n);
        for col in 0..n {
            let mut x = vec![Rat::zero(); n];
            for i in (0..n).rev() {
                let mut acc = Rat::from_integer(aug[(i, n + col)].clone());
                for j in i + 1..n {
                    acc -= Rat::from_integer(aug[(i, j)].clone()) * x[j].clone();
                }
                x[i] = acc / Rat::from_integer(aug[(i, i)].clone());
            }
            for i in 0..n {
                inv[(i, col)] = std::mem::replace(&mut x[i], Rat::zero());
            }
        }
        // self = S^{-1} * int, so self^{-1} = int^{-1} * S: scale column j by scales[j].
        for j in 0..n {
            let s = Rat::from_integer(scales[j].clone());
            for i in 0..n {
                let v = std::mem::replace(&mut inv[(i, j)], Rat::zero());
                inv[(i, j)] = v * s.clone();
            }
        }
        Ok(inv)
    }

    pub fn is_entrywise_nonnegative(&self) -> bool {
        self.data.iter().all(|x| !x.is_negative())
    }
}

impl Matrix<f64> {
    /// Maximum absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

/// Sherman-Morrison: exact inverse of `A - u vᵀ` given `Ainv = A^{-1}`.
///
/// Fails with [`Error::SingularUpdate`] when `1 - v Ainv u = 0`.
pub fn rank_one_update_inverse(a_inv: &Matrix<Rat>, u: &[Rat], v: &[Rat]) -> Result<Matrix<Rat>> {
    let n = a_inv.dim();
    assert_eq!(u.len(), n);
    assert_eq!(v.len(), n);
    // w = Ainv u (column), z = v Ainv (row)
    let mut w = vec![Rat::zero(); n];
    let mut z = vec![Rat::zero(); n];
    for i in 0..n {
        for j in 0..n {
            w[i] += a_inv[(i, j)].clone() * u[j].clone();
            z[i] += v[j].clone() * a_inv[(j, i)].clone();
        }
    }
    let mut denom = Rat::one();
    for i in 0..n {
        denom -= v[i].clone() * w[i].clone();
    }
    if denom.is_zero() {
        return Err(Error::SingularUpdate);
    }
    let mut out = a_inv.clone();
    for i in 0..n {
        for j in 0..n {
            let delta = w[i].clone() * z[j].clone() / denom.clone();
            let cur = std::mem::replace(&mut out[(i, j)], Rat::zero());
            out[(i, j)] = cur + delta;
        }
    }
    Ok(out)
}
