//! Small dense matrices: a general row-major [`Matrix`], a packed symmetric
//! [`SymMatrix`] and an LU factorisation for determinants and solves.

use std::ops::{Index, IndexMut};

use num_traits::Num;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Copy + Num> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row slices; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Self::from_fn(r, c, |i, j| rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a == T::zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)] + a * other[(l, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.cols {
            return Err(Error::Shape(format!("{} columns, vector of {}", self.cols, x.len())));
        }
        Ok((0..self.rows).map(|i| (0..self.cols).fold(T::zero(), |acc, j| acc + self[(i, j)] * x[j])).collect())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape("operand dimensions differ".into()));
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] - other[(i, j)]))
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn frobenius(&self) -> T {
        self.data.iter().map(|&x| x * x).sum::<T>().sqrt()
    }

    /// Copies into packed storage, averaging the two triangles.
    pub fn symmetrized(&self) -> Result<SymMatrix<T>> {
        if !self.is_square() {
            return Err(Error::Shape("symmetrization needs a square matrix".into()));
        }
        let half = T::of(0.5);
        Ok(SymMatrix::from_fn(self.rows, |i, j| half * (self[(i, j)] + self[(j, i)])))
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

/// Real symmetric matrix with each off-diagonal entry stored once
/// (packed lower triangle), so symmetry holds exactly by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix<T> {
    n: usize,
    data: Vec<T>,
}

#[inline]
fn packed(i: usize, j: usize) -> usize {
    let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
    hi * (hi + 1) / 2 + lo
}

impl<T> SymMatrix<T> {
    pub fn n(&self) -> usize {
        self.n
    }
}

impl<T: Copy + Num> SymMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![T::zero(); n * (n + 1) / 2] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn diagonal(d: &[T]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &v) in d.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    /// `f` is called once per stored entry, with `i >= j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in 0..=i {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[packed(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[packed(i, j)] = v;
    }

    pub fn add_to_diagonal(&mut self, i: usize, v: T) {
        let k = packed(i, i);
        self.data[k] = self.data[k] + v;
    }

    pub fn to_dense(&self) -> Matrix<T> {
        Matrix::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }

    pub fn mul_vec(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.n {
            return Err(Error::Shape(format!("dimension {}, vector of {}", self.n, x.len())));
        }
        Ok((0..self.n).map(|i| (0..self.n).fold(T::zero(), |acc, j| acc + self.get(i, j) * x[j])).collect())
    }

    /// `xᵀ A x`.
    pub fn quadratic_form(&self, x: &[T]) -> Result<T> {
        let ax = self.mul_vec(x)?;
        Ok(ax.iter().zip(x).fold(T::zero(), |acc, (&a, &b)| acc + a * b))
    }

    /// Principal submatrix on the (0-based, increasing) index list `keep`.
    pub fn principal_submatrix(&self, keep: &[usize]) -> Self {
        Self::from_fn(keep.len(), |i, j| self.get(keep[i], keep[j]))
    }

    /// Entrywise `a·self + b·other`.
    pub fn combine(&self, a: T, other: &Self, b: T) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Shape("operand dimensions differ".into()));
        }
        Ok(Self { n: self.n, data: self.data.iter().zip(&other.data).map(|(&x, &y)| a * x + b * y).collect() })
    }

    pub fn scaled(&self, a: T) -> Self {
        Self { n: self.n, data: self.data.iter().map(|&x| a * x).collect() }
    }

    /// Row sums (equal to column sums).
    pub fn row_sums(&self) -> Vec<T> {
        (0..self.n).map(|i| (0..self.n).fold(T::zero(), |acc, j| acc + self.get(i, j))).collect()
    }

    /// Congruence by a permutation: entry `(perm[i], perm[j])` of the result
    /// is entry `(i, j)` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut inv = vec![0; self.n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        Self::from_fn(self.n, |i, j| self.get(inv[i], inv[j]))
    }

    pub fn map<U: Copy + Num>(&self, f: impl Fn(T) -> U) -> SymMatrix<U> {
        SymMatrix { n: self.n, data: self.data.iter().map(|&x| f(x)).collect() }
    }
}

impl<T: Scalar> SymMatrix<T> {
    pub fn frobenius(&self) -> T {
        let mut s = T::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                let v = self.get(i, j);
                s += v * v;
            }
        }
        s.sqrt()
    }

    pub fn min_entry(&self) -> T {
        self.data.iter().copied().fold(T::infinity(), T::min)
    }
}

/// LU factorisation with partial pivoting of a square matrix.
#[derive(Debug, Clone)]
pub struct Lu<T> {
    lu: Matrix<T>,
    perm: Vec<usize>,
    sign: T,
    singular: bool,
}

impl<T: Scalar> Lu<T> {
    pub fn new(a: &Matrix<T>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::Shape("LU needs a square matrix".into()));
        }
        let n = a.rows();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = T::one();
        let mut singular = false;
        for k in 0..n {
            let p = (k..n).max_by(|&x, &y| lu[(x, k)].abs().partial_cmp(&lu[(y, k)].abs()).unwrap()).unwrap_or(k);
            if lu[(p, k)] == T::zero() {
                singular = true;
                continue;
            }
            if p != k {
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = t;
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / pivot;
                lu[(i, k)] = f;
                if f != T::zero() {
                    for j in k + 1..n {
                        let v = lu[(k, j)];
                        lu[(i, j)] -= f * v;
                    }
                }
            }
        }
        Ok(Self { lu, perm, sign, singular })
    }

    pub fn det(&self) -> T {
        if self.singular {
            return T::zero();
        }
        (0..self.lu.rows()).fold(self.sign, |acc, i| acc * self.lu[(i, i)])
    }

    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        let n = self.lu.rows();
        if b.len() != n {
            return Err(Error::Shape(format!("system of order {n}, rhs of {}", b.len())));
        }
        if self.singular {
            return Err(Error::Singular);
        }
        let mut x: Vec<T> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let v = self.lu[(i, j)] * x[j];
                x[i] -= v;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let v = self.lu[(i, j)] * x[j];
                x[i] -= v;
            }
            x[i] /= self.lu[(i, i)];
        }
        Ok(x)
    }
}

/// Determinant by LU with partial pivoting.
pub fn det<T: Scalar>(a: &Matrix<T>) -> Result<T> {
    Ok(Lu::new(a)?.det())
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

pub fn norm2<T: Scalar>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packed_storage_is_symmetric() {
        let mut m = SymMatrix::<f64>::zeros(3);
        m.set(0, 2, 5.0);
        assert_eq!(m.get(2, 0), 5.0);
        assert_eq!(m.to_dense(), m.to_dense().transpose());
    }

    #[test]
    fn lu_det_and_solve() {
        let a = Matrix::<f64>::from_rows(&[vec![0.0, 2.0, 1.0], vec![1.0, 1.0, 0.0], vec![3.0, 0.0, 1.0]]).unwrap();
        let lu = Lu::new(&a).unwrap();
        // cofactor expansion along the first row
        assert!((lu.det() - (0.0 - 2.0 * (1.0 - 0.0) + 1.0 * (0.0 - 3.0))).abs() < 1e-14);
        let x = lu.solve(&[3.0, 2.0, 4.0]).unwrap();
        let r = a.mul_vec(&x).unwrap();
        for (ri, bi) in r.iter().zip([3.0, 2.0, 4.0]) {
            assert!((ri - bi).abs() < 1e-12);
        }
    }

    #[test]
    fn singular_solve_is_reported() {
        let a = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert_eq!(Lu::new(&a).unwrap().solve(&[1.0, 1.0]), Err(Error::Singular));
    }

    #[test]
    fn permutation_congruence() {
        let m = SymMatrix::from_fn(3, |i, j| (10 * i + j) as f64);
        let p = m.permuted(&[2, 0, 1]);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(p.get([2, 0, 1][i], [2, 0, 1][j]), m.get(i, j));
            }
        }
    }
}
