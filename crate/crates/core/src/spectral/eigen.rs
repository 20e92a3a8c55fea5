//! Cyclic Jacobi eigensolver for small dense symmetric matrices.
//!
//! Jacobi is slower than QR-based methods but gives small eigenvalues of
//! positive (semi)definite matrices to high relative accuracy, which the
//! selection metrics rely on: their scores are the smallest eigenvalue of
//! a slightly perturbed Laplacian, typically of order 10⁻³–10⁻⁶.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SymMatrix};
use crate::scalar::Scalar;

const MAX_SWEEPS: usize = 64;

/// Eigenvalues in ascending order with orthonormal eigenvectors stored as
/// the matching columns of `vectors`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition<T> {
    pub values: Vec<T>,
    pub vectors: Matrix<T>,
}

impl<T: Scalar> EigenDecomposition<T> {
    pub fn vector(&self, j: usize) -> Vec<T> {
        self.vectors.column(j)
    }

    /// `U f(Λ) Uᵀ`.
    pub fn reconstruct(&self, f: impl Fn(T) -> T) -> SymMatrix<T> {
        let n = self.values.len();
        let fv: Vec<T> = self.values.iter().map(|&v| f(v)).collect();
        SymMatrix::from_fn(n, |i, j| (0..n).map(|l| self.vectors[(i, l)] * fv[l] * self.vectors[(j, l)]).sum())
    }
}

fn jacobi<T: Scalar>(a: &SymMatrix<T>, want_vectors: bool) -> Result<(Vec<T>, Option<Matrix<T>>)> {
    let n = a.n();
    let mut m = a.to_dense();
    let mut v = want_vectors.then(|| Matrix::identity(n));
    let eps = T::epsilon();
    let floor = eps * eps * a.frobenius();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                let (app, aqq) = (m[(p, p)], m[(q, q)]);
                if apq.abs() <= floor || apq.abs() <= eps * (app * aqq).abs().sqrt() {
                    m[(p, q)] = T::zero();
                    m[(q, p)] = T::zero();
                    continue;
                }
                rotated = true;
                let theta = (aqq - app) / (apq + apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (m[(k, p)], m[(k, q)]);
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[(p, k)], m[(q, k)]);
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                m[(p, p)] = app - t * apq;
                m[(q, q)] = aqq + t * apq;
                m[(p, q)] = T::zero();
                m[(q, p)] = T::zero();
                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                        v[(k, p)] = c * vkp - s * vkq;
                        v[(k, q)] = s * vkp + c * vkq;
                    }
                }
            }
        }
        if !rotated {
            return Ok(((0..n).map(|i| m[(i, i)]).collect(), v));
        }
    }
    Err(Error::NonConvergence { routine: "Jacobi eigensolver", iterations: MAX_SWEEPS })
}

fn check_finite<T: Scalar>(a: &SymMatrix<T>) -> Result<()> {
    for i in 0..a.n() {
        for j in 0..=i {
            if !a.get(i, j).is_finite() {
                return Err(Error::InvalidParameter { name: "matrix", reason: "non-finite entry".into() });
            }
        }
    }
    Ok(())
}

/// Full eigendecomposition, eigenvalues ascending.
pub fn sym_eigen<T: Scalar>(a: &SymMatrix<T>) -> Result<EigenDecomposition<T>> {
    check_finite(a)?;
    let (vals, vecs) = jacobi(a, true)?;
    let vecs = vecs.expect("vectors requested");
    let n = a.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| vals[x].partial_cmp(&vals[y]).expect("finite eigenvalues"));
    Ok(EigenDecomposition {
        values: order.iter().map(|&i| vals[i]).collect(),
        vectors: Matrix::from_fn(n, n, |i, j| vecs[(i, order[j])]),
    })
}

/// Eigenvalues only, ascending.
pub fn sym_eigenvalues<T: Scalar>(a: &SymMatrix<T>) -> Result<Vec<T>> {
    check_finite(a)?;
    let (mut vals, _) = jacobi(a, false)?;
    vals.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    Ok(vals)
}

pub fn lambda_min<T: Scalar>(a: &SymMatrix<T>) -> Result<T> {
    sym_eigenvalues(a)?.first().copied().ok_or_else(|| Error::Shape("empty matrix".into()))
}

pub fn lambda_max<T: Scalar>(a: &SymMatrix<T>) -> Result<T> {
    sym_eigenvalues(a)?.last().copied().ok_or_else(|| Error::Shape("empty matrix".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{laplacian, path_graph, stochastic};

    #[test]
    fn small_spectra() {
        let l3: SymMatrix<f64> = laplacian(&path_graph(3).unwrap());
        let v = sym_eigenvalues(&l3).unwrap();
        for (got, want) in v.iter().zip([0.0, 1.0, 3.0]) {
            assert!((got - want).abs() < 1e-13, "{got} vs {want}");
        }
        assert_eq!(sym_eigenvalues(&SymMatrix::<f64>::identity(2)).unwrap(), vec![1.0, 1.0]);
        let l2: SymMatrix<f64> = laplacian(&path_graph(2).unwrap());
        let v = sym_eigenvalues(&l2).unwrap();
        assert!(v[0].abs() < 1e-15 && (v[1] - 2.0).abs() < 1e-15);
        let z = stochastic::<f64>(&path_graph(3).unwrap(), 0.25).unwrap();
        assert!((lambda_max(&z).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn residuals_and_orthonormality() {
        let a = SymMatrix::from_fn(6, |i, j| ((i * 7 + j * 3) % 5) as f64 - 2.0);
        let e = sym_eigen(&a).unwrap();
        let dense = a.to_dense();
        let bound = 1e-9 * (1.0 + a.frobenius());
        for j in 0..6 {
            let v = e.vector(j);
            let av = dense.mul_vec(&v).unwrap();
            let r: f64 = av.iter().zip(&v).map(|(x, y)| (x - e.values[j] * y).powi(2)).sum();
            assert!(r.sqrt() <= bound);
            for k in 0..6 {
                let d: f64 = v.iter().zip(e.vector(k)).map(|(x, y)| x * y).sum();
                let want = if j == k { 1.0 } else { 0.0 };
                assert!((d - want).abs() < 1e-9);
            }
        }
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn single_precision_runs() {
        let l3: SymMatrix<f32> = laplacian(&path_graph(3).unwrap());
        let v = sym_eigenvalues(&l3).unwrap();
        assert!((v[2] - 3.0).abs() < 1e-5);
    }
}
