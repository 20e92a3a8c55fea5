//! Continuous Lyapunov equation `AᵀX + XA + W = 0` for symmetric stable `A`.

use super::eigen::sym_eigen;
use crate::error::{Error, Result};
use crate::linalg::SymMatrix;
use crate::scalar::Scalar;

/// Solves `AᵀX + XA + W = 0` in the eigenbasis of `A`:
/// with `A = U Λ Uᵀ` and `W̃ = UᵀWU`, `X̃_ij = -W̃_ij / (λ_i + λ_j)`.
pub fn lyapunov_solve<T: Scalar>(a: &SymMatrix<T>, w: &SymMatrix<T>) -> Result<SymMatrix<T>> {
    let n = a.n();
    if w.n() != n {
        return Err(Error::Shape(format!("A is {n}x{n} but W is {0}x{0}", w.n())));
    }
    let e = sym_eigen(a)?;
    let top = e.values.last().copied().unwrap_or(-T::one());
    if top >= -T::tol(1e-12) {
        return Err(Error::Unstable { lambda_max: top.to_f64_lossy() });
    }
    let u = &e.vectors;
    let wd = w.to_dense();
    let uwu = u.transpose().matmul(&wd)?.matmul(u)?;
    let xt = SymMatrix::from_fn(n, |i, j| -uwu[(i, j)] / (e.values[i] + e.values[j]));
    let x = u.matmul(&xt.to_dense())?.matmul(&u.transpose())?;
    x.symmetrized()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_cases() {
        let x = lyapunov_solve::<f64>(&SymMatrix::identity(3).scaled(-1.0), &SymMatrix::identity(3)).unwrap();
        assert!(x.combine(1.0, &SymMatrix::identity(3), -0.5).unwrap().frobenius() < 1e-15);
        let x = lyapunov_solve::<f64>(&SymMatrix::diagonal(&[-1.0, -2.0]), &SymMatrix::identity(2)).unwrap();
        assert!((x.get(0, 0) - 0.5).abs() < 1e-15 && (x.get(1, 1) - 0.25).abs() < 1e-15);
        assert!(x.get(0, 1).abs() < 1e-15);
    }

    #[test]
    fn rejects_unstable() {
        let r = lyapunov_solve::<f64>(&SymMatrix::diagonal(&[-1.0, 0.0]), &SymMatrix::identity(2));
        assert!(matches!(r, Err(Error::Unstable { .. })));
    }
}
