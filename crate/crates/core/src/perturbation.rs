//! Perturbation series: first-order eigenvector corrections of symmetric
//! matrices and the small root of `a(s) + εb(s) + ε²c(s)` with `a(0) = 0`.

use num_traits::Num;

use crate::error::{Error, Result};
use crate::linalg::SymMatrix;
use crate::scalar::Scalar;
use crate::spectral::{sym_eigen, Polynomial};

/// Minimum eigenvalue gap for the first-order eigenvector formula.
pub const EIGVEC_DEGENERACY_TOL: f64 = 1e-8;
const NEWTON_MAX_ITER: usize = 200;

/// `v̂_j = v_j + ε Σ_{k≠j} (v_jᵀ P v_k)/(λ_j − λ_k) v_k` for the `j`-th
/// (1-based, ascending) eigenpair of `A`, not renormalised.
pub fn perturbed_eigvec_first_order<T: Scalar>(a: &SymMatrix<T>, p: &SymMatrix<T>, j: usize, eps: T) -> Result<Vec<T>> {
    let n = a.n();
    if p.n() != n {
        return Err(Error::Shape(format!("A is {n}x{n} but P is {0}x{0}", p.n())));
    }
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange { index: j, n });
    }
    let e = sym_eigen(a)?;
    // only the gaps from λ_j enter; a repeated eigenvalue elsewhere is
    // harmless because the sum over its eigenspace is basis independent
    let lj = e.values[j - 1];
    let gap = (0..n).filter(|&k| k != j - 1).map(|k| (e.values[k] - lj).abs()).fold(T::infinity(), T::min);
    if gap <= T::tol(EIGVEC_DEGENERACY_TOL) {
        return Err(Error::Degenerate { gap: gap.to_f64_lossy() });
    }
    let vj = e.vector(j - 1);
    let pvj = p.mul_vec(&vj)?;
    let mut out = vj.clone();
    for k in (0..n).filter(|&k| k != j - 1) {
        let vk = e.vector(k);
        let coupling: T = vk.iter().zip(&pvj).map(|(&x, &y)| x * y).sum();
        let w = eps * coupling / (lj - e.values[k]);
        for (o, &x) in out.iter_mut().zip(&vk) {
            *o += w * x;
        }
    }
    Ok(out)
}

/// Coefficients of `λ(ε) = β1 ε + β2 ε² + O(ε³)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootSeries<T> {
    pub beta1: T,
    pub beta2: T,
}

impl<T: Clone + Num> RootSeries<T> {
    pub fn eval(&self, eps: T) -> T {
        (self.beta1.clone() + self.beta2.clone() * eps.clone()) * eps
    }
}

fn hypotheses<T: Clone + Num>(a: &Polynomial<T>, b: &Polynomial<T>) -> Result<()> {
    if !a.coeff(0).is_zero() {
        return Err(Error::Assumption("a(0) must vanish".into()));
    }
    if a.coeff(1).is_zero() {
        return Err(Error::Assumption("a'(0) must be nonzero".into()));
    }
    if b.coeff(0).is_zero() {
        return Err(Error::Assumption("b(0) must be nonzero".into()));
    }
    Ok(())
}

/// Small root of `a(s) + ε b(s)`: `β1 = −b0/a1`,
/// `β2 = (a1 b1 b0 − a2 b0²)/a1³`.
pub fn root_series_single<T: Clone + Num>(a: &Polynomial<T>, b: &Polynomial<T>) -> Result<RootSeries<T>> {
    hypotheses(a, b)?;
    series(a, b, T::zero())
}

fn series<T: Clone + Num>(a: &Polynomial<T>, b: &Polynomial<T>, c0: T) -> Result<RootSeries<T>> {
    let (a1, a2, b0, b1) = (a.coeff(1), a.coeff(2), b.coeff(0), b.coeff(1));
    let a1_cubed = a1.clone() * a1.clone() * a1.clone();
    let beta1 = T::zero() - b0.clone() / a1.clone();
    let num = a1.clone() * b1 * b0.clone() - a2 * b0.clone() * b0 - a1.clone() * a1 * c0;
    Ok(RootSeries { beta1, beta2: num / a1_cubed })
}

/// Small root of `a(s) + ε b(s) + ε² c(s)`: `β1 = −b0/a1`,
/// `β2 = (a1 b1 b0 − a2 b0² − a1² c0)/a1³`.
pub fn root_series_double<T: Clone + Num>(
    a: &Polynomial<T>,
    b: &Polynomial<T>,
    c: &Polynomial<T>,
) -> Result<RootSeries<T>> {
    hypotheses(a, b)?;
    if c.coeff(0).is_zero() {
        return Err(Error::Assumption("c(0) must be nonzero".into()));
    }
    series(a, b, c.coeff(0))
}

/// Real root near `guess` by damped Newton iteration.
pub fn smallest_root_numeric<T: Scalar>(p: &Polynomial<T>, guess: T) -> Result<T> {
    let fail = || Error::RootFinding { guess: guess.to_f64_lossy() };
    if p.degree().unwrap_or(0) == 0 {
        return Err(fail());
    }
    let dp = p.derivative();
    let scale = |x: T| {
        let ax = x.abs();
        p.coeffs().iter().rev().fold(T::zero(), |acc, &c| acc * ax + c.abs())
    };
    let eps = T::epsilon();
    let mut x = guess;
    let mut fx = p.eval(x);
    for _ in 0..NEWTON_MAX_ITER {
        if fx.abs() <= T::of(4.0) * eps * scale(x) {
            return Ok(x);
        }
        let d = dp.eval(x);
        if d == T::zero() || !d.is_finite() {
            return Err(fail());
        }
        let step = fx / d;
        let mut lambda = T::one();
        let mut accepted = false;
        for _ in 0..40 {
            let cand = x - lambda * step;
            let fc = p.eval(cand);
            if fc.abs() < fx.abs() {
                x = cand;
                fx = fc;
                accepted = true;
                break;
            }
            lambda *= T::of(0.5);
        }
        if !accepted || (lambda * step).abs() <= eps * (T::one() + x.abs()) {
            // no further decrease possible: accept if the residual is at
            // rounding level
            return if fx.abs() <= T::of(64.0) * eps * scale(x) { Ok(x) } else { Err(fail()) };
        }
    }
    Err(fail())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[f64]) -> Polynomial<f64> {
        Polynomial::new(c.to_vec())
    }

    #[test]
    fn single_examples() {
        let r = root_series_single(&poly(&[0.0, 1.0, 1.0]), &poly(&[1.0])).unwrap();
        assert_eq!((r.beta1, r.beta2), (-1.0, -1.0));
        let r = root_series_single(&poly(&[0.0, 2.0, 1.0]), &poly(&[1.0])).unwrap();
        assert_eq!((r.beta1, r.beta2), (-0.5, -0.125));
        let r = root_series_single(&poly(&[0.0, 1.0, 1.0]), &poly(&[1.0, 1.0])).unwrap();
        assert_eq!((r.beta1, r.beta2), (-1.0, 0.0));
        assert!(root_series_single(&poly(&[1.0, 1.0]), &poly(&[1.0])).is_err());
        assert!(root_series_single(&poly(&[0.0, 1.0]), &poly(&[0.0, 1.0])).is_err());
    }

    #[test]
    fn double_examples() {
        let r = root_series_double(&poly(&[0.0, 1.0]), &poly(&[1.0]), &poly(&[3.0])).unwrap();
        assert_eq!((r.beta1, r.beta2), (-1.0, -3.0));
        let r = root_series_double(&poly(&[0.0, 1.0, 1.0]), &poly(&[1.0]), &poly(&[1.0])).unwrap();
        assert_eq!(r.beta2, -2.0);
        assert!(root_series_double(&poly(&[0.0, 1.0]), &poly(&[1.0]), &poly(&[0.0, 1.0])).is_err());
    }

    #[test]
    fn newton_examples() {
        assert!((smallest_root_numeric(&poly(&[-1.0, 0.0, 1.0]), 0.9).unwrap() - 1.0).abs() < 1e-15);
        let r = smallest_root_numeric(&poly(&[0.01, 1.0, 1.0]), 0.0).unwrap();
        assert!((r - (-1.0 + (1.0f64 - 0.04).sqrt()) / 2.0).abs() < 1e-15);
        assert!(smallest_root_numeric(&poly(&[1.0, 0.0, 1.0]), 0.0).is_err());
    }

    #[test]
    fn first_order_eigvec() {
        let a = SymMatrix::diagonal(&[1.0f64, 2.0]);
        let p = SymMatrix::from_fn(2, |i, j| if i == j { 0.0 } else { 1.0 });
        let v = perturbed_eigvec_first_order(&a, &p, 1, 0.01).unwrap();
        let s = v[0].signum();
        assert!((s * v[0] - 1.0).abs() < 1e-15 && (s * v[1] + 0.01).abs() < 1e-15);
        let zero = SymMatrix::zeros(2);
        let v = perturbed_eigvec_first_order(&a, &zero, 2, 0.5).unwrap();
        assert!((v[1].abs() - 1.0).abs() < 1e-15 && v[0].abs() < 1e-15);
        let degenerate = SymMatrix::<f64>::identity(2);
        assert!(matches!(perturbed_eigvec_first_order(&degenerate, &p, 1, 0.1), Err(Error::Degenerate { .. })));
    }
}
