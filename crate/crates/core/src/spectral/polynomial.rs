//! Dense univariate polynomials with coefficients in ascending degree.
//!
//! Arithmetic works over any `num_traits::Num` ring, so characteristic
//! polynomials can be formed exactly over rationals; root finding needs a
//! floating-point [`Scalar`].

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::Num;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `coeffs[d]` is the coefficient of `s^d`. Trailing zeros are trimmed, so
/// the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Clone + Num> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    /// The polynomial `s`.
    pub fn s() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    /// `s - r`.
    pub fn root_factor(r: T) -> Self {
        Self::new(vec![T::zero() - r, T::one()])
    }

    /// `∏ (s - r)`.
    pub fn from_roots(roots: &[T]) -> Self {
        roots.iter().fold(Self::one(), |acc, r| acc * Self::root_factor(r.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `s^d` (zero beyond the degree).
    pub fn coeff(&self, d: usize) -> T {
        self.coeffs.get(d).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        let mut d = T::zero();
        for c in self.coeffs.iter().skip(1) {
            d = d + T::one();
            out.push(c.clone() * d.clone());
        }
        Self::new(out)
    }

    pub fn scale(&self, a: T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * a.clone()).collect())
    }

    /// Maps every coefficient, e.g. to change the scalar type.
    pub fn map<U: Clone + Num>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Clone + Num> Add for Polynomial<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|d| self.coeff(d) + rhs.coeff(d)).collect())
    }
}

impl<T: Clone + Num> Sub for Polynomial<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|d| self.coeff(d) - rhs.coeff(d)).collect())
    }
}

impl<T: Clone + Num> Neg for Polynomial<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(self.coeffs.into_iter().map(|c| T::zero() - c).collect())
    }
}

impl<T: Clone + Num> Mul for Polynomial<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }
}

impl<'a, T: Clone + Num> Mul<&'a Polynomial<T>> for &'a Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        self.clone() * rhs.clone()
    }
}

const ABERTH_MAX_ITER: usize = 500;
const NEWTON_POLISH_STEPS: usize = 8;

impl<T: Scalar> Polynomial<T> {
    /// All complex roots by Aberth–Ehrlich simultaneous iteration.
    pub fn roots(&self) -> Result<Vec<Complex<T>>> {
        let deg = match self.degree() {
            None => return Err(Error::InvalidParameter { name: "polynomial", reason: "zero polynomial".into() }),
            Some(d) => d,
        };
        if deg == 0 {
            return Ok(Vec::new());
        }
        let lead = *self.leading().expect("nonzero");
        let monic: Vec<Complex<T>> = self.coeffs.iter().map(|&c| Complex::new(c / lead, T::zero())).collect();
        let eval = |z: Complex<T>| {
            let mut p = Complex::new(T::zero(), T::zero());
            let mut dp = p;
            for &c in monic.iter().rev() {
                dp = dp * z + p;
                p = p * z + c;
            }
            (p, dp)
        };
        // Rounding level of the evaluation at |z|: a root whose residual is
        // below it cannot be improved further.
        let noise = |z: Complex<T>| {
            let r = z.norm();
            monic.iter().rev().fold(T::zero(), |acc, c| acc * r + c.norm()) * T::epsilon() * T::of(8.0)
        };
        // Cauchy bound on the root moduli sets the starting circle.
        let radius = T::one() + monic[..deg].iter().map(|c| c.norm()).fold(T::zero(), T::max);
        let radius = radius.min(T::of(1e6)).max(T::of(1e-3));
        let mut z: Vec<Complex<T>> = (0..deg)
            .map(|j| {
                let ang = T::of(2.0 * std::f64::consts::PI) * T::of_usize(j) / T::of_usize(deg) + T::of(0.4);
                Complex::new(radius * ang.cos(), radius * ang.sin())
            })
            .collect();
        let eps = T::epsilon();
        let mut settled = vec![false; deg];
        for _ in 0..ABERTH_MAX_ITER {
            let mut done = true;
            for k in 0..deg {
                if settled[k] {
                    continue;
                }
                let (p, dp) = eval(z[k]);
                if p.norm() <= noise(z[k]) {
                    settled[k] = true;
                    continue;
                }
                let ratio = p / dp;
                let repulse: Complex<T> = (0..deg)
                    .filter(|&j| j != k)
                    .map(|j| Complex::new(T::one(), T::zero()) / (z[k] - z[j]))
                    .fold(Complex::new(T::zero(), T::zero()), |a, b| a + b);
                let step = ratio / (Complex::new(T::one(), T::zero()) - ratio * repulse);
                if !(step.re.is_finite() && step.im.is_finite()) {
                    continue;
                }
                z[k] -= step;
                if step.norm() > eps * T::of(4.0) * (T::one() + z[k].norm()) {
                    done = false;
                } else {
                    settled[k] = true;
                }
            }
            if done {
                return Ok(z);
            }
        }
        Err(Error::NonConvergence { routine: "Aberth root iteration", iterations: ABERTH_MAX_ITER })
    }

    /// Real roots in ascending order: roots whose imaginary part is below
    /// `imag_tol · (1 + |z|)`, polished by a few Newton steps.
    pub fn real_roots(&self, imag_tol: T) -> Result<Vec<T>> {
        let dp = self.derivative();
        let mut out: Vec<T> = self
            .roots()?
            .into_iter()
            .filter(|z| z.im.abs() <= imag_tol * (T::one() + z.norm()))
            .map(|z| {
                let mut x = z.re;
                for _ in 0..NEWTON_POLISH_STEPS {
                    let d = dp.eval(x);
                    if d == T::zero() {
                        break;
                    }
                    let step = self.eval(x) / d;
                    if !step.is_finite() || step.abs() > T::of(1e-3) * (T::one() + x.abs()) {
                        break;
                    }
                    x -= step;
                }
                x
            })
            .collect();
        out.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_trim() {
        let p = Polynomial::new(vec![1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        let q = Polynomial::from_roots(&[1, 2]);
        assert_eq!(q.coeffs(), &[2, -3, 1]);
        assert_eq!((q.clone() - q.clone()).degree(), None);
        assert_eq!(q.derivative().coeffs(), &[-3, 2]);
        assert_eq!(q.eval(3), 2);
    }

    #[test]
    fn roots_of_known_polynomial() {
        let p = Polynomial::<f64>::from_roots(&[0.0, 1.0, 3.0, -2.5]);
        let r = p.real_roots(1e-8).unwrap();
        for (a, b) in r.iter().zip([-2.5, 0.0, 1.0, 3.0]) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
        let c = Polynomial::<f64>::new(vec![1.0, 0.0, 1.0]).roots().unwrap();
        assert!(c.iter().all(|z| (z.im.abs() - 1.0).abs() < 1e-12));
    }
}
