//! Closed forms for the path graph `P_n`.
//!
//! Eigenpairs are cosine modes, the optimal `k` ports split the path into
//! `k` equal segments, and the smallest eigenvalue of `L + εP_S` has the
//! expansion `kε/n − β ε² + O(ε³)` with explicit `β`. The characteristic
//! polynomials of the perturbed Laplacians factor through the end-block
//! recursion `ψ_m` (diagonal `1, 2, …, 2`) and the Toeplitz recursion `χ_m`
//! (diagonal `2, …, 2`).

use std::f64::consts::PI;

use num_traits::{FromPrimitive, Num};

use crate::error::{Error, Result};
use crate::graph::PortSet;
use crate::scalar::Scalar;
use crate::spectral::charpoly::tridiag_sequence;
use crate::spectral::Polynomial;

fn check_index(n: usize, j: usize) -> Result<()> {
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange { index: j, n });
    }
    Ok(())
}

fn check_order(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::InvalidOrder { n, reason: "path too short for this formula" });
    }
    Ok(())
}

/// `λ_j = 2(1 − cos(π(j−1)/n))` with the unnormalised eigenvector
/// `v_j(p) = cos(π(j−1)(p−½)/n)`.
pub fn path_eigenpair<T: Scalar>(n: usize, j: usize) -> Result<(T, Vec<T>)> {
    check_order(n, 1)?;
    check_index(n, j)?;
    let w = PI * (j - 1) as f64 / n as f64;
    let lambda = T::of(2.0 * (1.0 - w.cos()));
    let v = (1..=n).map(|p| T::of((w * (p as f64 - 0.5)).cos())).collect();
    Ok((lambda, v))
}

/// The centres `((2i−1)n + k)/(2k)`, `i = 1..k`; requires `k | n` with
/// `n/k` odd.
pub fn optimal_ports(n: usize, k: usize) -> Result<PortSet> {
    if k == 0 || k >= n {
        return Err(Error::Assumption(format!("need 1 <= k < n, got k = {k}, n = {n}")));
    }
    if !n.is_multiple_of(k) || (n / k).is_multiple_of(2) {
        return Err(Error::Assumption(format!("{k} must divide {n} with an odd quotient")));
    }
    PortSet::new(n, (1..=k).map(|i| ((2 * i - 1) * n + k) / (2 * k)))
}

/// Second-order series `kε/n − (ε²/4n) Σ_{j≥2} [Σ_i v_j(p_i)]² / (sin²(π(j−1)/2n) ‖v_j‖²)`
/// at real port positions (integers give the physical ports).
pub fn series_kport_real<T: Scalar>(n: usize, positions: &[T], eps: T) -> Result<T> {
    check_order(n, 2)?;
    if positions.is_empty() {
        return Err(Error::InvalidPortSet("empty port list".into()));
    }
    let nf = T::of_usize(n);
    let pi = T::of(PI);
    let half = T::of(0.5);
    let mut sum = T::zero();
    for j in 2..=n {
        let w = pi * T::of_usize(j - 1) / nf;
        let proj: T = positions.iter().map(|&p| (w * (p - half)).cos()).sum();
        let norm2: T = (1..=n).map(|q| (w * (T::of_usize(q) - half)).cos().powi(2)).sum();
        let s = (half * w).sin();
        sum += proj * proj / (s * s * norm2);
    }
    let k = T::of_usize(positions.len());
    Ok(k * eps / nf - eps * eps / (T::of(4.0) * nf) * sum)
}

/// [`series_kport_real`] at the ports of `S`.
pub fn lambda_min_series_kport<T: Scalar>(n: usize, ports: &PortSet, eps: T) -> Result<T> {
    if ports.max_index() > n {
        return Err(Error::IndexOutOfRange { index: ports.max_index(), n });
    }
    let pos: Vec<T> = ports.indices().iter().map(|&p| T::of_usize(p)).collect();
    series_kport_real(n, &pos, eps)
}

/// `ε/n − ε²/(12n²)·((n²−1) + 12(x − (n+1)/2)²)` at a real position `x`,
/// without the parity requirement of [`lambda_min_quadratic_1port`].
pub fn quadratic_1port_real<T: Scalar>(n: usize, x: T, eps: T) -> T {
    let nf = T::of_usize(n);
    let centre = (nf + T::one()) * T::of(0.5);
    let d = x - centre;
    eps / nf - eps * eps / (T::of(12.0) * nf * nf) * (nf * nf - T::one() + T::of(12.0) * d * d)
}

/// One-port quadratic form for odd `n`, maximised at the centre.
pub fn lambda_min_quadratic_1port<T: Scalar>(n: usize, j: usize, eps: T) -> Result<T> {
    if n.is_multiple_of(2) {
        return Err(Error::Assumption(format!("one-port quadratic form needs odd n, got {n}")));
    }
    check_index(n, j)?;
    Ok(quadratic_1port_real(n, T::of_usize(j), eps))
}

fn check_two_port(n: usize, j1: usize, j2: usize) -> Result<()> {
    if !n.is_multiple_of(2) || (n / 2).is_multiple_of(2) {
        return Err(Error::Assumption(format!("two-port formulas need n even with n/2 odd, got {n}")));
    }
    if !(1 <= j1 && 2 * j1 < n && n < 2 * j2 && j2 <= n) {
        return Err(Error::Assumption(format!("need 1 <= j1 < n/2 < j2 <= n, got ({j1}, {j2})")));
    }
    Ok(())
}

/// `2ε/n − ε²/(12n²)·((n²−4) + 24((j1−p1*)² + (j2−p2*)²))` with
/// `p1* = (n+2)/4`, `p2* = (3n+2)/4`.
pub fn lambda_min_quadratic_2port<T: Scalar>(n: usize, j1: usize, j2: usize, eps: T) -> Result<T> {
    check_two_port(n, j1, j2)?;
    let nf = T::of_usize(n);
    let d1 = T::of_usize(j1) - T::of_usize(n + 2) / T::of(4.0);
    let d2 = T::of_usize(j2) - T::of_usize(3 * n + 2) / T::of(4.0);
    let quad = nf * nf - T::of(4.0) + T::of(24.0) * (d1 * d1 + d2 * d2);
    Ok(T::of(2.0) * eps / nf - eps * eps / (T::of(12.0) * nf * nf) * quad)
}

/// `2 − 2cos(π/(2n+1))`, the smallest eigenvalue of `L_n + e_1e_1ᵀ`.
pub fn pseudo_toeplitz_lambda_min<T: Scalar>(n: usize) -> Result<T> {
    check_order(n, 1)?;
    Ok(T::of(2.0 - 2.0 * (PI / (2 * n + 1) as f64).cos()))
}

fn small<T: Num>(v: i64) -> T {
    let one = || T::one();
    let mut acc = T::zero();
    for _ in 0..v.unsigned_abs() {
        acc = acc + one();
    }
    if v < 0 {
        T::zero() - acc
    } else {
        acc
    }
}

/// `ψ_0, …, ψ_m`: characteristic polynomials of the end blocks
/// `tridiag(−1; 1, 2, …, 2; −1)`.
pub fn end_block_sequence<T: Clone + Num>(m: usize) -> Vec<Polynomial<T>> {
    let mut a = vec![small::<T>(2); m];
    if let Some(first) = a.first_mut() {
        *first = T::one();
    }
    let off = vec![small::<T>(-1); m.saturating_sub(1)];
    tridiag_sequence(&a, &off, &off)
}

/// `χ_0, …, χ_m`: characteristic polynomials of `tridiag(−1; 2, …, 2; −1)`.
pub fn toeplitz_sequence<T: Clone + Num>(m: usize) -> Vec<Polynomial<T>> {
    let a = vec![small::<T>(2); m];
    let off = vec![small::<T>(-1); m.saturating_sub(1)];
    tridiag_sequence(&a, &off, &off)
}

/// `det(sI − L_n)`.
pub fn path_laplacian_charpoly<T: Clone + Num>(n: usize) -> Result<Polynomial<T>> {
    check_order(n, 2)?;
    let mut a = vec![small::<T>(2); n];
    a[0] = T::one();
    a[n - 1] = T::one();
    let off = vec![small::<T>(-1); n - 1];
    crate::spectral::tridiag_charpoly(&a, &off, &off)
}

/// `det(sI − L_n − εe_pe_pᵀ)` for an interior port, as
/// `(s−2−ε) ψ_{p−1} ψ_{n−p} − ψ_{p−2} ψ_{n−p} − ψ_{p−1} ψ_{n−p−1}`.
pub fn perturbed_charpoly_1port<T: Clone + Num>(n: usize, p: usize, eps: T) -> Result<Polynomial<T>> {
    check_order(n, 3)?;
    if p < 2 || p > n - 1 {
        return Err(Error::IndexOutOfRange { index: p, n });
    }
    let psi = end_block_sequence::<T>(n);
    let lin = Polynomial::new(vec![T::zero() - small::<T>(2) - eps, T::one()]);
    Ok(lin * psi[p - 1].clone() * psi[n - p].clone()
        - psi[p - 2].clone() * psi[n - p].clone()
        - psi[p - 1].clone() * psi[n - p - 1].clone())
}

/// `det(sI − L_n − ε(e_{p1}e_{p1}ᵀ + e_{p2}e_{p2}ᵀ))` for interior,
/// non-adjacent ports, by cofactor expansion along both port rows. With
/// `m = p2 − p1 − 1`, `x = s − 2 − ε`, `L = ψ_{p1−1}`, `R = ψ_{n−p2}` and
/// primes for one order lower:
///
/// ```text
/// x² L χ_m R − x (2 L χ_{m−1} R + L χ_m R' + L' χ_m R)
///            + L' χ_{m−1} R + L' χ_m R' + L χ_{m−2} R + L χ_{m−1} R'
/// ```
///
/// with `χ_{−1} = 0`.
pub fn perturbed_charpoly_2port<T: Clone + Num>(n: usize, p1: usize, p2: usize, eps: T) -> Result<Polynomial<T>> {
    check_order(n, 6)?;
    if !(1 < p1 && p1 < p2 && p2 < n) {
        return Err(Error::Assumption(format!("ports ({p1}, {p2}) must satisfy 1 < p1 < p2 < {n}")));
    }
    if p2 - p1 < 2 {
        return Err(Error::Assumption(format!("ports ({p1}, {p2}) must not be adjacent")));
    }
    let psi = end_block_sequence::<T>(n);
    let m = p2 - p1 - 1;
    let chi = toeplitz_sequence::<T>(m);
    let chi_at = |i: isize| if i < 0 { Polynomial::zero() } else { chi[i as usize].clone() };
    let (l0, l1) = (psi[p1 - 1].clone(), psi[p1 - 2].clone());
    let (r0, r1) = (psi[n - p2].clone(), psi[n - p2 - 1].clone());
    let (c0, c1, c2) = (chi_at(m as isize), chi_at(m as isize - 1), chi_at(m as isize - 2));
    let x = Polynomial::new(vec![T::zero() - small::<T>(2) - eps, T::one()]);
    let quad = x.clone() * x.clone() * l0.clone() * c0.clone() * r0.clone();
    let lin = x
        * (l0.clone() * c1.clone() * r0.clone()
            + l0.clone() * c1.clone() * r0.clone()
            + l0.clone() * c0.clone() * r1.clone()
            + l1.clone() * c0.clone() * r0.clone());
    let rest = l1.clone() * c1.clone() * r0.clone() + l1 * c0 * r1.clone() + l0.clone() * c2 * r0 + l0 * c1 * r1;
    Ok(quad - lin + rest)
}

/// `det(sI − L − εP) = a(s) + ε b(s)` for one port: `a` and the two lowest
/// coefficients of `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsSlices1<T> {
    pub a: Polynomial<T>,
    pub b0: T,
    pub b1: T,
}

/// `det(sI − L − εP) = a(s) + ε b(s) + ε² c(s)` for two ports.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsSlices2<T> {
    pub a: Polynomial<T>,
    pub b0: T,
    pub b1: T,
    pub c0: T,
}

fn from_i128<T: FromPrimitive>(v: i128) -> Result<T> {
    T::from_i128(v).ok_or(Error::InvalidParameter { name: "n", reason: format!("{v} not representable") })
}

/// For odd `n`: `b0 = −1` and `b1 = (n²−1)/4 + (j − p*)²`, `p* = (n+1)/2`.
pub fn charpoly_eps_slices_1port<T: Clone + Num + FromPrimitive>(n: usize, j: usize) -> Result<EpsSlices1<T>> {
    if n.is_multiple_of(2) {
        return Err(Error::Assumption(format!("one-port slices need odd n, got {n}")));
    }
    check_order(n, 3)?;
    check_index(n, j)?;
    let (nn, d) = (n as i128, j as i128 - (n as i128 + 1) / 2);
    Ok(EpsSlices1 { a: path_laplacian_charpoly(n)?, b0: from_i128(-1)?, b1: from_i128((nn * nn - 1) / 4 + d * d)? })
}

/// For `n` even with `n/2` odd and `j1 < n/2 < j2`: `b0 = 2`,
/// `b1 = −((3n²−4)/8 + n(j2−j1)/2 + (j1−p1*)² + (j2−p2*)²)`, `c0 = j2 − j1`.
pub fn charpoly_eps_slices_2port<T: Clone + Num + FromPrimitive>(
    n: usize,
    j1: usize,
    j2: usize,
) -> Result<EpsSlices2<T>> {
    check_two_port(n, j1, j2)?;
    let (nn, a, b) = (n as i128, j1 as i128, j2 as i128);
    let (d1, d2) = (a - (nn + 2) / 4, b - (3 * nn + 2) / 4);
    Ok(EpsSlices2 {
        a: path_laplacian_charpoly(n)?,
        b0: from_i128(2)?,
        b1: from_i128(-((3 * nn * nn - 4) / 8 + nn * (b - a) / 2 + d1 * d1 + d2 * d2))?,
        c0: from_i128(b - a)?,
    })
}
