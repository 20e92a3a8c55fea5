//! Energy functionals of the RC network behind a Laplacian: the charging
//! energy from a Riccati equation and the energy extracted through
//! resistive ports from a Lyapunov equation.
//!
//! # Charging energy
//!
//! Node voltages obey `ẋ = -(L + ρI)x + B i`, where `B` selects the port
//! nodes and `ρ` is a small uniform leak to ground. The minimal supply
//! `∫ (vᵀi + ρ iᵀi) dt` over `(-∞, 0]` that brings the network from rest to
//! `x(0) = 1` is `1ᵀK1`. Because `vᵀi = d/dt(½|x|²) + xᵀ(L + ρI)x`, this
//! equals `½|x|² + x₀ᵀK'x₀`, where `K'` is the stabilising solution of the
//! regular LQR equation
//!
//! ```text
//! A K' + K' A − K' G K' + A = 0,   A = L + ρI,  G = BBᵀ/ρ
//! ```
//!
//! restricted to the controllable subspace. Writing `P = K'⁻¹` turns it into
//! `(P + I) A (P + I) = A + G`, so
//!
//! ```text
//! K' = A^{1/2} (C − A)⁻¹ A^{1/2},   C = (A^{1/2} (A + G) A^{1/2})^{1/2},
//! ```
//!
//! which needs only symmetric eigendecompositions and stays accurate for
//! tiny `ρ`, where Hamiltonian-subspace methods lose many digits. The
//! closed-loop matrix is similar to `−C`, so the Hamiltonian spectrum is
//! `±eig(C)` and its distance to the imaginary axis is `λ_min(C)`.
//!
//! Without the leak every solution satisfies `K1 = ½·1`, making `1ᵀK1 = n/2`
//! for every port choice, which is why the leak is part of the model.

use super::eigen::sym_eigen;
use super::lyapunov::lyapunov_solve;
use crate::error::{Error, Result};
use crate::graph::PortSet;
use crate::linalg::{Lu, Matrix, SymMatrix};
use crate::scalar::Scalar;

/// Distance from the imaginary axis below which the problem is ill-posed.
pub const HAMILTONIAN_AXIS_TOL: f64 = 1e-10;

/// Stabilising solution of the charging problem in controllable
/// coordinates `z = Vᵀx`.
#[derive(Debug, Clone)]
pub struct ChargingSolution<T> {
    /// `1ᵀK1`, the required supply.
    pub energy: T,
    /// Orthonormal basis `V` (n × r) of the controllable subspace.
    pub basis: Matrix<T>,
    /// `A = VᵀLV + ρI`.
    pub a: SymMatrix<T>,
    /// `G = VᵀBBᵀV / ρ`.
    pub g: SymMatrix<T>,
    /// Stabilising `K'` of `AK' + K'A − K'GK' + A = 0`.
    pub k: SymMatrix<T>,
    /// Smallest `|Re|` over the Hamiltonian spectrum.
    pub axis_distance: T,
}

fn check_ports<T>(l: &SymMatrix<T>, s: &PortSet) -> Result<()> {
    if s.max_index() > l.n() {
        return Err(Error::IndexOutOfRange { index: s.max_index(), n: l.n() });
    }
    Ok(())
}

/// Orthonormal basis of the controllable subspace of `(L, B)`: within each
/// eigenspace of `L`, the span of the projected port columns.
fn controllable_basis<T: Scalar>(l: &SymMatrix<T>, s: &PortSet) -> Result<Matrix<T>> {
    let n = l.n();
    let e = sym_eigen(l)?;
    let cluster_tol = T::tol(1e-8) * (T::one() + l.frobenius());
    let keep_tol = T::tol(1e-18);
    let mut columns: Vec<Vec<T>> = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && e.values[end] - e.values[end - 1] <= cluster_tol {
            end += 1;
        }
        let m = end - start;
        // M = U_cᵀB (m × k); the range of M is found from MMᵀ.
        let proj = |a: usize, b: usize| -> T {
            s.indices().iter().map(|&j| e.vectors[(j - 1, start + a)] * e.vectors[(j - 1, start + b)]).sum()
        };
        let mmt = SymMatrix::from_fn(m, proj);
        let inner = sym_eigen(&mmt)?;
        for (idx, &w) in inner.values.iter().enumerate() {
            if w > keep_tol {
                let col: Vec<T> =
                    (0..n).map(|i| (0..m).map(|a| e.vectors[(i, start + a)] * inner.vectors[(a, idx)]).sum()).collect();
                columns.push(col);
            }
        }
        start = end;
    }
    Ok(Matrix::from_fn(n, columns.len(), |i, j| columns[j][i]))
}

fn congruence<T: Scalar>(v: &Matrix<T>, m: &SymMatrix<T>) -> Result<SymMatrix<T>> {
    v.transpose().matmul(&m.to_dense())?.matmul(v)?.symmetrized()
}

/// Solves the leak-regularised charging problem; see the module docs.
pub fn solve_charging_are<T: Scalar>(l: &SymMatrix<T>, s: &PortSet, rho: T) -> Result<ChargingSolution<T>> {
    check_ports(l, s)?;
    if !(rho > T::zero() && rho.is_finite()) {
        return Err(Error::InvalidParameter { name: "rho", reason: format!("{rho} must be positive") });
    }
    let n = l.n();
    let v = controllable_basis(l, s)?;
    let r = v.cols();
    let a = congruence(&v, l)?.combine(T::one(), &SymMatrix::identity(r), rho)?;
    let g = SymMatrix::from_fn(r, |i, j| s.indices().iter().map(|&p| v[(p - 1, i)] * v[(p - 1, j)]).sum::<T>() / rho);
    let x: Vec<T> = (0..r).map(|j| (0..n).map(|i| v[(i, j)]).sum()).collect();

    let ea = sym_eigen(&a)?;
    let a_half = ea.reconstruct(|w| w.max(T::zero()).sqrt());
    let a_half_d = a_half.to_dense();
    let inner = congruence(&a_half_d, &a.combine(T::one(), &g, T::one())?)?;
    let c = sym_eigen(&inner)?.reconstruct(|w| w.max(T::zero()).sqrt());
    let axis_distance = sym_eigen(&c)?.values.first().copied().unwrap_or(T::infinity());
    if axis_distance <= T::of(HAMILTONIAN_AXIS_TOL) {
        return Err(Error::IllPosed { distance: axis_distance.to_f64_lossy() });
    }
    let d = c.combine(T::one(), &a, -T::one())?;
    let lu = Lu::new(&d.to_dense())?;
    // K' = A^{1/2} D⁻¹ A^{1/2}, assembled column by column.
    let mut dinv_ah = Matrix::zeros(r, r);
    for j in 0..r {
        let col = lu.solve(&a_half_d.column(j)).map_err(|_| Error::IllPosed { distance: 0.0 })?;
        for i in 0..r {
            dinv_ah[(i, j)] = col[i];
        }
    }
    let k = a_half_d.matmul(&dinv_ah)?.symmetrized()?;
    let supply = k.quadratic_form(&x)?;
    if supply.is_nan() || supply < T::zero() {
        return Err(Error::IllPosed { distance: axis_distance.to_f64_lossy() });
    }
    let half = T::of(0.5);
    let energy = half * x.iter().map(|&xi| xi * xi).sum::<T>() + supply;
    Ok(ChargingSolution { energy, basis: v, a, g, k, axis_distance })
}

/// `1ᵀK1`: energy required to charge every node to one volt through the
/// ports `S` (lower means more central).
pub fn are_charging_energy<T: Scalar>(l: &SymMatrix<T>, s: &PortSet, rho: T) -> Result<T> {
    Ok(solve_charging_are(l, s, rho)?.energy)
}

/// `1ᵀQ1` with `AᵀQ + QA + BBᵀ = 0`, `A = -(L + BBᵀ)`: energy dissipated in
/// unit resistors at the ports as the network discharges from `x = 1`
/// (higher means more central).
pub fn gramian_extraction_energy<T: Scalar>(l: &SymMatrix<T>, s: &PortSet) -> Result<T> {
    check_ports(l, s)?;
    let n = l.n();
    let mut a = l.scaled(-T::one());
    let mut w = SymMatrix::zeros(n);
    for &j in s.indices() {
        a.add_to_diagonal(j - 1, -T::one());
        w.set(j - 1, j - 1, T::one());
    }
    let q = lyapunov_solve(&a, &w)?;
    q.quadratic_form(&vec![T::one(); n])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{laplacian, path_graph};

    fn p3() -> SymMatrix<f64> {
        laplacian(&path_graph(3).unwrap())
    }

    #[test]
    fn single_node_charging() {
        let l = SymMatrix::<f64>::zeros(1);
        let s = PortSet::covering(1, [1]).unwrap();
        for rho in [1e-4, 1e-6, 1e-8] {
            let e = are_charging_energy(&l, &s, rho).unwrap();
            assert!(e > 0.5 && e - 0.5 <= 2.0 * rho.sqrt(), "{e}");
        }
    }

    #[test]
    fn centre_port_charges_cheaper() {
        let l = p3();
        let centre = are_charging_energy(&l, &PortSet::new(3, [2]).unwrap(), 1e-6).unwrap();
        let end = are_charging_energy(&l, &PortSet::new(3, [1]).unwrap(), 1e-6).unwrap();
        assert!(centre < end);
    }

    #[test]
    fn gramian_examples() {
        let s1 = PortSet::covering(1, [1]).unwrap();
        assert!((gramian_extraction_energy(&SymMatrix::<f64>::zeros(1), &s1).unwrap() - 0.5).abs() < 1e-15);
        let l = p3();
        let c = gramian_extraction_energy(&l, &PortSet::new(3, [2]).unwrap()).unwrap();
        let e = gramian_extraction_energy(&l, &PortSet::new(3, [1]).unwrap()).unwrap();
        assert!(c > e && c < 1.5 && e > 0.0);
    }

    #[test]
    fn riccati_residual_and_definiteness() {
        let l = p3();
        // centre port leaves the antisymmetric mode uncontrollable
        let sol = solve_charging_are(&l, &PortSet::new(3, [2]).unwrap(), 1e-4).unwrap();
        assert_eq!(sol.basis.cols(), 2);
        let (a, g, k) = (sol.a.to_dense(), sol.g.to_dense(), sol.k.to_dense());
        let ak = a.matmul(&k).unwrap();
        let kgk = k.matmul(&g).unwrap().matmul(&k).unwrap();
        let res = Matrix::from_fn(2, 2, |i, j| ak[(i, j)] + ak[(j, i)] - kgk[(i, j)] + a[(i, j)]);
        assert!(res.frobenius() < 1e-9 * (1.0 + kgk.frobenius()));
        assert!(sym_eigen(&sol.k).unwrap().values[0] > 0.0);
    }
}
