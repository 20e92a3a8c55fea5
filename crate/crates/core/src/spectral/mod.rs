//! Dense symmetric eigensolving, polynomial tools, characteristic
//! polynomials of tridiagonal matrices, and the Lyapunov/Riccati solvers
//! behind the energy heuristics.

pub mod charpoly;
pub mod eigen;
pub mod lyapunov;
pub mod polynomial;
pub mod riccati;

pub use charpoly::{path_charpoly_lowcoeffs, tridiag_charpoly, PathLowCoeffs};
pub use eigen::{lambda_max, lambda_min, sym_eigen, sym_eigenvalues, EigenDecomposition};
pub use lyapunov::lyapunov_solve;
pub use polynomial::Polynomial;
pub use riccati::{are_charging_energy, gramian_extraction_energy, solve_charging_are, ChargingSolution};
