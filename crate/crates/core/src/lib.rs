//! Spectral k-center selection on simple connected graphs.
//!
//! A set `S` of `k` nodes is central when adding a small conductance `ε` to
//! ground at those nodes moves the smallest Laplacian eigenvalue as far as
//! possible (equivalently, when the RC network behind the graph discharges
//! fastest through them). The crate provides
//!
//! * [`graph`]: graphs, port sets, Laplacian and stochastic matrices,
//!   seeded random instances and an edge-list format;
//! * [`spectral`]: a Jacobi eigensolver, polynomials, tridiagonal
//!   characteristic polynomials and the Lyapunov/Riccati energy functionals;
//! * [`metrics`]: the six selection metrics and an exhaustive, parallel,
//!   deterministic subset search;
//! * [`path_theory`]: closed forms for path graphs (eigenpairs, optimal
//!   ports, second-order eigenvalue series, perturbed characteristic
//!   polynomials);
//! * [`perturbation`]: first-order eigenvector corrections and small-root
//!   series of `a(s) + εb(s) + ε²c(s)`;
//! * [`experiments`]: the comparison study and numerical checks driven by
//!   the command-line tool.
//!
//! Numerical code is generic over [`Scalar`] (`f32` or `f64`); polynomial
//! algebra works over any `num_traits::Num` ring, including exact rationals.
//! The aliases below fix `f64`.
//!
//! ```
//! use kcenter_core::{figure1_graph, select_best, Metric, MetricParams};
//!
//! let g = figure1_graph();
//! let r = select_best(&g, 2, Metric::Mplse, &MetricParams::<f64>::default(), false).unwrap();
//! assert_eq!(r.best.indices(), &[3, 8]);
//! ```

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod experiments;
pub mod graph;
pub mod linalg;
pub mod metrics;
pub mod path_theory;
pub mod perturbation;
pub mod scalar;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{
    figure1_graph, laplacian, max_degree, parse_edge_list, path_graph, random_connected_graph, random_tree,
    serialize_edge_list, stochastic, Graph, PortSet,
};
pub use metrics::{select_best, Metric, MetricParams, SelectionResult};
pub use scalar::Scalar;

pub type Matrix64 = linalg::Matrix<f64>;
pub type SymMatrix64 = linalg::SymMatrix<f64>;
pub type Polynomial64 = spectral::Polynomial<f64>;
pub type EigenDecomposition64 = spectral::EigenDecomposition<f64>;
pub type MetricParams64 = MetricParams<f64>;
pub type SelectionResult64 = SelectionResult<f64>;
