//! Numerical checks of the path-graph closed forms against eigensolves.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{laplacian, path_graph, Graph, PortSet};
use crate::linalg::SymMatrix;
use crate::metrics::{msub_score, perturbed_laplacian, select_best, Metric, MetricParams};
use crate::path_theory as pt;
use crate::spectral::{lambda_min, sym_eigen, sym_eigenvalues};

/// One named check: `value` is the observed deviation (or 0/1 for
/// set-valued checks) and passes when `value <= tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub tolerance: f64,
}

struct Checks(Vec<CheckResult>);

impl Checks {
    fn push(&mut self, name: impl Into<String>, value: f64, tolerance: f64) {
        let passed = value.is_finite() && value <= tolerance;
        self.0.push(CheckResult { name: name.into(), passed, value, tolerance });
    }

    fn flag(&mut self, name: impl Into<String>, ok: bool) {
        self.push(name, if ok { 0.0 } else { 1.0 }, 0.0);
    }
}

fn ptilde(n: usize, ports: &PortSet, eps: f64) -> Result<SymMatrix<f64>> {
    perturbed_laplacian(&laplacian(&path_graph(n)?), ports, eps)
}

fn exact_lambda_min(n: usize, ports: &PortSet, eps: f64) -> Result<f64> {
    lambda_min(&ptilde(n, ports, eps)?)
}

fn best_is(g: &Graph, want: &PortSet, metric: Metric, params: &MetricParams<f64>) -> Result<bool> {
    Ok(&select_best(g, want.k(), metric, params, false)?.best == want)
}

fn eigenvector_zero_at(l: &SymMatrix<f64>, index: usize, ports: &PortSet) -> Result<f64> {
    let v = sym_eigen(l)?.vector(index);
    Ok(ports.indices().iter().map(|&p| v[p - 1].abs()).fold(0.0, f64::max))
}

/// Runs the checks that apply to `P_n` (and to `k` ports when given) at
/// perturbation size `eps`.
pub fn run_path_checks(n: usize, k: Option<usize>, eps: f64) -> Result<Vec<CheckResult>> {
    if !(2..=super::MAX_ORDER).contains(&n) {
        return Err(Error::InvalidParameter { name: "n", reason: format!("{n} outside 2..={}", super::MAX_ORDER) });
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidParameter { name: "epsilon", reason: format!("{eps} must be positive") });
    }
    let kports = match k {
        Some(k) => {
            Some(pt::optimal_ports(n, k).map_err(|e| Error::InvalidParameter { name: "k", reason: e.to_string() })?)
        }
        None => None,
    };
    let g = path_graph(n)?;
    let l: SymMatrix<f64> = laplacian(&g);
    let params = MetricParams::default().with_epsilon(eps);
    let mut c = Checks(Vec::new());

    let mut worst = 0.0f64;
    for j in 1..=n {
        let (lam, v) = pt::path_eigenpair::<f64>(n, j)?;
        let lv = l.mul_vec(&v)?;
        let r = lv.iter().zip(&v).map(|(a, b)| (a - lam * b).powi(2)).sum::<f64>().sqrt();
        worst = worst.max(r);
    }
    c.push("eigenpair-residual", worst, 1e-9);

    let mut grounded = l.clone();
    grounded.add_to_diagonal(0, 1.0);
    let pseudo = (lambda_min(&grounded)? - pt::pseudo_toeplitz_lambda_min::<f64>(n)?).abs();
    c.push("end-grounded-lambda-min", pseudo, 1e-10);

    let slope_ports = kports.clone().unwrap_or_else(|| PortSet::new(n, [n.div_ceil(2)]).expect("n >= 2"));
    let h = 1e-5;
    let slope = (exact_lambda_min(n, &slope_ports, h)? - exact_lambda_min(n, &slope_ports, h / 2.0)?) / (h / 2.0);
    let want = slope_ports.k() as f64 / n as f64;
    c.push("first-order-slope", ((slope - want) / want).abs(), 1e-3);

    if n % 2 == 1 && n >= 3 {
        let centre = PortSet::new(n, [n.div_ceil(2)])?;
        let (_, v2) = pt::path_eigenpair::<f64>(n, 2)?;
        c.push("centre-fiedler-zero-closed-form", v2[centre.indices()[0] - 1].abs(), 1e-12);
        c.push("centre-fiedler-zero-eigensolve", eigenvector_zero_at(&l, 1, &centre)?, 1e-9);
        for m in [Metric::Mplse, Metric::MsubLe, Metric::MsupLe] {
            c.flag(format!("one-port-centre-{m}"), best_is(&g, &centre, m, &params)?);
        }
        let (mut series_err, mut identity_err) = (0.0f64, 0.0f64);
        for j in 1..=n {
            let s = PortSet::new(n, [j])?;
            let quad = pt::lambda_min_quadratic_1port(n, j, eps)?;
            series_err = series_err.max((exact_lambda_min(n, &s, eps)? - quad).abs());
            let trig = pt::lambda_min_series_kport(n, &s, eps)?;
            identity_err = identity_err.max(((trig - quad) / quad).abs());
        }
        c.push("one-port-series-vs-exact", series_err, 50.0 * eps.powi(3));
        c.push("one-port-trig-vs-quadratic", identity_err, 1e-10);
        if 2 * n <= super::MAX_ORDER {
            let (eq, inter) = doubled_path(n, eps)?;
            c.push("doubled-path-lambda-min-equal", eq, 1e-10);
            c.flag("doubled-path-interlacing", inter);
        }
    }

    if n.is_multiple_of(2) && (n / 2) % 2 == 1 && n >= 6 {
        let (p1, p2) = ((n + 2) / 4, (3 * n + 2) / 4);
        let pair = PortSet::new(n, [p1, p2])?;
        for m in [Metric::Mplse, Metric::MsubLe, Metric::MsupLe] {
            c.flag(format!("two-port-centres-{m}"), best_is(&g, &pair, m, &params)?);
        }
        c.push("two-port-eigenvector-zeros", eigenvector_zero_at(&l, 2, &pair)?, 1e-9);
        let mut err = 0.0f64;
        let mut table = vec![vec![0.0; n + 1]; n + 1];
        for j1 in 1..=n / 2 {
            for j2 in n / 2 + 1..=n {
                let exact = exact_lambda_min(n, &PortSet::new(n, [j1, j2])?, eps)?;
                table[j1][j2] = exact;
                if 2 * j1 < n && n < 2 * j2 {
                    err = err.max((exact - pt::lambda_min_quadratic_2port(n, j1, j2, eps)?).abs());
                }
            }
        }
        c.push("two-port-series-vs-exact", err, 50.0 * eps.powi(3));
        c.flag("two-port-monotone-away-from-centres", monotone_table(&table, n, p1, p2));
        let one = select_best(&g, 1, Metric::Mplse, &params, false)?.score;
        let two = select_best(&g, 2, Metric::Mplse, &params, false)?.score;
        c.flag("two-port-gain-exceeds-twice-one-port", two - 2.0 * one > 0.0);
    }

    if let (Some(k), Some(ports)) = (k, kports) {
        for m in [Metric::Mplse, Metric::MsubLe, Metric::MsupLe] {
            c.flag(format!("{k}-port-centres-{m}"), best_is(&g, &ports, m, &params)?);
        }
        let half = MetricParams::default().with_tau(0.5);
        let value = msub_score(&g, &ports, &half)?;
        let want = (k as f64 * std::f64::consts::PI / n as f64).cos();
        c.push(format!("{k}-port-grounded-perron-root"), (value - want).abs(), 1e-10);
        if k < n - 1 {
            c.push(format!("{k}-port-eigenvector-zeros"), eigenvector_zero_at(&l, k, &ports)?, 1e-9);
        }
    }
    Ok(c.0)
}

/// Compares `L_n + εe_pe_pᵀ` at the centre with the doubled path
/// perturbed at the two centres: the smallest eigenvalues must agree and
/// the spectra must interlace as `λ_i = μ_{2i−1}`.
fn doubled_path(n: usize, eps: f64) -> Result<(f64, bool)> {
    let p = n.div_ceil(2);
    let small = sym_eigenvalues(&ptilde(n, &PortSet::new(n, [p])?, eps)?)?;
    let big = sym_eigenvalues(&ptilde(2 * n, &PortSet::new(2 * n, [p, p + n])?, eps)?)?;
    let eq = (small[0] - big[0]).abs();
    let tol = 1e-9;
    let mut ok = true;
    for i in 0..n {
        ok &= (small[i] - big[2 * i]).abs() <= tol;
        ok &= big[2 * i] < big[2 * i + 1] - tol;
        if i + 1 < n {
            ok &= big[2 * i + 1] < small[i + 1] - tol;
        }
    }
    Ok((eq, ok))
}

fn monotone_table(t: &[Vec<f64>], n: usize, p1: usize, p2: usize) -> bool {
    let h = n / 2;
    let rows_ok = (h + 1..=n)
        .all(|j2| (1..p1).all(|j1| t[j1][j2] < t[j1 + 1][j2]) && (p1..h).all(|j1| t[j1][j2] > t[j1 + 1][j2]));
    let cols_ok = (1..=h)
        .all(|j1| (h + 1..p2).all(|j2| t[j1][j2] < t[j1][j2 + 1]) && (p2..n).all(|j2| t[j1][j2] > t[j1][j2 + 1]));
    rows_ok && cols_ok
}
