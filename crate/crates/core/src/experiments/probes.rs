//! Data emitters: smallest-eigenvalue profile along a path, gain of `k`
//! ports over `k` times one port, and the edge-insertion probe on two
//! perturbed paths.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{laplacian, path_graph, PortSet};
use crate::metrics::{mplse_score, perturbed_laplacian, select_best, Metric, MetricParams};
use crate::path_theory as pt;
use crate::spectral::lambda_min;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfileRow {
    pub p: f64,
    pub series: f64,
    /// Eigensolved value, at integer positions only.
    pub exact: Option<f64>,
}

/// Series value of one port at position `p` along `P_n`, on the integer
/// positions or on a real grid of spacing `step` (eigensolved values at
/// integer grid points).
pub fn lambda_profile(n: usize, eps: f64, step: Option<f64>) -> Result<Vec<ProfileRow>> {
    let g = path_graph(n)?;
    let params = MetricParams::default().with_epsilon(eps);
    params.validate()?;
    let grid: Vec<f64> = match step {
        None => (1..=n).map(|p| p as f64).collect(),
        Some(h) if h > 0.0 && h.is_finite() => {
            let count = ((n - 1) as f64 / h + 1e-9).floor() as usize;
            (0..=count).map(|i| 1.0 + i as f64 * h).collect()
        }
        Some(h) => return Err(Error::InvalidParameter { name: "step", reason: format!("{h} must be positive") }),
    };
    grid.into_iter()
        .map(|p| {
            let series = pt::series_kport_real(n, &[p], eps)?;
            let r = p.round();
            let exact = if (p - r).abs() < 1e-9 {
                Some(mplse_score(&g, &PortSet::new(n, [r as usize])?, &params)?)
            } else {
                None
            };
            Ok(ProfileRow { p, series, exact })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexityRow {
    pub k: usize,
    pub best: PortSet,
    pub lambda_star: f64,
    pub k_times_single: f64,
    pub ratio: f64,
}

/// Optimal `λ_min` for each `k` against `k` times the one-port optimum.
/// Rows with `k ≥ 2` whose `k` does not split `n` into odd segments are
/// skipped and returned in the second list.
pub fn convexity_table(n: usize, k_list: &[usize], eps: f64) -> Result<(Vec<ConvexityRow>, Vec<usize>)> {
    let g = path_graph(n)?;
    let params = MetricParams::default().with_epsilon(eps);
    let single = select_best(&g, 1, Metric::Mplse, &params, false)?.score;
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for &k in k_list {
        if k == 0 || k >= n {
            return Err(Error::InvalidParameter { name: "k", reason: format!("{k} outside 1..{n}") });
        }
        if k > 1 && pt::optimal_ports(n, k).is_err() {
            skipped.push(k);
            continue;
        }
        let r = select_best(&g, k, Metric::Mplse, &params, false)?;
        let base = k as f64 * single;
        rows.push(ConvexityRow { k, best: r.best, lambda_star: r.score, k_times_single: base, ratio: r.score / base });
    }
    Ok((rows, skipped))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BridgeDeviation {
    /// Endpoint in the first copy.
    pub u: usize,
    /// Endpoint in the second copy (1-based within that copy).
    pub v: usize,
    pub lambda_min: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureReport {
    pub n: usize,
    pub epsilon: f64,
    pub single: f64,
    pub union_deviation: f64,
    pub bridges: Vec<BridgeDeviation>,
    pub max_abs_deviation: f64,
    pub worst: (usize, usize),
}

/// Two copies of `P_n` perturbed at their centres, joined by one edge
/// `(u, n + v)` for every `u, v`: deviation of the smallest eigenvalue from
/// that of a single perturbed copy.
pub fn conjecture_probe(n: usize, eps: f64) -> Result<ConjectureReport> {
    if n.is_multiple_of(2) || n < 3 || 2 * n > super::MAX_ORDER {
        return Err(Error::InvalidParameter { name: "n", reason: format!("{n} must be odd with 3 <= n <= 10") });
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidParameter { name: "epsilon", reason: format!("{eps} must be positive") });
    }
    let p = n.div_ceil(2);
    let path = path_graph(n)?;
    let single = lambda_min(&perturbed_laplacian(&laplacian(&path), &PortSet::new(n, [p])?, eps)?)?;
    let union = path.disjoint_union(&path);
    let ports = PortSet::new(2 * n, [p, p + n])?;
    let lam =
        |g: &crate::graph::Graph| -> Result<f64> { lambda_min(&perturbed_laplacian(&laplacian(g), &ports, eps)?) };
    let union_deviation = lam(&union)? - single;
    let mut bridges = Vec::with_capacity(n * n);
    for u in 1..=n {
        for v in 1..=n {
            let l = lam(&union.with_edge(u, v + n)?)?;
            bridges.push(BridgeDeviation { u, v, lambda_min: l, deviation: l - single });
        }
    }
    let worst = bridges.iter().max_by(|a, b| a.deviation.abs().total_cmp(&b.deviation.abs())).expect("n >= 3");
    Ok(ConjectureReport {
        n,
        epsilon: eps,
        single,
        union_deviation,
        max_abs_deviation: worst.deviation.abs(),
        worst: (worst.u, worst.v),
        bridges,
    })
}
