//! The six k-center metrics and the exhaustive subset search.
//!
//! Spectral metrics perturb the Laplacian at the port nodes:
//! * `Mplse` maximises `λ_min(L + εP_S)`, with `P_S = Σ_{j∈S} e_j e_jᵀ`;
//! * `MsubLe` minimises `λ_max` of `Z = I − τL` with rows and columns `S`
//!   deleted;
//! * `MsupLe` minimises `λ_max(I − τ(L + εP_S))`, the stochastic matrix of
//!   the perturbed Laplacian.
//!
//! The heuristics are the eigenvector rule (`Σ_{j∈S} |v_{k+1}(j)|`, lower is
//! better), the charging energy (lower is better) and the extractable
//! energy (higher is better).
//!
//! Scores are compared through normalised keys (larger is better) so that a
//! single relative tolerance separates genuine ties from distinct values at
//! every ε and τ: the raw scores of the perturbation metrics differ only at
//! order ε².

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{check_tau, laplacian, Graph, PortSet};
use crate::linalg::SymMatrix;
use crate::scalar::Scalar;
use crate::spectral::{are_charging_energy, gramian_extraction_energy, lambda_max, lambda_min, sym_eigen};

/// Default bound on the number of subsets scored by [`select_best`].
pub const ENUMERATION_CAP: u128 = 2_000_000;
/// Relative tolerance of the tie rule.
pub const TIE_TOL: f64 = 1e-9;
/// Minimum gap around `λ_{k+1}` for the eigenvector rule.
pub const EIGVEC_GAP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Mplse,
    #[serde(rename = "msub")]
    MsubLe,
    #[serde(rename = "msup")]
    MsupLe,
    Eigvec,
    Are,
    Gramian,
}

impl Metric {
    pub const ALL: [Metric; 6] =
        [Metric::Mplse, Metric::MsubLe, Metric::MsupLe, Metric::Eigvec, Metric::Are, Metric::Gramian];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Mplse => "mplse",
            Metric::MsubLe => "msub",
            Metric::MsupLe => "msup",
            Metric::Eigvec => "eigvec",
            Metric::Are => "are",
            Metric::Gramian => "gramian",
        }
    }

    /// True if larger raw scores are better.
    pub fn maximizes(self) -> bool {
        matches!(self, Metric::Mplse | Metric::Gramian)
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameter { name: "metric", reason: format!("unknown metric '{s}'") })
    }
}

/// Perturbation size `epsilon`, stochastic step `tau` (`None` selects
/// `1/(Δ+1)` per graph) and charging regulariser `rho`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricParams<T> {
    pub epsilon: T,
    pub tau: Option<T>,
    pub rho: T,
}

impl<T: Scalar> Default for MetricParams<T> {
    fn default() -> Self {
        Self { epsilon: T::of(0.01), tau: None, rho: T::of(1e-6) }
    }
}

impl<T: Scalar> MetricParams<T> {
    pub fn with_epsilon(mut self, epsilon: T) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_tau(mut self, tau: T) -> Self {
        self.tau = Some(tau);
        self
    }

    pub fn with_rho(mut self, rho: T) -> Self {
        self.rho = rho;
        self
    }

    /// `tau` for this graph, validated against `0 < τ ≤ 1/Δ`.
    pub fn tau_for(&self, g: &Graph) -> Result<T> {
        let tau = self.tau.unwrap_or_else(|| T::one() / T::of_usize(g.max_degree() + 1));
        check_tau(g, tau)?;
        Ok(tau)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > T::zero() && self.epsilon.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "epsilon",
                reason: format!("{} must be positive", self.epsilon),
            });
        }
        if !(self.rho > T::zero() && self.rho.is_finite()) {
            return Err(Error::InvalidParameter { name: "rho", reason: format!("{} must be positive", self.rho) });
        }
        Ok(())
    }
}

fn check_ports<T>(m: &SymMatrix<T>, s: &PortSet) -> Result<()> {
    if s.max_index() > m.n() {
        return Err(Error::IndexOutOfRange { index: s.max_index(), n: m.n() });
    }
    Ok(())
}

/// `L + ε Σ_{j∈S} e_j e_jᵀ`.
pub fn perturbed_laplacian<T: Scalar>(l: &SymMatrix<T>, s: &PortSet, eps: T) -> Result<SymMatrix<T>> {
    check_ports(l, s)?;
    let mut out = l.clone();
    for &j in s.indices() {
        out.add_to_diagonal(j - 1, eps);
    }
    Ok(out)
}

/// Scoring context for one graph and metric; caches the matrices shared by
/// all subsets.
pub struct Scorer<T> {
    metric: Metric,
    n: usize,
    l: SymMatrix<T>,
    tau: T,
    params: MetricParams<T>,
    z: Option<SymMatrix<T>>,
    eigvec_abs: Option<(usize, Vec<T>)>,
}

impl<T: Scalar> Scorer<T> {
    pub fn new(g: &Graph, metric: Metric, params: &MetricParams<T>) -> Result<Self> {
        params.validate()?;
        if !g.is_connected() {
            return Err(Error::InvalidParameter { name: "graph", reason: "metrics need a connected graph".into() });
        }
        let tau = params.tau_for(g)?;
        let l: SymMatrix<T> = laplacian(g);
        let z =
            (metric == Metric::MsubLe).then(|| SymMatrix::identity(g.n()).combine(T::one(), &l, -tau)).transpose()?;
        Ok(Self { metric, n: g.n(), l, tau, params: *params, z, eigvec_abs: None })
    }

    /// Prepares the eigenvector rule for subsets of size `k`.
    fn with_eigvec(mut self, k: usize) -> Result<Self> {
        if self.metric == Metric::Eigvec {
            self.eigvec_abs = Some((k, eigvec_magnitudes(&self.l, k)?));
        }
        Ok(self)
    }

    pub fn tau(&self) -> T {
        self.tau
    }

    pub fn laplacian(&self) -> &SymMatrix<T> {
        &self.l
    }

    /// Raw score of a port set.
    pub fn score(&self, s: &PortSet) -> Result<T> {
        check_ports(&self.l, s)?;
        let p = &self.params;
        match self.metric {
            Metric::Mplse => lambda_min(&perturbed_laplacian(&self.l, s, p.epsilon)?),
            Metric::MsupLe => {
                let lt = perturbed_laplacian(&self.l, s, p.epsilon)?;
                lambda_max(&SymMatrix::identity(self.n).combine(T::one(), &lt, -self.tau)?)
            }
            Metric::MsubLe => {
                let keep: Vec<usize> = (1..=self.n).filter(|j| !s.contains(*j)).map(|j| j - 1).collect();
                let z = self.z.as_ref().expect("built for MsubLe");
                lambda_max(&z.principal_submatrix(&keep))
            }
            Metric::Eigvec => {
                let abs = match &self.eigvec_abs {
                    Some((k, v)) if *k == s.k() => v.clone(),
                    _ => eigvec_magnitudes(&self.l, s.k())?,
                };
                Ok(s.indices().iter().map(|&j| abs[j - 1]).sum())
            }
            Metric::Are => are_charging_energy(&self.l, s, p.rho),
            Metric::Gramian => gramian_extraction_energy(&self.l, s),
        }
    }

    /// Comparison key (larger is better), normalised by the scale of the
    /// metric's variation.
    pub fn key(&self, score: T) -> T {
        let eps = self.params.epsilon;
        match self.metric {
            Metric::Mplse => score / eps,
            Metric::MsupLe => (T::one() - score) / (self.tau * eps),
            Metric::MsubLe => (T::one() - score) / self.tau,
            Metric::Eigvec | Metric::Are => -score,
            Metric::Gramian => score,
        }
    }
}

/// `|v_{k+1}(j)|` for every node, requiring `λ_{k+1}` to be simple.
fn eigvec_magnitudes<T: Scalar>(l: &SymMatrix<T>, k: usize) -> Result<Vec<T>> {
    let n = l.n();
    if k == 0 || k >= n {
        return Err(Error::InvalidParameter { name: "k", reason: format!("{k} outside 1..{n}") });
    }
    let e = sym_eigen(l)?;
    let lam = e.values[k];
    let gap_below = lam - e.values[k - 1];
    let gap_above = e.values.get(k + 1).map_or(T::infinity(), |&v| v - lam);
    let gap = gap_below.min(gap_above);
    if gap <= T::tol(EIGVEC_GAP_TOL) {
        return Err(Error::UndefinedHeuristic(format!(
            "eigenvalue {} of the Laplacian is repeated (gap {:e})",
            k + 1,
            gap.to_f64_lossy()
        )));
    }
    Ok(e.vector(k).into_iter().map(T::abs).collect())
}

/// `λ_min(L + εP_S)`, in `(0, kε/n]` for connected graphs.
pub fn mplse_score<T: Scalar>(g: &Graph, s: &PortSet, params: &MetricParams<T>) -> Result<T> {
    Scorer::new(g, Metric::Mplse, params)?.score(s)
}

/// `λ_max` of `Z = I − τL` with rows and columns `S` removed; equals
/// `1 − τ λ_min` of the grounded Laplacian.
pub fn msub_score<T: Scalar>(g: &Graph, s: &PortSet, params: &MetricParams<T>) -> Result<T> {
    Scorer::new(g, Metric::MsubLe, params)?.score(s)
}

/// `λ_max(I − τ(L + εP_S)) = 1 − τ·mplse_score`, in `[1 − τkε/n, 1)`.
pub fn msup_score<T: Scalar>(g: &Graph, s: &PortSet, params: &MetricParams<T>) -> Result<T> {
    Scorer::new(g, Metric::MsupLe, params)?.score(s)
}

/// `Σ_{j∈S} |v_{k+1}(j)|` with `k = |S|`.
pub fn eigvec_heuristic_score<T: Scalar>(g: &Graph, s: &PortSet) -> Result<T> {
    Scorer::new(g, Metric::Eigvec, &MetricParams::default())?.score(s)
}

/// Score of any metric.
pub fn score<T: Scalar>(g: &Graph, s: &PortSet, metric: Metric, params: &MetricParams<T>) -> Result<T> {
    Scorer::new(g, metric, params)?.score(s)
}

/// Tie test `|a − b| ≤ tol·max(1, |a|, |b|)`.
pub fn ties<T: Scalar>(a: T, b: T) -> bool {
    (a - b).abs() <= T::tol(TIE_TOL) * T::one().max(a.abs()).max(b.abs())
}

/// Outcome of an exhaustive search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelectionResult<T> {
    pub metric: Metric,
    pub k: usize,
    pub epsilon: T,
    pub tau: T,
    pub rho: T,
    /// Lexicographically smallest optimal set.
    pub best: PortSet,
    pub score: T,
    /// Every set whose key ties with the optimum, in lexicographic order.
    pub ties: Vec<PortSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<(PortSet, T)>>,
}

/// `C(n, k)` without overflow for the sizes of interest.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// Scores every `k`-subset of the nodes and returns the optimum under the
/// metric's direction, with ties collected by the relative tie rule.
pub fn select_best<T: Scalar>(
    g: &Graph,
    k: usize,
    metric: Metric,
    params: &MetricParams<T>,
    keep_table: bool,
) -> Result<SelectionResult<T>> {
    select_best_capped(g, k, metric, params, keep_table, ENUMERATION_CAP)
}

pub fn select_best_capped<T: Scalar>(
    g: &Graph,
    k: usize,
    metric: Metric,
    params: &MetricParams<T>,
    keep_table: bool,
    cap: u128,
) -> Result<SelectionResult<T>> {
    let n = g.n();
    if k == 0 || k >= n {
        return Err(Error::InvalidParameter { name: "k", reason: format!("{k} outside 1..{n}") });
    }
    let count = binomial(n, k);
    if count > cap {
        return Err(Error::SizeCap { count, cap });
    }
    let scorer = Scorer::new(g, metric, params)?.with_eigvec(k)?;
    let subsets: Vec<PortSet> = (1..=n).combinations(k).map(PortSet::from_sorted_unchecked).collect();
    let scores: Vec<T> = subsets.par_iter().map(|s| scorer.score(s)).collect::<Result<_>>()?;
    let keys: Vec<T> = scores.iter().map(|&s| scorer.key(s)).collect();
    if keys.iter().any(|k| !k.is_finite()) {
        return Err(Error::InvalidParameter { name: "score", reason: "non-finite score".into() });
    }
    let top = keys.iter().copied().fold(T::neg_infinity(), T::max);
    let tie_idx: Vec<usize> = (0..keys.len()).filter(|&i| ties(keys[i], top)).collect();
    let first = tie_idx[0];
    Ok(SelectionResult {
        metric,
        k,
        epsilon: params.epsilon,
        tau: scorer.tau(),
        rho: params.rho,
        best: subsets[first].clone(),
        score: scores[first],
        ties: tie_idx.iter().map(|&i| subsets[i].clone()).collect(),
        table: keep_table.then(|| subsets.into_iter().zip(scores).collect()),
    })
}

/// Agreement counts for one subset size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct AgreementCount {
    pub k: usize,
    pub matches: usize,
    pub total: usize,
    /// Trials excluded because a selector was undefined.
    pub skipped: usize,
}

impl AgreementCount {
    pub fn percent(&self) -> Option<f64> {
        (self.total > 0).then(|| 100.0 * self.matches as f64 / self.total as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AgreementReport {
    pub per_k: Vec<AgreementCount>,
    pub pooled: AgreementCount,
}

/// Selector returning the best `k`-set of a metric.
pub fn metric_selector<T: Scalar>(
    metric: Metric,
    params: MetricParams<T>,
) -> impl Fn(&Graph, usize) -> Result<PortSet> + Sync {
    move |g, k| select_best(g, k, metric, &params, false).map(|r| r.best)
}

/// Fraction of `(instance, k)` pairs on which both selectors return the same
/// set. Trials where either selector reports an undefined heuristic are
/// skipped and counted; other errors propagate.
pub fn agreement_rate<A, B>(a: A, b: B, instances: &[Graph], k_list: &[usize]) -> Result<AgreementReport>
where
    A: Fn(&Graph, usize) -> Result<PortSet> + Sync,
    B: Fn(&Graph, usize) -> Result<PortSet> + Sync,
{
    let outcomes: Vec<Vec<Option<bool>>> = instances
        .par_iter()
        .map(|g| {
            k_list
                .iter()
                .map(|&k| match (a(g, k), b(g, k)) {
                    (Ok(x), Ok(y)) => Ok(Some(x == y)),
                    (Err(Error::UndefinedHeuristic(_)), _) | (_, Err(Error::UndefinedHeuristic(_))) => Ok(None),
                    (Err(e), _) | (_, Err(e)) => Err(e),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut per_k: Vec<AgreementCount> = k_list.iter().map(|&k| AgreementCount { k, ..Default::default() }).collect();
    for row in &outcomes {
        for (c, o) in per_k.iter_mut().zip(row) {
            match o {
                Some(m) => {
                    c.total += 1;
                    c.matches += usize::from(*m);
                }
                None => c.skipped += 1,
            }
        }
    }
    let pooled = per_k.iter().fold(AgreementCount::default(), |acc, c| AgreementCount {
        k: 0,
        matches: acc.matches + c.matches,
        total: acc.total + c.total,
        skipped: acc.skipped + c.skipped,
    });
    Ok(AgreementReport { per_k, pooled })
}
