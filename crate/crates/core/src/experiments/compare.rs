//! Agreement of every metric with the perturbed-Laplacian choice over
//! families of graphs.

use rayon::prelude::*;
use serde::Serialize;

use super::{trial_rng, DEFAULT_EDGE_PROB};
use crate::error::{Error, Result};
use crate::graph::{path_graph, random_connected_graph_with, random_tree_with, Graph, PortSet};
use crate::metrics::{select_best, AgreementCount, Metric, MetricParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphClass {
    Path,
    Tree,
    General,
}

impl GraphClass {
    pub fn name(self) -> &'static str {
        match self {
            GraphClass::Path => "path",
            GraphClass::Tree => "tree",
            GraphClass::General => "general",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RowPlan {
    pub class: GraphClass,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareConfig {
    pub trials: usize,
    pub seed: u64,
    pub params: MetricParams<f64>,
    pub k_list: Vec<usize>,
    pub rows: Vec<RowPlan>,
    pub edge_prob: f64,
}

impl Default for CompareConfig {
    fn default() -> Self {
        let row = |class, n| RowPlan { class, n };
        Self {
            trials: 100,
            seed: 2024,
            params: MetricParams::default(),
            k_list: vec![1, 2, 3],
            rows: vec![
                row(GraphClass::Path, 11),
                row(GraphClass::Tree, 7),
                row(GraphClass::Tree, 9),
                row(GraphClass::General, 7),
                row(GraphClass::General, 9),
            ],
            edge_prob: DEFAULT_EDGE_PROB,
        }
    }
}

/// Agreement of one metric with the reference, pooled over `k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricAgreement {
    pub metric: Metric,
    pub pooled: AgreementCount,
    pub per_k: Vec<AgreementCount>,
}

impl MetricAgreement {
    pub fn percent(&self) -> Option<f64> {
        self.pooled.percent()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub class: GraphClass,
    pub n: usize,
    pub instances: usize,
    pub metrics: Vec<MetricAgreement>,
}

impl ComparisonRow {
    pub fn agreement(&self, metric: Metric) -> Option<&MetricAgreement> {
        self.metrics.iter().find(|m| m.metric == metric)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub config: CompareConfig,
    pub rows: Vec<ComparisonRow>,
}

/// Best sets of every metric for one graph and `k`; `None` marks an
/// undefined heuristic.
fn best_sets(g: &Graph, k: usize, params: &MetricParams<f64>) -> Result<Vec<Option<PortSet>>> {
    Metric::ALL
        .iter()
        .map(|&m| match select_best(g, k, m, params, false) {
            Ok(r) => Ok(Some(r.best)),
            Err(Error::UndefinedHeuristic(_)) => Ok(None),
            Err(e) => Err(e),
        })
        .collect()
}

fn instances(target: RowPlan, row_index: usize, cfg: &CompareConfig) -> Result<Vec<Graph>> {
    match target.class {
        GraphClass::Path => Ok(vec![path_graph(target.n)?]),
        GraphClass::Tree => (0..cfg.trials)
            .map(|t| random_tree_with(target.n, &mut trial_rng(cfg.seed, row_index as u64, t as u64)))
            .collect(),
        GraphClass::General => (0..cfg.trials)
            .map(|t| {
                random_connected_graph_with(
                    target.n,
                    cfg.edge_prob,
                    &mut trial_rng(cfg.seed, row_index as u64, t as u64),
                )
            })
            .collect(),
    }
}

/// Runs every row: each instance and each `k < n` is solved under all six
/// metrics and compared with the perturbed-Laplacian optimum.
///
/// The MSUP_LE column must agree on every instance; a disagreement is
/// reported as [`Error::InvariantViolation`].
pub fn run_comparison(cfg: &CompareConfig) -> Result<ComparisonReport> {
    if cfg.trials == 0 {
        return Err(Error::InvalidParameter { name: "trials", reason: "must be at least 1".into() });
    }
    cfg.params.validate()?;
    if cfg.k_list.is_empty() || cfg.k_list.contains(&0) {
        return Err(Error::InvalidParameter { name: "k", reason: "k values must be positive".into() });
    }
    let mut rows = Vec::with_capacity(cfg.rows.len());
    for (ri, &target) in cfg.rows.iter().enumerate() {
        let graphs = instances(target, ri, cfg)?;
        let ks: Vec<usize> = cfg.k_list.iter().copied().filter(|&k| k < target.n).collect();
        let outcomes: Vec<Vec<Vec<Option<PortSet>>>> = graphs
            .par_iter()
            .map(|g| ks.iter().map(|&k| best_sets(g, k, &cfg.params)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let metrics = Metric::ALL
            .iter()
            .enumerate()
            .map(|(mi, &metric)| {
                let mut per_k: Vec<AgreementCount> =
                    ks.iter().map(|&k| AgreementCount { k, ..Default::default() }).collect();
                for inst in &outcomes {
                    for (count, sets) in per_k.iter_mut().zip(inst) {
                        match (&sets[0], &sets[mi]) {
                            (Some(reference), Some(other)) => {
                                count.total += 1;
                                count.matches += usize::from(reference == other);
                            }
                            _ => count.skipped += 1,
                        }
                    }
                }
                let pooled = per_k.iter().fold(AgreementCount::default(), |acc, c| AgreementCount {
                    k: 0,
                    matches: acc.matches + c.matches,
                    total: acc.total + c.total,
                    skipped: acc.skipped + c.skipped,
                });
                MetricAgreement { metric, pooled, per_k }
            })
            .collect::<Vec<_>>();
        let row = ComparisonRow { class: target.class, n: target.n, instances: graphs.len(), metrics };
        let msup = row.agreement(Metric::MsupLe).expect("all metrics present");
        if msup.pooled.matches != msup.pooled.total {
            return Err(Error::InvariantViolation(format!(
                "MSUP_LE agreed on {}/{} {} {} cases",
                msup.pooled.matches,
                msup.pooled.total,
                target.class.name(),
                target.n
            )));
        }
        rows.push(row);
    }
    Ok(ComparisonReport { config: cfg.clone(), rows })
}
