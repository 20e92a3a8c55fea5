//! Experiment drivers behind the command-line tool: graph sources, the
//! metric comparison study, path-graph checks, eigenvalue profiles,
//! multi-port gains and the edge-insertion probe.
//!
//! Everything here runs in `f64` and is deterministic for a given
//! configuration and seed, whatever the thread schedule.

mod checks;
mod compare;
mod probes;

pub use checks::{run_path_checks, CheckResult};
pub use compare::{
    run_comparison, CompareConfig, ComparisonReport, ComparisonRow, GraphClass, MetricAgreement, RowPlan,
};
pub use probes::{
    conjecture_probe, convexity_table, lambda_profile, BridgeDeviation, ConjectureReport, ConvexityRow, ProfileRow,
};

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{self, Graph};

/// Largest graph accepted for exhaustive enumeration by the drivers.
pub const MAX_ORDER: usize = 20;
/// Edge probability of the random graphs with cycles.
pub const DEFAULT_EDGE_PROB: f64 = 0.4;

/// Where a graph comes from: `path:n`, `fig1`, `random-tree:n`,
/// `random-graph:n,p`, or an edge-list file path.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    Path(usize),
    Figure1,
    RandomTree(usize),
    RandomGraph(usize, f64),
    File(String),
}

impl FromStr for GraphSource {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: String| Error::InvalidParameter { name: "graph", reason };
        let num = |v: &str| v.trim().parse::<usize>().map_err(|_| bad(format!("bad node count '{v}'")));
        if s == "fig1" {
            return Ok(GraphSource::Figure1);
        }
        if let Some(rest) = s.strip_prefix("path:") {
            return Ok(GraphSource::Path(num(rest)?));
        }
        if let Some(rest) = s.strip_prefix("random-tree:") {
            return Ok(GraphSource::RandomTree(num(rest)?));
        }
        if let Some(rest) = s.strip_prefix("random-graph:") {
            let (n, p) = rest.split_once(',').ok_or_else(|| bad(format!("expected n,p in '{rest}'")))?;
            let p: f64 = p.trim().parse().map_err(|_| bad(format!("bad probability '{p}'")))?;
            return Ok(GraphSource::RandomGraph(num(n)?, p));
        }
        if s.is_empty() {
            return Err(bad("empty graph source".into()));
        }
        Ok(GraphSource::File(s.to_string()))
    }
}

impl fmt::Display for GraphSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSource::Path(n) => write!(f, "path:{n}"),
            GraphSource::Figure1 => write!(f, "fig1"),
            GraphSource::RandomTree(n) => write!(f, "random-tree:{n}"),
            GraphSource::RandomGraph(n, p) => write!(f, "random-graph:{n},{p}"),
            GraphSource::File(p) => write!(f, "{p}"),
        }
    }
}

impl GraphSource {
    /// Builds the graph; random sources draw from `seed`. The result must be
    /// connected and within [`MAX_ORDER`].
    pub fn build(&self, seed: u64) -> Result<Graph> {
        let g = match self {
            GraphSource::Path(n) => graph::path_graph(*n)?,
            GraphSource::Figure1 => graph::figure1_graph(),
            GraphSource::RandomTree(n) => graph::random_tree(*n, seed)?,
            GraphSource::RandomGraph(n, p) => graph::random_connected_graph(*n, *p, seed)?,
            GraphSource::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidParameter {
                    name: "graph",
                    reason: format!("cannot read '{path}': {e}"),
                })?;
                graph::parse_edge_list(&text)?
            }
        };
        if g.n() > MAX_ORDER {
            return Err(Error::InvalidParameter {
                name: "graph",
                reason: format!("{} nodes exceeds the limit of {MAX_ORDER}", g.n()),
            });
        }
        if !g.is_connected() {
            return Err(Error::InvalidParameter { name: "graph", reason: "graph is not connected".into() });
        }
        Ok(g)
    }
}

/// Independent generator for trial `index` of stream `stream`.
pub(crate) fn trial_rng(seed: u64, stream: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((stream << 32) | index);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_sources() {
        assert_eq!("path:11".parse::<GraphSource>().unwrap(), GraphSource::Path(11));
        assert_eq!("fig1".parse::<GraphSource>().unwrap(), GraphSource::Figure1);
        assert_eq!("random-tree:7".parse::<GraphSource>().unwrap(), GraphSource::RandomTree(7));
        assert_eq!("random-graph:7,0.4".parse::<GraphSource>().unwrap(), GraphSource::RandomGraph(7, 0.4));
        assert!("path:x".parse::<GraphSource>().is_err());
        assert!("random-graph:7".parse::<GraphSource>().is_err());
        for s in ["path:11", "fig1", "random-tree:7", "random-graph:7,0.4"] {
            assert_eq!(s.parse::<GraphSource>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn build_limits() {
        assert!(GraphSource::Path(21).build(0).is_err());
        assert_eq!(GraphSource::RandomTree(9).build(5).unwrap(), GraphSource::RandomTree(9).build(5).unwrap());
        assert!(GraphSource::File("/nonexistent/graph.txt".into()).build(0).is_err());
    }
}
