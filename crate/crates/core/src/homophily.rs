// SPDX-License-Identifier: Apache-2.0
//! Node homophily for classification and regression labels, on k-hop
//! neighborhoods of discrete graphs and on 1-hop weighted neighborhoods.
//!
//! Every metric is a per-node score in `[0, 1]` averaged over an evaluation
//! node set. Neighborhoods always range over the full graph; `restrict` only
//! selects which nodes are averaged. Nodes whose neighborhood is empty (or
//! carries zero total weight) have no score and are counted in `num_excluded`.

use rayon::prelude::*;

use crate::error::{GamError, Result};
use crate::graph::{NodeId, WeightedGraph};
use crate::labels::{NodeLabels, NodeSet, RegressionLabels};
use crate::neighborhood::Neighborhoods;
use crate::stats::{mean_std, neumaier_sum};

/// Per-node scores and their summary over the evaluated nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct HomophilyResult {
    /// Evaluated nodes, ascending.
    pub nodes: Vec<NodeId>,
    /// Score of `nodes[i]`, `None` when that node was excluded.
    pub per_node: Vec<Option<f64>>,
    pub mean: f64,
    /// Population standard deviation of the included scores.
    pub std: f64,
    pub num_excluded: usize,
}

impl HomophilyResult {
    fn from_scores(nodes: Vec<NodeId>, per_node: Vec<Option<f64>>) -> Result<Self> {
        let included: Vec<f64> = per_node.iter().flatten().copied().collect();
        let num_excluded = per_node.len() - included.len();
        let (mean, std) = mean_std(&included).ok_or_else(|| {
            GamError::input(format!("all {} evaluated nodes have empty neighborhoods", per_node.len()))
        })?;
        Ok(Self { nodes, per_node, mean, std, num_excluded })
    }

    /// Score of node `v`, if it was evaluated and included.
    pub fn score_of(&self, v: NodeId) -> Option<f64> {
        let i = self.nodes.binary_search(&v).ok()?;
        self.per_node[i]
    }
}

fn resolve_subset(restrict: Option<&NodeSet>, num_nodes: usize) -> Result<NodeSet> {
    match restrict {
        Some(set) if set.universe() != num_nodes => {
            Err(GamError::input(format!("node subset drawn from {} nodes, graph has {num_nodes}", set.universe())))
        }
        Some(set) => Ok(set.clone()),
        None if num_nodes == 0 => Err(GamError::input("graph has no nodes")),
        None => Ok(NodeSet::all(num_nodes)),
    }
}

fn normalized_targets(labels: &NodeLabels) -> Result<&RegressionLabels> {
    let reg = labels.as_regression()?;
    if let Some((v, y)) = reg.normalized().iter().enumerate().find(|(_, y)| !(0.0..=1.0).contains(*y)) {
        return Err(GamError::input(format!("regression label of node {v} is {y}, outside [0, 1]; normalize first")));
    }
    Ok(reg)
}

/// Score every node of the subset in parallel; collection keeps node order.
fn score_khop<N, F>(nbh: &N, subset: NodeSet, score: F) -> Result<HomophilyResult>
where
    N: Neighborhoods,
    F: Fn(NodeId, &[NodeId]) -> Option<f64> + Sync,
{
    let per_node: Vec<Option<f64>> = subset
        .nodes()
        .par_iter()
        .map_init(
            || nbh.scratch(),
            |scratch, &v| {
                let members = nbh.neighbors(v, scratch);
                if members.is_empty() {
                    None
                } else {
                    score(v, members)
                }
            },
        )
        .collect();
    HomophilyResult::from_scores(subset.nodes().to_vec(), per_node)
}

fn score_weighted<F>(subset: NodeSet, score: F) -> Result<HomophilyResult>
where
    F: Fn(NodeId) -> Option<f64> + Sync,
{
    let per_node: Vec<Option<f64>> = subset.nodes().par_iter().map(|&v| score(v)).collect();
    HomophilyResult::from_scores(subset.nodes().to_vec(), per_node)
}

/// Fraction of each node's k-hop neighbors that share its class.
pub fn node_homophily<N: Neighborhoods>(
    labels: &NodeLabels,
    nbh: &N,
    restrict: Option<&NodeSet>,
) -> Result<HomophilyResult> {
    let classes = labels.as_classes()?;
    labels.check_len(nbh.num_nodes())?;
    let subset = resolve_subset(restrict, nbh.num_nodes())?;
    score_khop(nbh, subset, |v, members| {
        let own = classes.class_of(v);
        let same = members.iter().filter(|&&u| classes.class_of(u) == own).count();
        Some(same as f64 / members.len() as f64)
    })
}

/// One minus the mean absolute normalized-label distance to the k-hop neighbors.
pub fn regression_homophily<N: Neighborhoods>(
    labels: &NodeLabels,
    nbh: &N,
    restrict: Option<&NodeSet>,
) -> Result<HomophilyResult> {
    let y = normalized_targets(labels)?.normalized();
    labels.check_len(nbh.num_nodes())?;
    let subset = resolve_subset(restrict, nbh.num_nodes())?;
    score_khop(nbh, subset, |v, members| {
        let yv = y[v as usize];
        let dist = neumaier_sum(members.iter().map(|&u| (yv - y[u as usize]).abs()));
        Some((1.0 - dist / members.len() as f64).clamp(0.0, 1.0))
    })
}

/// Share of each node's incident edge weight that leads to same-class neighbors.
pub fn continuous_homophily(
    graph: &WeightedGraph,
    labels: &NodeLabels,
    restrict: Option<&NodeSet>,
) -> Result<HomophilyResult> {
    let classes = labels.as_classes()?;
    labels.check_len(graph.num_nodes())?;
    let subset = resolve_subset(restrict, graph.num_nodes())?;
    score_weighted(subset, |v| {
        let own = classes.class_of(v);
        let total = neumaier_sum(graph.neighbors(v).map(|(_, w)| w));
        if total <= 0.0 {
            return None;
        }
        let same = neumaier_sum(graph.neighbors(v).filter(|&(u, _)| classes.class_of(u) == own).map(|(_, w)| w));
        Some(same / total)
    })
}

/// One minus the weight-averaged normalized-label distance to the 1-hop neighbors.
pub fn continuous_regression_homophily(
    graph: &WeightedGraph,
    labels: &NodeLabels,
    restrict: Option<&NodeSet>,
) -> Result<HomophilyResult> {
    let y = normalized_targets(labels)?.normalized();
    labels.check_len(graph.num_nodes())?;
    let subset = resolve_subset(restrict, graph.num_nodes())?;
    score_weighted(subset, |v| {
        let yv = y[v as usize];
        let total = neumaier_sum(graph.neighbors(v).map(|(_, w)| w));
        if total <= 0.0 {
            return None;
        }
        let dist = neumaier_sum(graph.neighbors(v).map(|(u, w)| w * (yv - y[u as usize]).abs()));
        Some((1.0 - dist / total).clamp(0.0, 1.0))
    })
}
