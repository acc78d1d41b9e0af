// SPDX-License-Identifier: Apache-2.0
//! Analytic edge-weight gradients of the weighted homophily metrics and a
//! central-difference checker for them.
//!
//! Both metrics average a per-node ratio `r_v = S_v / T_v` over the `m`
//! nodes with positive total weight `T_v`. For an edge `{u, v}` with weight
//! `w`, only `r_u` and `r_v` depend on `w`, and
//! `d r_v / d w = (s_uv - r_v) / T_v`, where `s_uv` is the edge's numerator
//! contribution per unit weight (1 or 0 for class agreement, `1 - |y_u - y_v|`
//! for regression). The mean's gradient is the sum of both endpoint terms over `m`.

use serde::Serialize;

use crate::error::{GamError, Result};
use crate::graph::{NodeId, WeightedGraph};
use crate::homophily::{continuous_homophily, continuous_regression_homophily};
use crate::labels::NodeLabels;
use crate::stats::neumaier_sum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightedMetric {
    ContinuousHomophily,
    ContinuousRegressionHomophily,
}

impl WeightedMetric {
    pub fn as_str(self) -> &'static str {
        match self {
            WeightedMetric::ContinuousHomophily => "continuous_homophily",
            WeightedMetric::ContinuousRegressionHomophily => "continuous_regression_homophily",
        }
    }

    /// Mean of the metric over all scorable nodes.
    pub fn evaluate(self, graph: &WeightedGraph, labels: &NodeLabels) -> Result<f64> {
        let result = match self {
            WeightedMetric::ContinuousHomophily => continuous_homophily(graph, labels, None)?,
            WeightedMetric::ContinuousRegressionHomophily => continuous_regression_homophily(graph, labels, None)?,
        };
        Ok(result.mean)
    }

    pub fn gradient(self, graph: &WeightedGraph, labels: &NodeLabels) -> Result<MetricGradient> {
        match self {
            WeightedMetric::ContinuousHomophily => grad_continuous_homophily(graph, labels),
            WeightedMetric::ContinuousRegressionHomophily => grad_continuous_regression_homophily(graph, labels),
        }
    }
}

/// `d metric / d w_e` for every undirected edge, indexed like `WeightedGraph::edges()`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricGradient {
    pub metric: WeightedMetric,
    pub edges: Vec<(NodeId, NodeId)>,
    pub values: Vec<f64>,
}

impl MetricGradient {
    /// `sum_e w_e * grad_e`; zero for any metric invariant to global weight scaling.
    pub fn euler_residual(&self, graph: &WeightedGraph) -> f64 {
        neumaier_sum(graph.edge_weights().iter().zip(&self.values).map(|(w, g)| w * g))
    }
}

fn ratio_gradient(
    graph: &WeightedGraph,
    metric: WeightedMetric,
    agreement: impl Fn(NodeId, NodeId) -> f64,
) -> Result<MetricGradient> {
    let n = graph.num_nodes();
    let mut total = vec![0.0; n];
    let mut ratio = vec![0.0; n];
    for v in 0..n as NodeId {
        let t = neumaier_sum(graph.neighbors(v).map(|(_, w)| w));
        if t > 0.0 {
            let s = neumaier_sum(graph.neighbors(v).map(|(u, w)| w * agreement(v, u)));
            total[v as usize] = t;
            ratio[v as usize] = s / t;
        }
    }
    let scored = total.iter().filter(|&&t| t > 0.0).count();
    if scored == 0 {
        return Err(GamError::input("graph has no edges; the metric is undefined"));
    }
    let values = graph
        .edges()
        .iter()
        .map(|&(u, v)| {
            let s = agreement(u, v);
            let (u, v) = (u as usize, v as usize);
            ((s - ratio[u]) / total[u] + (s - ratio[v]) / total[v]) / scored as f64
        })
        .collect();
    Ok(MetricGradient { metric, edges: graph.edges().to_vec(), values })
}

/// Gradient of the mean weighted class homophily.
pub fn grad_continuous_homophily(graph: &WeightedGraph, labels: &NodeLabels) -> Result<MetricGradient> {
    let classes = labels.as_classes()?;
    labels.check_len(graph.num_nodes())?;
    ratio_gradient(graph, WeightedMetric::ContinuousHomophily, |a, b| {
        if classes.class_of(a) == classes.class_of(b) {
            1.0
        } else {
            0.0
        }
    })
}

/// Gradient of the mean weighted regression homophily.
pub fn grad_continuous_regression_homophily(graph: &WeightedGraph, labels: &NodeLabels) -> Result<MetricGradient> {
    // validates range and kind the same way the metric does
    continuous_regression_homophily(graph, labels, None)?;
    let y = labels.as_regression()?.normalized();
    ratio_gradient(graph, WeightedMetric::ContinuousRegressionHomophily, |a, b| {
        1.0 - (y[a as usize] - y[b as usize]).abs()
    })
}

/// Relative error with the denominator floored at `RELATIVE_ERROR_FLOOR`.
///
/// A central difference of a `[0, 1]` metric carries about `1e-10` absolute
/// rounding noise at step `1e-6`, so gradients below the floor are compared
/// on an absolute scale.
pub fn relative_error(analytic: f64, numeric: f64) -> f64 {
    (analytic - numeric).abs() / analytic.abs().max(numeric.abs()).max(RELATIVE_ERROR_FLOOR)
}

pub const RELATIVE_ERROR_FLOOR: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeCheck {
    pub edge: (NodeId, NodeId),
    pub analytic: f64,
    pub numeric: f64,
    pub relative_error: f64,
    /// Step actually used for this edge after shrinking.
    pub step: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GradientCheckReport {
    pub metric: WeightedMetric,
    pub num_edges: usize,
    pub max_relative_error: f64,
    pub mean_relative_error: f64,
    /// Edges whose step was halved to keep the weight positive.
    pub shrunk_steps: Vec<(NodeId, NodeId)>,
    /// Up to five edges with the largest error, worst first.
    pub worst: Vec<EdgeCheck>,
}

/// Compare `gradient` against central differences of `metric` on every edge.
///
/// Edges with `w <= step` are perturbed by `w / 2` instead and listed in
/// `shrunk_steps`.
pub fn check_gradient(
    graph: &WeightedGraph,
    labels: &NodeLabels,
    metric: WeightedMetric,
    gradient: &MetricGradient,
    step: f64,
) -> Result<GradientCheckReport> {
    if !(step.is_finite() && step > 0.0) {
        return Err(GamError::input(format!("finite-difference step must be positive, got {step}")));
    }
    if gradient.values.len() != graph.num_edges() {
        return Err(GamError::input("gradient does not match the graph's edge count"));
    }
    let base = graph.edge_weights();
    let mut checks = Vec::with_capacity(base.len());
    let mut shrunk_steps = Vec::new();
    for (e, &w) in base.iter().enumerate() {
        let h = if w > step {
            step
        } else {
            shrunk_steps.push(graph.edges()[e]);
            w / 2.0
        };
        let mut plus = base.to_vec();
        plus[e] = w + h;
        let mut minus = base.to_vec();
        minus[e] = w - h;
        let f_plus = metric.evaluate(&graph.with_edge_weights(plus)?, labels)?;
        let f_minus = metric.evaluate(&graph.with_edge_weights(minus)?, labels)?;
        let numeric = (f_plus - f_minus) / (2.0 * h);
        let analytic = gradient.values[e];
        checks.push(EdgeCheck {
            edge: graph.edges()[e],
            analytic,
            numeric,
            relative_error: relative_error(analytic, numeric),
            step: h,
        });
    }
    let errors: Vec<f64> = checks.iter().map(|c| c.relative_error).collect();
    let max_relative_error = errors.iter().copied().fold(0.0, f64::max);
    let mean_relative_error =
        if errors.is_empty() { 0.0 } else { neumaier_sum(errors.iter().copied()) / errors.len() as f64 };
    checks.sort_by(|a, b| b.relative_error.total_cmp(&a.relative_error).then(a.edge.cmp(&b.edge)));
    checks.truncate(5);
    Ok(GradientCheckReport {
        metric,
        num_edges: base.len(),
        max_relative_error,
        mean_relative_error,
        shrunk_steps,
        worst: checks,
    })
}

/// Analytic gradient of `metric` checked against central differences.
pub fn finite_difference_check(
    graph: &WeightedGraph,
    labels: &NodeLabels,
    metric: WeightedMetric,
    step: f64,
) -> Result<GradientCheckReport> {
    let gradient = metric.gradient(graph, labels)?;
    check_gradient(graph, labels, metric, &gradient, step)
}
