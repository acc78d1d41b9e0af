// SPDX-License-Identifier: Apache-2.0
//! Metric trajectories over snapshot sequences and their correlation with
//! an externally supplied performance series.

use crate::ccns::{ccns_matrix, continuous_ccns_matrix, CcnsOptions};
use crate::error::{GamError, Result};
use crate::homophily::{continuous_homophily, continuous_regression_homophily, node_homophily, regression_homophily};
use crate::io::report::Record;
use crate::io::snapshot::{AnyGraph, SnapshotSequence};
use crate::labels::{NodeLabels, NodeSet, Task};
use crate::neighborhood::KHopExpander;
use crate::stats::pearson;

/// Metric family tracked per snapshot; the concrete variant follows the
/// graph kind and the label task.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TrackedMetric {
    Homophily,
    CcnsDistance,
}

impl std::str::FromStr for TrackedMetric {
    type Err = GamError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "homophily" => Ok(TrackedMetric::Homophily),
            "dccns" | "ccns_distance" => Ok(TrackedMetric::CcnsDistance),
            other => Err(GamError::input(format!("unknown trajectory metric {other:?}"))),
        }
    }
}

fn metric_name(metric: TrackedMetric, weighted: bool, task: Task) -> Result<&'static str> {
    Ok(match (metric, weighted, task) {
        (TrackedMetric::Homophily, false, Task::Classification) => "node_homophily",
        (TrackedMetric::Homophily, false, Task::Regression) => "regression_homophily",
        (TrackedMetric::Homophily, true, Task::Classification) => "continuous_homophily",
        (TrackedMetric::Homophily, true, Task::Regression) => "continuous_regression_homophily",
        (TrackedMetric::CcnsDistance, false, Task::Classification) => "ccns_distance",
        (TrackedMetric::CcnsDistance, true, Task::Classification) => "continuous_ccns_distance",
        (TrackedMetric::CcnsDistance, _, Task::Regression) => {
            return Err(GamError::Type("CCNS distance is only defined for class labels".into()))
        }
    })
}

#[derive(Debug, Clone, Default)]
pub struct TrajectoryOptions {
    pub metrics: Vec<TrackedMetric>,
    /// Performance is an error (lower is better); correlate against its negation.
    pub lower_is_better: bool,
    /// Average only over these nodes (e.g. one split).
    pub restrict: Option<NodeSet>,
    pub split_name: Option<String>,
    pub ccns: CcnsOptions,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepValue {
    pub step: u64,
    pub performance: Option<f64>,
    pub mean: f64,
    /// Spread across nodes; absent for scalar metrics such as the CCNS distance.
    pub std: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricSeries {
    pub metric: &'static str,
    pub values: Vec<StepValue>,
    /// Correlation of `mean` with (possibly negated) performance.
    pub pearson: Option<f64>,
}

impl MetricSeries {
    pub fn means(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.mean).collect()
    }

    pub fn stds(&self) -> Vec<Option<f64>> {
        self.values.iter().map(|v| v.std).collect()
    }

    /// Sign of the correlation, `None` when it is undefined.
    pub fn direction(&self) -> Option<std::cmp::Ordering> {
        self.pearson.map(|p| p.total_cmp(&0.0))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryAnalysis {
    pub split: String,
    pub series: Vec<MetricSeries>,
}

impl TrajectoryAnalysis {
    pub fn get(&self, metric: &str) -> Option<&MetricSeries> {
        self.series.iter().find(|s| s.metric == metric)
    }

    /// Per-step records followed by one correlation record per metric.
    pub fn records(&self) -> Vec<Record> {
        let mut out = Vec::new();
        for s in &self.series {
            for v in &s.values {
                out.push(Record::step_summary(s.metric, 1, &self.split, v.step, v.performance, v.mean, v.std));
            }
        }
        for s in &self.series {
            out.push(Record::correlation(s.metric, 1, &self.split, s.pearson));
        }
        out
    }
}

fn step_value(
    graph: &AnyGraph,
    labels: &NodeLabels,
    metric: TrackedMetric,
    opts: &TrajectoryOptions,
) -> Result<(f64, Option<f64>)> {
    let restrict = opts.restrict.as_ref();
    let task = labels.task();
    match (metric, graph) {
        (TrackedMetric::Homophily, AnyGraph::Discrete(g)) => {
            let nbh = KHopExpander::new(g, 1)?;
            let r = match task {
                Task::Classification => node_homophily(labels, &nbh, restrict)?,
                Task::Regression => regression_homophily(labels, &nbh, restrict)?,
            };
            Ok((r.mean, Some(r.std)))
        }
        (TrackedMetric::Homophily, AnyGraph::Weighted(g)) => {
            let r = match task {
                Task::Classification => continuous_homophily(g, labels, restrict)?,
                Task::Regression => continuous_regression_homophily(g, labels, restrict)?,
            };
            Ok((r.mean, Some(r.std)))
        }
        (TrackedMetric::CcnsDistance, AnyGraph::Discrete(g)) => {
            let nbh = KHopExpander::new(g, 1)?;
            Ok((ccns_matrix(labels, &nbh, restrict, opts.ccns)?.distance(), None))
        }
        (TrackedMetric::CcnsDistance, AnyGraph::Weighted(g)) => {
            Ok((continuous_ccns_matrix(g, labels, restrict, opts.ccns)?.distance(), None))
        }
    }
}

/// Evaluate the selected metrics on every snapshot and correlate them with performance.
///
/// The correlation uses the steps that carry a performance value and is
/// undefined with fewer than three of them or a constant series.
pub fn analyze_trajectory(
    seq: &SnapshotSequence,
    labels: &NodeLabels,
    opts: &TrajectoryOptions,
) -> Result<TrajectoryAnalysis> {
    labels.check_len(seq.num_nodes())?;
    if opts.metrics.is_empty() {
        return Err(GamError::input("no trajectory metric selected"));
    }
    let mut series = Vec::with_capacity(opts.metrics.len());
    for &metric in &opts.metrics {
        let name = metric_name(metric, seq.is_weighted(), labels.task())?;
        let values = seq
            .steps
            .iter()
            .map(|snap| {
                let (mean, std) = step_value(&snap.graph, labels, metric, opts)?;
                Ok(StepValue { step: snap.step, performance: snap.performance, mean, std })
            })
            .collect::<Result<Vec<_>>>()?;
        let (xs, ys): (Vec<f64>, Vec<f64>) = values
            .iter()
            .filter_map(|v| v.performance.map(|p| (v.mean, if opts.lower_is_better { -p } else { p })))
            .unzip();
        series.push(MetricSeries { metric: name, pearson: pearson(&xs, &ys), values });
    }
    Ok(TrajectoryAnalysis { split: opts.split_name.clone().unwrap_or_else(|| "all".into()), series })
}
