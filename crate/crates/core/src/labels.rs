// SPDX-License-Identifier: Apache-2.0
//! Node label containers and data-split masks.

use std::fmt;
use std::str::FromStr;

use crate::error::{GamError, Result};
use crate::graph::NodeId;

/// Class id per node, `0..num_classes`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassLabels {
    ids: Vec<u32>,
    num_classes: usize,
}

impl ClassLabels {
    /// Labels with `num_classes = 1 + max(id)`.
    pub fn new(ids: Vec<u32>) -> Result<Self> {
        let num_classes = ids.iter().max().map(|&m| m as usize + 1).unwrap_or(1);
        Self::with_num_classes(ids, num_classes)
    }

    /// Labels over an explicit class count, allowing classes with no members.
    pub fn with_num_classes(ids: Vec<u32>, num_classes: usize) -> Result<Self> {
        if num_classes == 0 {
            return Err(GamError::input("at least one class is required"));
        }
        if let Some((v, c)) = ids.iter().enumerate().find(|(_, &c)| c as usize >= num_classes) {
            return Err(GamError::input(format!("node {v} has class {c} >= num_classes {num_classes}")));
        }
        Ok(Self { ids, num_classes })
    }

    pub fn ids(&self) -> &[u32] {
        &self.ids
    }

    #[inline]
    pub fn class_of(&self, v: NodeId) -> u32 {
        self.ids[v as usize]
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

/// Scalar regression targets plus their `[0, 1]` min-max normalized view.
#[derive(Debug, Clone, PartialEq)]
pub struct RegressionLabels {
    raw: Vec<f64>,
    normalized: Vec<f64>,
}

impl RegressionLabels {
    /// Min-max normalize over all nodes. Constant targets normalize to all zeros.
    pub fn normalize(raw: Vec<f64>) -> Result<Self> {
        if raw.is_empty() {
            return Err(GamError::input("regression labels need at least one node"));
        }
        check_finite(&raw)?;
        let (lo, hi) = raw.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &y| (lo.min(y), hi.max(y)));
        let span = hi - lo;
        let normalized = if span > 0.0 {
            // clamp guards the last ulp of (y - lo) / span for extreme values
            raw.iter().map(|&y| ((y - lo) / span).clamp(0.0, 1.0)).collect()
        } else {
            vec![0.0; raw.len()]
        };
        Ok(Self { raw, normalized })
    }

    /// Targets the caller already normalized. The range is not checked here;
    /// the regression metrics reject values outside `[0, 1]`.
    pub fn prenormalized(values: Vec<f64>) -> Result<Self> {
        check_finite(&values)?;
        Ok(Self { raw: values.clone(), normalized: values })
    }

    pub fn raw(&self) -> &[f64] {
        &self.raw
    }

    pub fn normalized(&self) -> &[f64] {
        &self.normalized
    }

    pub fn len(&self) -> usize {
        self.raw.len()
    }

    pub fn is_empty(&self) -> bool {
        self.raw.is_empty()
    }
}

fn check_finite(values: &[f64]) -> Result<()> {
    match values.iter().position(|y| !y.is_finite()) {
        Some(v) => Err(GamError::input(format!("node {v} has non-finite label {}", values[v]))),
        None => Ok(()),
    }
}

/// Labels for either task kind.
#[derive(Debug, Clone, PartialEq)]
pub enum NodeLabels {
    Classification(ClassLabels),
    Regression(RegressionLabels),
}

impl NodeLabels {
    pub fn len(&self) -> usize {
        match self {
            NodeLabels::Classification(c) => c.len(),
            NodeLabels::Regression(r) => r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn task(&self) -> Task {
        match self {
            NodeLabels::Classification(_) => Task::Classification,
            NodeLabels::Regression(_) => Task::Regression,
        }
    }

    pub fn as_classes(&self) -> Result<&ClassLabels> {
        match self {
            NodeLabels::Classification(c) => Ok(c),
            NodeLabels::Regression(_) => Err(GamError::Type("metric requires classification labels".into())),
        }
    }

    pub fn as_regression(&self) -> Result<&RegressionLabels> {
        match self {
            NodeLabels::Regression(r) => Ok(r),
            NodeLabels::Classification(_) => Err(GamError::Type("metric requires regression labels".into())),
        }
    }

    /// Fails unless there is exactly one label per node.
    pub fn check_len(&self, num_nodes: usize) -> Result<()> {
        if self.len() != num_nodes {
            return Err(GamError::input(format!("{} labels for a graph with {num_nodes} nodes", self.len())));
        }
        Ok(())
    }
}

/// Min-max normalize raw regression targets into `NodeLabels::Regression`.
pub fn normalize_regression_labels(raw: Vec<f64>) -> Result<NodeLabels> {
    RegressionLabels::normalize(raw).map(NodeLabels::Regression)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Task {
    Classification,
    Regression,
}

impl FromStr for Task {
    type Err = GamError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classification" => Ok(Task::Classification),
            "regression" => Ok(Task::Regression),
            other => Err(GamError::input(format!("unknown task {other:?}"))),
        }
    }
}

/// Which data split a node belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Split {
    Train,
    Val,
    Test,
    None,
}

impl Split {
    pub const EVALUATED: [Split; 3] = [Split::Train, Split::Val, Split::Test];

    pub fn as_str(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Val => "val",
            Split::Test => "test",
            Split::None => "none",
        }
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Split {
    type Err = GamError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "train" => Ok(Split::Train),
            "val" => Ok(Split::Val),
            "test" => Ok(Split::Test),
            "none" => Ok(Split::None),
            other => Err(GamError::input(format!("unknown split tag {other:?}"))),
        }
    }
}

/// One split tag per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMask {
    assignment: Vec<Split>,
}

impl SplitMask {
    pub fn new(assignment: Vec<Split>) -> Self {
        Self { assignment }
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn split_of(&self, v: NodeId) -> Split {
        self.assignment[v as usize]
    }

    pub fn assignment(&self) -> &[Split] {
        &self.assignment
    }

    /// Nodes tagged `split`; fails when the split is empty.
    pub fn nodes(&self, split: Split) -> Result<NodeSet> {
        let nodes: Vec<NodeId> =
            self.assignment.iter().enumerate().filter(|(_, &s)| s == split).map(|(v, _)| v as NodeId).collect();
        if nodes.is_empty() {
            return Err(GamError::input(format!("split {split} has no nodes")));
        }
        Ok(NodeSet { nodes, num_nodes: self.assignment.len() })
    }

    pub fn count(&self, split: Split) -> usize {
        self.assignment.iter().filter(|&&s| s == split).count()
    }
}

/// Nonempty, sorted, duplicate-free subset of a graph's nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeSet {
    nodes: Vec<NodeId>,
    num_nodes: usize,
}

impl NodeSet {
    pub fn new(mut nodes: Vec<NodeId>, num_nodes: usize) -> Result<Self> {
        if nodes.is_empty() {
            return Err(GamError::input("node subset is empty"));
        }
        nodes.sort_unstable();
        if let Some(w) = nodes.windows(2).find(|w| w[0] == w[1]) {
            return Err(GamError::input(format!("node {} listed twice in subset", w[0])));
        }
        if let Some(&v) = nodes.last().filter(|&&v| v as usize >= num_nodes) {
            return Err(GamError::input(format!("subset node {v} out of range for {num_nodes} nodes")));
        }
        Ok(Self { nodes, num_nodes })
    }

    pub fn all(num_nodes: usize) -> Self {
        Self { nodes: (0..num_nodes as NodeId).collect(), num_nodes }
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    /// Node count of the graph the subset was drawn from.
    pub fn universe(&self) -> usize {
        self.num_nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}
