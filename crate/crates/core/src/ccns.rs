// SPDX-License-Identifier: Apache-2.0
//! Cross-class neighbourhood similarity (CCNS) and the CCNS distance.
//!
//! `CCNS(c, c')` is the mean cosine similarity between the neighbor-label
//! histograms of all node pairs `(u, v)` with `u` in class `c` and `v` in
//! class `c'`. Cosine is bilinear in the unit-normalized histograms, so the
//! double sum collapses to a dot product of per-class sums:
//! `sum_{u, v} cos(d(u), d(v)) = <sum_u d(u)/|d(u)|, sum_v d(v)/|d(v)|>`,
//! which costs `O(n * C + C^2)` instead of `O(n^2 * C)`.
//!
//! A node with an empty neighborhood has a zero histogram; its cosine with
//! anything is taken as 0.

use rayon::prelude::*;

use crate::error::{GamError, Result};
use crate::graph::{NodeId, WeightedGraph};
use crate::labels::{ClassLabels, NodeLabels, NodeSet};
use crate::neighborhood::Neighborhoods;
use crate::stats::neumaier_sum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CcnsMode {
    /// Histograms count neighbors per class.
    Discrete,
    /// Histograms sum incident edge weight per class.
    Continuous,
}

impl CcnsMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CcnsMode::Discrete => "discrete",
            CcnsMode::Continuous => "continuous",
        }
    }
}

/// Per-class neighbor mass of a single node.
#[derive(Debug, Clone, PartialEq)]
pub struct NeighborLabelHistogram {
    mass: Vec<f64>,
}

impl NeighborLabelHistogram {
    /// Count of neighbors per class.
    pub fn from_neighbors(members: &[NodeId], classes: &ClassLabels) -> Self {
        let mut counts = vec![0u64; classes.num_classes()];
        for &u in members {
            counts[classes.class_of(u) as usize] += 1;
        }
        Self { mass: counts.into_iter().map(|c| c as f64).collect() }
    }

    /// Incident edge weight per neighbor class.
    pub fn from_weighted(graph: &WeightedGraph, v: NodeId, classes: &ClassLabels) -> Self {
        let mut mass = vec![0.0; classes.num_classes()];
        for (u, w) in graph.neighbors(v) {
            mass[classes.class_of(u) as usize] += w;
        }
        Self { mass }
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn is_zero(&self) -> bool {
        self.mass.iter().all(|&m| m == 0.0)
    }

    /// Unit-length copy, or the zero vector for a zero histogram.
    pub fn unit(&self) -> Vec<f64> {
        let norm = self.mass.iter().map(|m| m * m).sum::<f64>().sqrt();
        if norm > 0.0 {
            self.mass.iter().map(|m| m / norm).collect()
        } else {
            vec![0.0; self.mass.len()]
        }
    }
}

/// Knobs for the CCNS matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CcnsOptions {
    /// Count the pairs `(u, u)` on the diagonal. On by default.
    ///
    /// When off, diagonal entries average over the `n_c (n_c - 1)` ordered
    /// pairs of distinct nodes; a class with a single member gets 0.
    pub include_self_pairs: bool,
}

impl Default for CcnsOptions {
    fn default() -> Self {
        Self { include_self_pairs: true }
    }
}

/// Symmetric `C x C` matrix of mean cross-class histogram cosines.
#[derive(Debug, Clone, PartialEq)]
pub struct CcnsMatrix {
    num_classes: usize,
    values: Vec<f64>,
    hops: usize,
    mode: CcnsMode,
    /// Evaluated nodes whose histogram was the zero vector.
    pub zero_histograms: usize,
}

impl CcnsMatrix {
    /// Wrap an arbitrary row-major square matrix, e.g. one loaded from a report.
    pub fn from_row_major(num_classes: usize, values: Vec<f64>, hops: usize, mode: CcnsMode) -> Result<Self> {
        if num_classes == 0 || values.len() != num_classes * num_classes {
            return Err(GamError::input(format!(
                "{} values do not form a {num_classes}x{num_classes} matrix",
                values.len()
            )));
        }
        Ok(Self { num_classes, values, hops, mode, zero_histograms: 0 })
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn get(&self, c: usize, c2: usize) -> f64 {
        self.values[c * self.num_classes + c2]
    }

    pub fn row_major(&self) -> &[f64] {
        &self.values
    }

    pub fn hops(&self) -> usize {
        self.hops
    }

    pub fn mode(&self) -> CcnsMode {
        self.mode
    }

    pub fn distance(&self) -> f64 {
        ccns_distance(self)
    }
}

/// Entrywise L1 distance of the matrix from the identity, divided by the class count.
pub fn ccns_distance(m: &CcnsMatrix) -> f64 {
    let n = m.num_classes;
    let deviation = neumaier_sum((0..n).flat_map(|c| {
        (0..n).map(move |c2| {
            let target = if c == c2 { 1.0 } else { 0.0 };
            (m.get(c, c2) - target).abs()
        })
    }));
    deviation / n as f64
}

fn class_subset<'a>(
    labels: &'a NodeLabels,
    num_nodes: usize,
    restrict: Option<&NodeSet>,
) -> Result<(&'a ClassLabels, NodeSet)> {
    let classes = labels.as_classes()?;
    labels.check_len(num_nodes)?;
    if classes.num_classes() < 2 {
        return Err(GamError::input("CCNS needs at least two classes"));
    }
    let subset = match restrict {
        Some(set) if set.universe() != num_nodes => {
            return Err(GamError::input(format!(
                "node subset drawn from {} nodes, graph has {num_nodes}",
                set.universe()
            )))
        }
        Some(set) => set.clone(),
        None => NodeSet::all(num_nodes),
    };
    Ok((classes, subset))
}

/// Reduce unit histograms (row per evaluated node) into the CCNS matrix.
fn aggregate(
    classes: &ClassLabels,
    nodes: &[NodeId],
    histograms: &[NeighborLabelHistogram],
    options: CcnsOptions,
    hops: usize,
    mode: CcnsMode,
) -> Result<CcnsMatrix> {
    let c_count = classes.num_classes();
    let units: Vec<Vec<f64>> = histograms.par_iter().map(NeighborLabelHistogram::unit).collect();
    let zero_histograms = histograms.iter().filter(|h| h.is_zero()).count();

    let mut members = vec![0usize; c_count];
    let mut self_dot = vec![0.0f64; c_count];
    // Per class, its members' unit histograms in node order.
    let mut by_class: Vec<Vec<&[f64]>> = vec![Vec::new(); c_count];
    for (&v, unit) in nodes.iter().zip(&units) {
        let c = classes.class_of(v) as usize;
        members[c] += 1;
        by_class[c].push(unit);
    }
    if let Some(c) = members.iter().position(|&m| m == 0) {
        return Err(GamError::EmptyClass { class: c as u32 });
    }
    let sums: Vec<Vec<f64>> = by_class
        .iter()
        .enumerate()
        .map(|(c, rows)| {
            if !options.include_self_pairs {
                self_dot[c] = neumaier_sum(rows.iter().map(|r| dot(r, r)));
            }
            (0..c_count).map(|j| neumaier_sum(rows.iter().map(|r| r[j]))).collect()
        })
        .collect();

    let mut values = vec![0.0; c_count * c_count];
    for c in 0..c_count {
        for c2 in c..c_count {
            let pair_sum = dot(&sums[c], &sums[c2]);
            let value = if c == c2 && !options.include_self_pairs {
                let pairs = members[c] * (members[c] - 1);
                if pairs == 0 {
                    0.0
                } else {
                    (pair_sum - self_dot[c]) / pairs as f64
                }
            } else {
                pair_sum / (members[c] as f64 * members[c2] as f64)
            };
            let value = value.clamp(0.0, 1.0);
            values[c * c_count + c2] = value;
            values[c2 * c_count + c] = value;
        }
    }
    Ok(CcnsMatrix { num_classes: c_count, values, hops, mode, zero_histograms })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    neumaier_sum(a.iter().zip(b).map(|(x, y)| x * y))
}

/// Discrete (k-hop) CCNS over the evaluated nodes. Histograms use full-graph neighborhoods.
pub fn ccns_matrix<N: Neighborhoods>(
    labels: &NodeLabels,
    nbh: &N,
    restrict: Option<&NodeSet>,
    options: CcnsOptions,
) -> Result<CcnsMatrix> {
    let (classes, subset) = class_subset(labels, nbh.num_nodes(), restrict)?;
    let histograms: Vec<NeighborLabelHistogram> = subset
        .nodes()
        .par_iter()
        .map_init(
            || nbh.scratch(),
            |scratch, &v| NeighborLabelHistogram::from_neighbors(nbh.neighbors(v, scratch), classes),
        )
        .collect();
    aggregate(classes, subset.nodes(), &histograms, options, nbh.hops(), CcnsMode::Discrete)
}

/// CCNS on weight histograms of a weighted graph (1-hop).
pub fn continuous_ccns_matrix(
    graph: &WeightedGraph,
    labels: &NodeLabels,
    restrict: Option<&NodeSet>,
    options: CcnsOptions,
) -> Result<CcnsMatrix> {
    let (classes, subset) = class_subset(labels, graph.num_nodes(), restrict)?;
    let histograms: Vec<NeighborLabelHistogram> =
        subset.nodes().par_iter().map(|&v| NeighborLabelHistogram::from_weighted(graph, v, classes)).collect();
    aggregate(classes, subset.nodes(), &histograms, options, 1, CcnsMode::Continuous)
}
