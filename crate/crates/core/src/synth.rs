// SPDX-License-Identifier: Apache-2.0
//! Seeded synthetic population data and Euclidean kNN graph construction.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, StandardNormal};
use rayon::prelude::*;

use crate::error::{GamError, Result};
use crate::graph::{DiscreteGraph, NodeId};
use crate::labels::{ClassLabels, NodeLabels, RegressionLabels, Split, SplitMask};

/// Minimum distance between class centers in the informative subspace.
pub const MIN_CENTER_DISTANCE: f64 = 4.0;
/// Standard deviation of the additive regression noise.
pub const REGRESSION_NOISE: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SyntheticTask {
    Classification { num_classes: usize },
    Regression,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticSpec {
    pub num_nodes: usize,
    pub num_features: usize,
    pub num_informative: usize,
    pub task: SyntheticTask,
    pub knn_k: usize,
    pub seed: u64,
}

impl SyntheticSpec {
    /// Defaults: 50 features, 5 informative, 5 nearest neighbors.
    pub fn new(num_nodes: usize, task: SyntheticTask, seed: u64) -> Self {
        Self { num_nodes, num_features: 50, num_informative: 5, task, knn_k: 5, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_informative == 0 || self.num_informative > self.num_features {
            return Err(GamError::input(format!(
                "need 1 <= informative ({}) <= features ({})",
                self.num_informative, self.num_features
            )));
        }
        if self.num_nodes < 2 || self.knn_k == 0 || self.knn_k >= self.num_nodes {
            return Err(GamError::input(format!("need 1 <= knn_k ({}) < num_nodes ({})", self.knn_k, self.num_nodes)));
        }
        if let SyntheticTask::Classification { num_classes } = self.task {
            if num_classes < 2 || num_classes > self.num_nodes {
                return Err(GamError::input(format!("invalid class count {num_classes}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticDataset {
    /// One row of `num_features` values per node.
    pub features: Vec<Vec<f64>>,
    pub labels: NodeLabels,
    pub graph: DiscreteGraph,
}

fn class_centers(rng: &mut ChaCha8Rng, num_classes: usize, dims: usize) -> Vec<Vec<f64>> {
    let mut spread = MIN_CENTER_DISTANCE;
    let mut centers: Vec<Vec<f64>> = Vec::with_capacity(num_classes);
    let mut attempts = 0usize;
    while centers.len() < num_classes {
        let candidate: Vec<f64> = (0..dims).map(|_| rng.random_range(-spread..spread)).collect();
        let far_enough =
            centers.iter().all(|c| euclidean_sq(c, &candidate) >= MIN_CENTER_DISTANCE * MIN_CENTER_DISTANCE);
        if far_enough {
            centers.push(candidate);
        } else {
            attempts += 1;
            if attempts.is_multiple_of(1000) {
                spread *= 1.5;
            }
        }
    }
    centers
}

/// Draw features and labels, then connect each node to its kNN.
///
/// Classification: informative features are unit-variance Gaussians around
/// per-class centers at least [`MIN_CENTER_DISTANCE`] apart; the remaining
/// features are standard normal noise. Regression: the target is a positive
/// linear combination of the informative features plus Gaussian noise.
pub fn generate_synthetic(spec: &SyntheticSpec) -> Result<SyntheticDataset> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.num_nodes;
    let mut features: Vec<Vec<f64>> =
        (0..n).map(|_| (0..spec.num_features).map(|_| StandardNormal.sample(&mut rng)).collect()).collect();
    let labels = match spec.task {
        SyntheticTask::Classification { num_classes } => {
            let centers = class_centers(&mut rng, num_classes, spec.num_informative);
            let mut ids: Vec<u32> = (0..n).map(|v| (v % num_classes) as u32).collect();
            ids.shuffle(&mut rng);
            for (row, &c) in features.iter_mut().zip(&ids) {
                for (x, center) in row.iter_mut().zip(&centers[c as usize]) {
                    *x += center;
                }
            }
            NodeLabels::Classification(ClassLabels::with_num_classes(ids, num_classes)?)
        }
        SyntheticTask::Regression => {
            let coef: Vec<f64> = (0..spec.num_informative).map(|_| rng.random_range(0.5..1.5)).collect();
            let noise = Normal::new(0.0, REGRESSION_NOISE).expect("valid noise scale");
            let raw = features
                .iter()
                .map(|row| row.iter().zip(&coef).map(|(x, a)| x * a).sum::<f64>() + noise.sample(&mut rng))
                .collect();
            NodeLabels::Regression(RegressionLabels::normalize(raw)?)
        }
    };
    let graph = knn_graph(&features, spec.knn_k)?;
    Ok(SyntheticDataset { features, labels, graph })
}

fn euclidean_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Union-symmetrized Euclidean kNN graph. Ties go to the lower node id.
pub fn knn_graph(features: &[Vec<f64>], k: usize) -> Result<DiscreteGraph> {
    let n = features.len();
    if k == 0 || k >= n {
        return Err(GamError::input(format!("need 1 <= k ({k}) < number of points ({n})")));
    }
    let dims = features[0].len();
    for (v, row) in features.iter().enumerate() {
        if row.len() != dims {
            return Err(GamError::input(format!("point {v} has {} features, expected {dims}", row.len())));
        }
        if row.iter().any(|x| !x.is_finite()) {
            return Err(GamError::input(format!("point {v} has a non-finite feature")));
        }
    }
    let chosen: Vec<Vec<(NodeId, NodeId)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut candidates: Vec<(f64, usize)> =
                (0..n).filter(|&j| j != i).map(|j| (euclidean_sq(&features[i], &features[j]), j)).collect();
            let order = |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
            candidates.select_nth_unstable_by(k - 1, order);
            candidates[..k].iter().map(|&(_, j)| (i as NodeId, j as NodeId)).collect()
        })
        .collect();
    DiscreteGraph::from_edges(n, &chosen.concat())
}

/// Seeded random split with the given train and validation fractions; the rest is test.
pub fn random_splits(num_nodes: usize, train: f64, val: f64, seed: u64) -> Result<SplitMask> {
    if !(train >= 0.0 && val >= 0.0 && train + val <= 1.0) {
        return Err(GamError::input(format!("invalid split fractions {train} / {val}")));
    }
    let mut order: Vec<usize> = (0..num_nodes).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let n_train = (train * num_nodes as f64).round() as usize;
    let n_val = ((val * num_nodes as f64).round() as usize).min(num_nodes - n_train);
    let mut tags = vec![Split::Test; num_nodes];
    for (rank, &v) in order.iter().enumerate() {
        if rank < n_train {
            tags[v] = Split::Train;
        } else if rank < n_train + n_val {
            tags[v] = Split::Val;
        }
    }
    Ok(SplitMask::new(tags))
}
