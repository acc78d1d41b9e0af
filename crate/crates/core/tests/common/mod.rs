// SPDX-License-Identifier: Apache-2.0
//! Naive reference implementations and seeded instance generators shared by
//! the integration tests. The references work on dense matrices and double
//! loops and share no code with the library; `compare` runs both side by side.
#![allow(dead_code)]

pub mod compare;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const UNREACHABLE: usize = usize::MAX;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One random test instance: a G(n, p) graph with weights, class and real labels.
#[derive(Debug, Clone)]
pub struct Instance {
    pub n: usize,
    pub edges: Vec<(u32, u32)>,
    pub weights: Vec<f64>,
    pub classes: Vec<u32>,
    pub num_classes: usize,
    pub targets: Vec<f64>,
}

impl Instance {
    /// Symmetric dense weight matrix; zero means no edge.
    pub fn dense_weights(&self) -> Vec<Vec<f64>> {
        let mut w = vec![vec![0.0; self.n]; self.n];
        for (&(u, v), &x) in self.edges.iter().zip(&self.weights) {
            w[u as usize][v as usize] = x;
            w[v as usize][u as usize] = x;
        }
        w
    }

    pub fn unit_weights(&self) -> Vec<Vec<f64>> {
        let mut w = vec![vec![0.0; self.n]; self.n];
        for &(u, v) in &self.edges {
            w[u as usize][v as usize] = 1.0;
            w[v as usize][u as usize] = 1.0;
        }
        w
    }

    pub fn weighted_triplets(&self) -> Vec<(u32, u32, f64)> {
        self.edges.iter().zip(&self.weights).map(|(&(u, v), &w)| (u, v, w)).collect()
    }
}

/// G(n, p) over `u < v`, weights in [0.05, 2), every class present at least once.
pub fn random_instance(rng: &mut ChaCha8Rng, n: usize, p: f64, num_classes: usize) -> Instance {
    assert!(num_classes <= n);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let weights = edges.iter().map(|_| rng.random_range(0.05..2.0)).collect();
    let mut classes: Vec<u32> =
        (0..n).map(|i| if i < num_classes { i as u32 } else { rng.random_range(0..num_classes as u32) }).collect();
    classes.shuffle(rng);
    let targets = (0..n).map(|_| rng.random_range(-5.0..5.0)).collect();
    Instance { n, edges, weights, classes, num_classes, targets }
}

pub fn min_max(raw: &[f64]) -> Vec<f64> {
    let lo = raw.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = raw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi == lo {
        return vec![0.0; raw.len()];
    }
    raw.iter().map(|y| (y - lo) / (hi - lo)).collect()
}

/// All-pairs hop distances by Floyd-Warshall.
pub fn hop_distances(n: usize, edges: &[(u32, u32)]) -> Vec<Vec<usize>> {
    let mut d = vec![vec![UNREACHABLE; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for &(u, v) in edges {
        d[u as usize][v as usize] = 1;
        d[v as usize][u as usize] = 1;
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][m] != UNREACHABLE && d[m][j] != UNREACHABLE && d[i][m] + d[m][j] < d[i][j] {
                    d[i][j] = d[i][m] + d[m][j];
                }
            }
        }
    }
    d
}

/// Nodes at hop distance 1..=k from each node, ascending.
pub fn khop_sets(dist: &[Vec<usize>], k: usize) -> Vec<Vec<usize>> {
    dist.iter().map(|row| (0..row.len()).filter(|&j| row[j] != 0 && row[j] <= k).collect()).collect()
}

pub fn homophily_scores(sets: &[Vec<usize>], classes: &[u32]) -> Vec<Option<f64>> {
    sets.iter()
        .enumerate()
        .map(|(v, s)| {
            if s.is_empty() {
                return None;
            }
            let same = s.iter().filter(|&&u| classes[u] == classes[v]).count();
            Some(same as f64 / s.len() as f64)
        })
        .collect()
}

pub fn regression_scores(sets: &[Vec<usize>], y: &[f64]) -> Vec<Option<f64>> {
    sets.iter()
        .enumerate()
        .map(|(v, s)| {
            if s.is_empty() {
                return None;
            }
            let dist: f64 = s.iter().map(|&u| (y[u] - y[v]).abs()).sum();
            Some(1.0 - dist / s.len() as f64)
        })
        .collect()
}

pub fn weighted_homophily_scores(w: &[Vec<f64>], classes: &[u32]) -> Vec<Option<f64>> {
    (0..w.len())
        .map(|v| {
            let total: f64 = w[v].iter().sum();
            if total == 0.0 {
                return None;
            }
            let same: f64 = (0..w.len()).filter(|&u| classes[u] == classes[v]).map(|u| w[v][u]).sum();
            Some(same / total)
        })
        .collect()
}

pub fn weighted_regression_scores(w: &[Vec<f64>], y: &[f64]) -> Vec<Option<f64>> {
    (0..w.len())
        .map(|v| {
            let total: f64 = w[v].iter().sum();
            if total == 0.0 {
                return None;
            }
            let dist: f64 = (0..w.len()).map(|u| w[v][u] * (y[u] - y[v]).abs()).sum();
            Some(1.0 - dist / total)
        })
        .collect()
}

/// Mean and population std of the scored nodes among `nodes`.
pub fn summarize(scores: &[Option<f64>], nodes: &[usize]) -> Option<(f64, f64)> {
    let xs: Vec<f64> = nodes.iter().filter_map(|&v| scores[v]).collect();
    if xs.is_empty() {
        return None;
    }
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / xs.len() as f64;
    Some((mean, var.sqrt()))
}

pub fn discrete_histograms(sets: &[Vec<usize>], classes: &[u32], num_classes: usize) -> Vec<Vec<f64>> {
    sets.iter()
        .map(|s| {
            let mut h = vec![0.0; num_classes];
            for &u in s {
                h[classes[u] as usize] += 1.0;
            }
            h
        })
        .collect()
}

pub fn weighted_histograms(w: &[Vec<f64>], classes: &[u32], num_classes: usize) -> Vec<Vec<f64>> {
    w.iter()
        .map(|row| {
            let mut h = vec![0.0; num_classes];
            for (u, &x) in row.iter().enumerate() {
                h[classes[u] as usize] += x;
            }
            h
        })
        .collect()
}

pub fn cosine(a: &[f64], b: &[f64]) -> f64 {
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>() / (na * nb)
}

/// Class-pair mean cosine over member pairs of `nodes`, by explicit double loop.
/// `None` if some class has no member in `nodes`.
pub fn ccns(
    hists: &[Vec<f64>],
    classes: &[u32],
    num_classes: usize,
    nodes: &[usize],
    self_pairs: bool,
) -> Option<Vec<Vec<f64>>> {
    let members: Vec<Vec<usize>> =
        (0..num_classes).map(|c| nodes.iter().copied().filter(|&v| classes[v] as usize == c).collect()).collect();
    if members.iter().any(Vec::is_empty) {
        return None;
    }
    let mut m = vec![vec![0.0; num_classes]; num_classes];
    for c in 0..num_classes {
        for c2 in 0..num_classes {
            let mut total = 0.0;
            let mut pairs = 0usize;
            for &u in &members[c] {
                for &v in &members[c2] {
                    if u == v && !self_pairs {
                        continue;
                    }
                    total += cosine(&hists[u], &hists[v]);
                    pairs += 1;
                }
            }
            m[c][c2] = if pairs == 0 { 0.0 } else { total / pairs as f64 };
        }
    }
    Some(m)
}

pub fn ccns_distance(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut total = 0.0;
    for (c, row) in m.iter().enumerate() {
        for (c2, x) in row.iter().enumerate() {
            total += (x - if c == c2 { 1.0 } else { 0.0 }).abs();
        }
    }
    total / n as f64
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Per-node scores of a library result laid out over all `n` nodes.
pub fn spread(n: usize, nodes: &[u32], per_node: &[Option<f64>]) -> Vec<Option<f64>> {
    let mut out = vec![None; n];
    for (&v, &s) in nodes.iter().zip(per_node) {
        out[v as usize] = s;
    }
    out
}

pub fn scores_close(a: &[Option<f64>], b: &[Option<f64>], tol: f64) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(x, y)| match (x, y) {
            (Some(x), Some(y)) => (x - y).abs() <= tol,
            (None, None) => true,
            _ => false,
        })
}

/// Rewiring fixture with a planted monotone trend.
///
/// Two classes of 20 nodes; each class is a clique and splits into groups
/// A and B of 10. Step `t` adds `beta = 4 - t` perfect matchings between the
/// A groups of the two classes and `2 * beta` between the B groups, so
/// cross-class edges disappear as `t` grows.
pub fn monotone_fixture_step(t: usize) -> (usize, Vec<(u32, u32)>) {
    const S: u32 = 20;
    const G: u32 = 10;
    let beta = 4 - t as u32;
    let mut edges = Vec::new();
    for class in 0..2u32 {
        for i in 0..S {
            for j in (i + 1)..S {
                edges.push((class * S + i, class * S + j));
            }
        }
    }
    for (group, count) in [(0u32, beta), (G, 2 * beta)] {
        for shift in 0..count {
            for i in 0..G {
                edges.push((group + i, S + group + (i + shift) % G));
            }
        }
    }
    (2 * S as usize, edges)
}

pub fn monotone_fixture_labels() -> Vec<u32> {
    (0..40).map(|v| (v / 20) as u32).collect()
}

pub const MONOTONE_STEPS: usize = 5;
pub const MONOTONE_ACCURACY: [f64; MONOTONE_STEPS] = [0.60, 0.66, 0.71, 0.75, 0.78];
