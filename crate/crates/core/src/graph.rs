// SPDX-License-Identifier: Apache-2.0
//! Undirected graph containers in compressed sparse row form.
//!
//! Both graph kinds are canonicalized on construction: edges are symmetrized,
//! self-loops dropped and neighbor lists sorted ascending. Once built they are
//! immutable and `Sync`, so metric kernels read them from many threads.

use std::collections::BTreeMap;

use crate::error::{GamError, Result};

pub type NodeId = u32;

fn check_node_count(num_nodes: usize) -> Result<()> {
    if num_nodes > NodeId::MAX as usize {
        return Err(GamError::input(format!("{num_nodes} nodes exceed the supported maximum of {}", NodeId::MAX)));
    }
    Ok(())
}

fn check_id(id: NodeId, num_nodes: usize) -> Result<()> {
    if id as usize >= num_nodes {
        return Err(GamError::input(format!("node id {id} out of range for a graph with {num_nodes} nodes")));
    }
    Ok(())
}

/// Build CSR offsets/targets from canonical undirected pairs (u < v, sorted, unique).
/// Returns the offsets, the targets and, per adjacency entry, the index of its pair.
fn csr_from_pairs(num_nodes: usize, pairs: &[(NodeId, NodeId)]) -> (Vec<usize>, Vec<NodeId>, Vec<usize>) {
    let mut degree = vec![0usize; num_nodes];
    for &(u, v) in pairs {
        degree[u as usize] += 1;
        degree[v as usize] += 1;
    }
    let mut offsets = Vec::with_capacity(num_nodes + 1);
    offsets.push(0);
    for d in &degree {
        offsets.push(offsets.last().unwrap() + d);
    }
    let mut cursor = offsets[..num_nodes].to_vec();
    let mut targets = vec![0; 2 * pairs.len()];
    let mut entry_edge = vec![0; 2 * pairs.len()];
    let mut record = |row: NodeId, col: NodeId, edge: usize| {
        let slot = &mut cursor[row as usize];
        targets[*slot] = col;
        entry_edge[*slot] = edge;
        *slot += 1;
    };
    let mut by_second: Vec<usize> = (0..pairs.len()).collect();
    by_second.sort_by_key(|&e| (pairs[e].1, pairs[e].0));
    // Row x gets its smaller neighbors first (ascending), then its larger ones
    // in the (u, v) order of `pairs`, so every row ends up sorted.
    for &e in &by_second {
        let (u, v) = pairs[e];
        record(v, u, e);
    }
    for (e, &(u, v)) in pairs.iter().enumerate() {
        record(u, v, e);
    }
    (offsets, targets, entry_edge)
}

/// Unweighted undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteGraph {
    num_nodes: usize,
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
}

impl DiscreteGraph {
    /// Build a canonical graph from an arbitrary edge list.
    ///
    /// Both orientations of an edge collapse to the same undirected edge,
    /// duplicates are merged and self-loops removed.
    pub fn from_edges(num_nodes: usize, edges: &[(NodeId, NodeId)]) -> Result<Self> {
        check_node_count(num_nodes)?;
        let mut pairs = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            check_id(u, num_nodes)?;
            check_id(v, num_nodes)?;
            if u != v {
                pairs.push((u.min(v), u.max(v)));
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        let (offsets, targets, _) = csr_from_pairs(num_nodes, &pairs);
        Ok(Self { num_nodes, offsets, targets })
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    /// Number of undirected edges.
    pub fn num_edges(&self) -> usize {
        self.targets.len() / 2
    }

    /// Sorted neighbor list of `v`.
    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: NodeId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Canonical undirected edges `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        (0..self.num_nodes as NodeId)
            .flat_map(move |u| self.neighbors(u).iter().copied().filter(move |&v| v > u).map(move |v| (u, v)))
    }
}

/// Undirected graph with strictly positive edge weights.
///
/// Each undirected edge is stored once with a single weight `w_uv = w_vu`;
/// both adjacency rows point at that shared slot.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    num_nodes: usize,
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    entry_edge: Vec<usize>,
    edges: Vec<(NodeId, NodeId)>,
    weights: Vec<f64>,
}

impl WeightedGraph {
    /// Build a canonical weighted graph from directed `(u, v, w)` entries.
    ///
    /// When both `(u, v, w1)` and `(v, u, w2)` are given the edge receives
    /// `(w1 + w2) / 2`. Zero weights are dropped, self-loops ignored.
    /// Negative or non-finite weights and repeated directed entries are errors.
    pub fn from_weighted_edges(num_nodes: usize, entries: &[(NodeId, NodeId, f64)]) -> Result<Self> {
        check_node_count(num_nodes)?;
        // (lo, hi) -> [weight of lo->hi, weight of hi->lo]
        let mut merged: BTreeMap<(NodeId, NodeId), [Option<f64>; 2]> = BTreeMap::new();
        for &(u, v, w) in entries {
            check_id(u, num_nodes)?;
            check_id(v, num_nodes)?;
            if !w.is_finite() {
                return Err(GamError::input(format!("edge ({u}, {v}) has non-finite weight {w}")));
            }
            if w < 0.0 {
                return Err(GamError::input(format!("edge ({u}, {v}) has negative weight {w}")));
            }
            if u == v {
                continue;
            }
            let key = (u.min(v), u.max(v));
            let side = usize::from(u > v);
            let slot = &mut merged.entry(key).or_default()[side];
            if slot.is_some() {
                return Err(GamError::input(format!("duplicate directed edge ({u}, {v})")));
            }
            *slot = Some(w);
        }
        let mut pairs = Vec::with_capacity(merged.len());
        let mut weights = Vec::with_capacity(merged.len());
        for (key, sides) in merged {
            let w = match sides {
                [Some(a), Some(b)] => (a + b) / 2.0,
                [Some(a), None] | [None, Some(a)] => a,
                [None, None] => unreachable!("entry created without a weight"),
            };
            if w > 0.0 {
                pairs.push(key);
                weights.push(w);
            }
        }
        Ok(Self::from_canonical(num_nodes, pairs, weights))
    }

    /// Weighted copy of a discrete graph with every edge carrying `weight`.
    pub fn from_discrete(graph: &DiscreteGraph, weight: f64) -> Result<Self> {
        if !(weight.is_finite() && weight > 0.0) {
            return Err(GamError::input(format!("uniform weight must be positive, got {weight}")));
        }
        let pairs: Vec<_> = graph.edges().collect();
        let weights = vec![weight; pairs.len()];
        Ok(Self::from_canonical(graph.num_nodes(), pairs, weights))
    }

    fn from_canonical(num_nodes: usize, edges: Vec<(NodeId, NodeId)>, weights: Vec<f64>) -> Self {
        let (offsets, targets, entry_edge) = csr_from_pairs(num_nodes, &edges);
        Self { num_nodes, offsets, targets, entry_edge, edges, weights }
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Canonical undirected edges `(u, v)`, `u < v`, ascending. Index `e` pairs with `edge_weights()[e]`.
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn edge_weights(&self) -> &[f64] {
        &self.weights
    }

    /// Neighbors of `v` as `(neighbor, weight)` pairs in ascending neighbor order.
    pub fn neighbors(&self, v: NodeId) -> impl ExactSizeIterator<Item = (NodeId, f64)> + '_ {
        let (lo, hi) = self.row_range(v);
        (lo..hi).map(move |i| (self.targets[i], self.weights[self.entry_edge[i]]))
    }

    /// Neighbors of `v` as `(neighbor, edge index)` pairs.
    pub fn neighbor_edges(&self, v: NodeId) -> impl ExactSizeIterator<Item = (NodeId, usize)> + '_ {
        let (lo, hi) = self.row_range(v);
        (lo..hi).map(move |i| (self.targets[i], self.entry_edge[i]))
    }

    #[inline]
    fn row_range(&self, v: NodeId) -> (usize, usize) {
        let v = v as usize;
        (self.offsets[v], self.offsets[v + 1])
    }

    /// Same topology with replaced edge weights (indexed like `edges()`); all must be positive.
    pub fn with_edge_weights(&self, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != self.edges.len() {
            return Err(GamError::input(format!("expected {} edge weights, got {}", self.edges.len(), weights.len())));
        }
        if let Some((e, w)) = weights.iter().enumerate().find(|(_, w)| !(w.is_finite() && **w > 0.0)) {
            return Err(GamError::input(format!("edge {:?} would get nonpositive weight {w}", self.edges[e])));
        }
        Ok(Self { weights, ..self.clone() })
    }

    /// Copy with every weight multiplied by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        self.with_edge_weights(self.weights.iter().map(|w| w * factor).collect())
    }

    /// Topology without weights.
    pub fn to_discrete(&self) -> DiscreteGraph {
        let (offsets, targets, _) = csr_from_pairs(self.num_nodes, &self.edges);
        DiscreteGraph { num_nodes: self.num_nodes, offsets, targets }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn adjacency(g: &DiscreteGraph) -> Vec<Vec<NodeId>> {
        (0..g.num_nodes() as NodeId).map(|v| g.neighbors(v).to_vec()).collect()
    }

    #[test]
    fn canonicalizes_duplicates_self_loops_and_direction() {
        let g = DiscreteGraph::from_edges(3, &[(0, 1), (1, 0), (1, 1), (1, 2)]).unwrap();
        assert_eq!(adjacency(&g), vec![vec![1], vec![0, 2], vec![1]]);
        assert_eq!(g.num_edges(), 2);
    }

    #[test]
    fn empty_edge_set() {
        let g = DiscreteGraph::from_edges(2, &[]).unwrap();
        assert_eq!(adjacency(&g), vec![Vec::<NodeId>::new(), vec![]]);
    }

    #[test]
    fn out_of_range_id_is_rejected() {
        let err = DiscreteGraph::from_edges(4, &[(0, 3), (4, 1)]).unwrap_err();
        assert!(matches!(err, GamError::Input(_)), "{err}");
    }

    #[test]
    fn neighbor_lists_are_sorted() {
        let g = DiscreteGraph::from_edges(6, &[(5, 2), (2, 0), (2, 4), (3, 2), (1, 2)]).unwrap();
        assert_eq!(g.neighbors(2), &[0, 1, 3, 4, 5]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 2), (1, 2), (2, 3), (2, 4), (2, 5)]);
    }

    #[test]
    fn rebuilding_from_canonical_edges_is_identity() {
        let g = DiscreteGraph::from_edges(5, &[(4, 0), (3, 1), (1, 3), (2, 2), (0, 1)]).unwrap();
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(DiscreteGraph::from_edges(5, &edges).unwrap(), g);
    }

    #[test]
    fn single_weighted_edge_is_symmetric() {
        let g = WeightedGraph::from_weighted_edges(2, &[(0, 1, 2.0)]).unwrap();
        assert_eq!(g.neighbors(0).collect::<Vec<_>>(), vec![(1, 2.0)]);
        assert_eq!(g.neighbors(1).collect::<Vec<_>>(), vec![(0, 2.0)]);
    }

    #[test]
    fn opposing_weights_are_averaged() {
        let g = WeightedGraph::from_weighted_edges(2, &[(0, 1, 1.0), (1, 0, 3.0)]).unwrap();
        assert_eq!(g.edge_weights(), &[2.0]);
    }

    #[test]
    fn negative_weight_is_rejected() {
        assert!(WeightedGraph::from_weighted_edges(2, &[(0, 1, -0.5)]).is_err());
    }

    #[test]
    fn duplicate_directed_entry_is_rejected() {
        assert!(WeightedGraph::from_weighted_edges(2, &[(0, 1, 1.0), (0, 1, 1.0)]).is_err());
    }

    #[test]
    fn zero_weights_are_dropped() {
        let g = WeightedGraph::from_weighted_edges(3, &[(0, 1, 0.0), (1, 2, 0.5)]).unwrap();
        assert_eq!(g.edges(), &[(1, 2)]);
        assert_eq!(g.neighbors(0).len(), 0);
    }

    #[test]
    fn weights_follow_their_edges_in_both_rows() {
        let g = WeightedGraph::from_weighted_edges(4, &[(0, 3, 1.0), (2, 0, 2.0), (1, 0, 3.0), (3, 1, 4.0)]).unwrap();
        assert_eq!(g.neighbors(0).collect::<Vec<_>>(), vec![(1, 3.0), (2, 2.0), (3, 1.0)]);
        assert_eq!(g.neighbors(1).collect::<Vec<_>>(), vec![(0, 3.0), (3, 4.0)]);
        assert_eq!(g.neighbors(3).collect::<Vec<_>>(), vec![(0, 1.0), (1, 4.0)]);
        assert_eq!(g.to_discrete().neighbors(0), &[1, 2, 3]);
    }

    #[test]
    fn with_edge_weights_rejects_nonpositive() {
        let g = WeightedGraph::from_weighted_edges(2, &[(0, 1, 1.0)]).unwrap();
        assert!(g.with_edge_weights(vec![0.0]).is_err());
        assert!(g.with_edge_weights(vec![1.0, 2.0]).is_err());
        assert_eq!(g.scaled(3.0).unwrap().edge_weights(), &[3.0]);
    }
}
