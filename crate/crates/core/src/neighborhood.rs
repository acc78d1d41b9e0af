// SPDX-License-Identifier: Apache-2.0
//! Cumulative k-hop neighborhoods: every node within shortest-path distance
//! `1..=k` of the source, the source itself excluded.
//!
//! Two interchangeable sources implement [`Neighborhoods`]:
//! [`KHopNeighborhoods`] materializes all lists up front, [`KHopExpander`]
//! runs a bounded BFS per query so memory stays `O(n)` per thread on large graphs.
//! Both return the same sorted lists.

use crate::error::{GamError, Result};
use crate::graph::{DiscreteGraph, NodeId};
use rayon::prelude::*;

/// A queryable family of per-node neighborhoods.
pub trait Neighborhoods: Sync {
    /// Per-thread working memory.
    type Scratch: Send;

    fn num_nodes(&self) -> usize;
    fn hops(&self) -> usize;
    fn scratch(&self) -> Self::Scratch;
    /// Sorted neighborhood of `v`.
    fn neighbors<'a>(&'a self, v: NodeId, scratch: &'a mut Self::Scratch) -> &'a [NodeId];
}

fn check_hops(k: usize) -> Result<()> {
    if k == 0 {
        return Err(GamError::input("hop count k must be at least 1"));
    }
    Ok(())
}

/// Reusable BFS state: visit stamps let consecutive searches skip clearing.
#[derive(Debug, Clone)]
pub struct BfsScratch {
    stamp: Vec<u32>,
    epoch: u32,
    frontier: Vec<NodeId>,
    next: Vec<NodeId>,
    found: Vec<NodeId>,
}

impl BfsScratch {
    pub fn new(num_nodes: usize) -> Self {
        Self { stamp: vec![0; num_nodes], epoch: 0, frontier: Vec::new(), next: Vec::new(), found: Vec::new() }
    }

    /// Collect the `k`-hop ball around `source` (source excluded) into `self.found`, sorted.
    fn expand(&mut self, graph: &DiscreteGraph, source: NodeId, k: usize) -> &[NodeId] {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
        let epoch = self.epoch;
        self.found.clear();
        self.frontier.clear();
        self.frontier.push(source);
        self.stamp[source as usize] = epoch;
        for hop in 0..k {
            self.next.clear();
            for &x in &self.frontier {
                for &y in graph.neighbors(x) {
                    let seen = &mut self.stamp[y as usize];
                    if *seen != epoch {
                        *seen = epoch;
                        self.next.push(y);
                    }
                }
            }
            self.found.extend_from_slice(&self.next);
            if self.next.is_empty() || hop + 1 == k {
                break;
            }
            std::mem::swap(&mut self.frontier, &mut self.next);
        }
        self.found.sort_unstable();
        &self.found
    }
}

/// Streaming k-hop source backed by a per-query bounded BFS.
#[derive(Debug, Clone, Copy)]
pub struct KHopExpander<'g> {
    graph: &'g DiscreteGraph,
    k: usize,
}

impl<'g> KHopExpander<'g> {
    pub fn new(graph: &'g DiscreteGraph, k: usize) -> Result<Self> {
        check_hops(k)?;
        Ok(Self { graph, k })
    }

    pub fn graph(&self) -> &'g DiscreteGraph {
        self.graph
    }
}

impl Neighborhoods for KHopExpander<'_> {
    type Scratch = BfsScratch;

    fn num_nodes(&self) -> usize {
        self.graph.num_nodes()
    }

    fn hops(&self) -> usize {
        self.k
    }

    fn scratch(&self) -> BfsScratch {
        BfsScratch::new(self.graph.num_nodes())
    }

    fn neighbors<'a>(&'a self, v: NodeId, scratch: &'a mut BfsScratch) -> &'a [NodeId] {
        if self.k == 1 {
            return self.graph.neighbors(v);
        }
        scratch.expand(self.graph, v, self.k)
    }
}

/// Materialized k-hop neighborhoods in CSR layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KHopNeighborhoods {
    k: usize,
    offsets: Vec<usize>,
    members: Vec<NodeId>,
}

impl KHopNeighborhoods {
    pub fn hops(&self) -> usize {
        self.k
    }

    pub fn num_nodes(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn of(&self, v: NodeId) -> &[NodeId] {
        let v = v as usize;
        &self.members[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Total number of (source, member) pairs.
    pub fn total_size(&self) -> usize {
        self.members.len()
    }
}

impl Neighborhoods for KHopNeighborhoods {
    type Scratch = ();

    fn num_nodes(&self) -> usize {
        KHopNeighborhoods::num_nodes(self)
    }

    fn hops(&self) -> usize {
        self.k
    }

    fn scratch(&self) {}

    fn neighbors<'a>(&'a self, v: NodeId, _: &'a mut ()) -> &'a [NodeId] {
        self.of(v)
    }
}

/// Materialize `N^(k)_v` for every node. Sources are expanded in parallel.
pub fn khop_neighborhoods(graph: &DiscreteGraph, k: usize) -> Result<KHopNeighborhoods> {
    let expander = KHopExpander::new(graph, k)?;
    let lists: Vec<Vec<NodeId>> = (0..graph.num_nodes() as NodeId)
        .into_par_iter()
        .map_init(|| expander.scratch(), |scratch, v| expander.neighbors(v, scratch).to_vec())
        .collect();
    let mut offsets = Vec::with_capacity(lists.len() + 1);
    offsets.push(0);
    for l in &lists {
        offsets.push(offsets.last().unwrap() + l.len());
    }
    Ok(KHopNeighborhoods { k, offsets, members: lists.concat() })
}
