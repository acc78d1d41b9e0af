// SPDX-License-Identifier: Apache-2.0
//! Snapshot manifests: one graph state per line, captured while a graph
//! structure is being learned, with an optional performance value.
//!
//! ```text
//! # step <idx> graph <path> [perf <real>] [layout <edges|triplets|dense>]
//! step 0 graph epoch000.txt perf 0.61
//! step 10 graph epoch010.txt perf 0.74
//! ```
//!
//! Relative paths resolve against the manifest's directory.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{GamError, Result};
use crate::graph::{DiscreteGraph, WeightedGraph};
use crate::io::parse::{parse_edge_list, parse_weighted_matrix, WeightedLayout};

/// File format of a snapshot graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphLayout {
    Edges,
    Weighted(WeightedLayout),
}

impl FromStr for GraphLayout {
    type Err = GamError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edges" => Ok(GraphLayout::Edges),
            other => other.parse().map(GraphLayout::Weighted),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AnyGraph {
    Discrete(DiscreteGraph),
    Weighted(WeightedGraph),
}

impl AnyGraph {
    pub fn num_nodes(&self) -> usize {
        match self {
            AnyGraph::Discrete(g) => g.num_nodes(),
            AnyGraph::Weighted(g) => g.num_nodes(),
        }
    }

    pub fn is_weighted(&self) -> bool {
        matches!(self, AnyGraph::Weighted(_))
    }
}

/// Read a graph file in the given layout.
pub fn load_graph(path: &Path, layout: GraphLayout) -> Result<AnyGraph> {
    let file = File::open(path).map_err(|e| GamError::io(path, e))?;
    let reader = BufReader::new(file);
    let graph = match layout {
        GraphLayout::Edges => parse_edge_list(reader).map(AnyGraph::Discrete),
        GraphLayout::Weighted(l) => parse_weighted_matrix(reader, l).map(AnyGraph::Weighted),
    };
    graph.map_err(|e| match e {
        GamError::Parse { line, message } => GamError::Input(format!("{}:{line}: {message}", path.display())),
        other => other,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub step: u64,
    pub path: PathBuf,
    pub graph: AnyGraph,
    pub performance: Option<f64>,
}

/// Ordered graph states sharing one node set.
#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotSequence {
    pub steps: Vec<Snapshot>,
}

impl SnapshotSequence {
    pub fn num_nodes(&self) -> usize {
        self.steps.first().map_or(0, |s| s.graph.num_nodes())
    }

    pub fn is_weighted(&self) -> bool {
        self.steps.first().is_some_and(|s| s.graph.is_weighted())
    }

    /// Performance series, if every step carries one.
    pub fn performance(&self) -> Option<Vec<f64>> {
        self.steps.iter().map(|s| s.performance).collect()
    }
}

/// Parse a manifest; graphs are loaded eagerly. `default_layout` applies to
/// lines without a `layout` key.
pub fn parse_snapshot_sequence(
    manifest: impl BufRead,
    base_dir: &Path,
    default_layout: GraphLayout,
) -> Result<SnapshotSequence> {
    let mut steps: Vec<Snapshot> = Vec::new();
    for (idx, text) in manifest.lines().enumerate() {
        let line = idx + 1;
        let text = text.map_err(|e| GamError::parse(line, format!("unreadable line: {e}")))?;
        let text = text.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if !tokens.len().is_multiple_of(2) {
            return Err(GamError::parse(line, "expected `key value` pairs"));
        }
        let (mut step, mut graph, mut perf, mut layout) = (None, None, None, default_layout);
        for pair in tokens.chunks(2) {
            let (key, value) = (pair[0], pair[1]);
            let bad = |what: &str| GamError::parse(line, format!("invalid {what} {value:?}"));
            match key {
                "step" => step = Some(value.parse::<u64>().map_err(|_| bad("step index"))?),
                "graph" => graph = Some(value),
                "perf" => {
                    let p: f64 = value.parse().map_err(|_| bad("performance"))?;
                    if !p.is_finite() {
                        return Err(bad("performance"));
                    }
                    perf = Some(p);
                }
                "layout" => layout = value.parse().map_err(|_| bad("layout"))?,
                other => return Err(GamError::parse(line, format!("unknown key {other:?}"))),
            }
        }
        let step = step.ok_or_else(|| GamError::parse(line, "missing `step`"))?;
        let graph = graph.ok_or_else(|| GamError::parse(line, "missing `graph`"))?;
        if let Some(prev) = steps.last() {
            if step <= prev.step {
                return Err(GamError::parse(line, format!("step {step} does not increase past step {}", prev.step)));
            }
        }
        let path = base_dir.join(graph);
        let loaded = load_graph(&path, layout)?;
        if let Some(first) = steps.first() {
            if loaded.num_nodes() != first.graph.num_nodes() {
                return Err(GamError::parse(
                    line,
                    format!("graph has {} nodes, earlier steps have {}", loaded.num_nodes(), first.graph.num_nodes()),
                ));
            }
            if loaded.is_weighted() != first.graph.is_weighted() {
                return Err(GamError::parse(line, "discrete and weighted snapshots cannot be mixed"));
            }
        }
        steps.push(Snapshot { step, path, graph: loaded, performance: perf });
    }
    if steps.is_empty() {
        return Err(GamError::input("snapshot manifest lists no steps"));
    }
    Ok(SnapshotSequence { steps })
}

/// Read a manifest file, resolving graph paths next to it.
pub fn load_snapshot_sequence(manifest: &Path, default_layout: GraphLayout) -> Result<SnapshotSequence> {
    let file = File::open(manifest).map_err(|e| GamError::io(manifest, e))?;
    let base = manifest.parent().unwrap_or_else(|| Path::new("."));
    parse_snapshot_sequence(BufReader::new(file), base, default_layout)
}
