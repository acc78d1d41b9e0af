// SPDX-License-Identifier: Apache-2.0
//! Line-oriented text formats.
//!
//! * edge list: node count, then `u v` per line
//! * weighted triplets: node count, then `u v w` per line
//! * dense weights: node count, then `n` rows of `n` reals
//! * labels and splits: one token per line, line `i` describes node `i`
//!
//! Blank lines and lines starting with `#` are ignored. Line numbers in
//! errors are 1-based positions in the original text.

use std::io::{BufRead, Write};
use std::str::FromStr;

use crate::error::{GamError, Result};
use crate::graph::{DiscreteGraph, NodeId, WeightedGraph};
use crate::labels::{ClassLabels, NodeLabels, RegressionLabels, Split, SplitMask, Task};

/// Layout of a weighted graph file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightedLayout {
    Triplets,
    Dense,
}

impl FromStr for WeightedLayout {
    type Err = GamError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "triplets" => Ok(WeightedLayout::Triplets),
            "dense" => Ok(WeightedLayout::Dense),
            other => Err(GamError::input(format!("unknown weighted layout {other:?}"))),
        }
    }
}

/// Maximum tolerated |a_ij - a_ji| in a dense matrix.
pub const DENSE_SYMMETRY_TOLERANCE: f64 = 1e-9;

struct Lines<R> {
    inner: std::io::Lines<R>,
    line: usize,
}

impl<R: BufRead> Lines<R> {
    fn new(reader: R) -> Self {
        Self { inner: reader.lines(), line: 0 }
    }

    /// Next meaningful line as (line number, trimmed content).
    fn next_data(&mut self) -> Result<Option<(usize, String)>> {
        for text in self.inner.by_ref() {
            self.line += 1;
            let text = text.map_err(|e| GamError::parse(self.line, format!("unreadable line: {e}")))?;
            let trimmed = text.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            return Ok(Some((self.line, trimmed.to_string())));
        }
        Ok(None)
    }

    fn header(&mut self) -> Result<usize> {
        let (line, text) =
            self.next_data()?.ok_or_else(|| GamError::parse(self.line.max(1), "missing node count header"))?;
        let mut tokens = text.split_whitespace();
        let n = parse_token::<usize>(tokens.next().unwrap_or(""), line, "node count")?;
        if tokens.next().is_some() {
            return Err(GamError::parse(line, "node count header must be a single integer"));
        }
        if n > NodeId::MAX as usize {
            return Err(GamError::parse(line, format!("node count {n} is too large")));
        }
        Ok(n)
    }
}

fn parse_token<T: FromStr>(token: &str, line: usize, what: &str) -> Result<T> {
    token.parse().map_err(|_| GamError::parse(line, format!("expected {what}, found {token:?}")))
}

fn parse_node(token: &str, line: usize, num_nodes: usize) -> Result<NodeId> {
    let id: NodeId = parse_token(token, line, "node id")?;
    if id as usize >= num_nodes {
        return Err(GamError::parse(line, format!("node id {id} out of range for {num_nodes} nodes")));
    }
    Ok(id)
}

fn exact_tokens<'a>(text: &'a str, line: usize, expected: usize, what: &str) -> Result<Vec<&'a str>> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.len() != expected {
        return Err(GamError::parse(
            line,
            format!("expected {what} ({expected} fields), found {} fields", tokens.len()),
        ));
    }
    Ok(tokens)
}

/// Parse an unweighted edge list.
pub fn parse_edge_list(reader: impl BufRead) -> Result<DiscreteGraph> {
    let mut lines = Lines::new(reader);
    let n = lines.header()?;
    let mut edges = Vec::new();
    while let Some((line, text)) = lines.next_data()? {
        let t = exact_tokens(&text, line, 2, "`u v`")?;
        edges.push((parse_node(t[0], line, n)?, parse_node(t[1], line, n)?));
    }
    DiscreteGraph::from_edges(n, &edges)
}

fn parse_weight(token: &str, line: usize) -> Result<f64> {
    let w: f64 = parse_token(token, line, "edge weight")?;
    if !w.is_finite() || w < 0.0 {
        return Err(GamError::parse(line, format!("edge weight {token} must be finite and nonnegative")));
    }
    Ok(w)
}

/// Parse a weighted graph in either layout.
pub fn parse_weighted_matrix(reader: impl BufRead, layout: WeightedLayout) -> Result<WeightedGraph> {
    let mut lines = Lines::new(reader);
    let n = lines.header()?;
    match layout {
        WeightedLayout::Triplets => {
            let mut entries = Vec::new();
            while let Some((line, text)) = lines.next_data()? {
                let t = exact_tokens(&text, line, 3, "`u v w`")?;
                entries.push((parse_node(t[0], line, n)?, parse_node(t[1], line, n)?, parse_weight(t[2], line)?));
            }
            WeightedGraph::from_weighted_edges(n, &entries)
        }
        WeightedLayout::Dense => {
            let mut rows: Vec<(usize, Vec<f64>)> = Vec::with_capacity(n);
            while let Some((line, text)) = lines.next_data()? {
                if rows.len() == n {
                    return Err(GamError::parse(line, format!("more than {n} matrix rows")));
                }
                let t = exact_tokens(&text, line, n, "a matrix row")?;
                let row = t.iter().map(|tok| parse_weight(tok, line)).collect::<Result<Vec<_>>>()?;
                if row[rows.len()] != 0.0 {
                    return Err(GamError::parse(line, "diagonal entries must be zero"));
                }
                rows.push((line, row));
            }
            if rows.len() != n {
                return Err(GamError::parse(lines.line, format!("expected {n} matrix rows, found {}", rows.len())));
            }
            let mut entries = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    let (a, b) = (rows[i].1[j], rows[j].1[i]);
                    if (a - b).abs() > DENSE_SYMMETRY_TOLERANCE {
                        return Err(GamError::parse(
                            rows[j].0,
                            format!("matrix is not symmetric: a[{i}][{j}] = {a}, a[{j}][{i}] = {b}"),
                        ));
                    }
                    if a > 0.0 || b > 0.0 {
                        entries.push((i as NodeId, j as NodeId, a));
                        entries.push((j as NodeId, i as NodeId, b));
                    }
                }
            }
            WeightedGraph::from_weighted_edges(n, &entries)
        }
    }
}

fn tokens_per_line(reader: impl BufRead) -> Result<Vec<(usize, String)>> {
    let mut lines = Lines::new(reader);
    let mut out = Vec::new();
    while let Some((line, text)) = lines.next_data()? {
        exact_tokens(&text, line, 1, "a single value")?;
        out.push((line, text));
    }
    Ok(out)
}

fn check_count(found: usize, expected: Option<usize>, what: &str) -> Result<()> {
    match expected {
        Some(n) if n != found => Err(GamError::input(format!("{found} {what} for a graph with {n} nodes"))),
        _ => Ok(()),
    }
}

/// Parse one label per line. Regression values are min-max normalized on load.
pub fn parse_labels(reader: impl BufRead, task: Task, expected_nodes: Option<usize>) -> Result<NodeLabels> {
    let tokens = tokens_per_line(reader)?;
    check_count(tokens.len(), expected_nodes, "labels")?;
    match task {
        Task::Classification => {
            let ids = tokens
                .iter()
                .map(|(line, t)| parse_token::<u32>(t, *line, "a nonnegative integer class id"))
                .collect::<Result<Vec<_>>>()?;
            Ok(NodeLabels::Classification(ClassLabels::new(ids)?))
        }
        Task::Regression => {
            let raw = tokens
                .iter()
                .map(|(line, t)| {
                    let y: f64 = parse_token(t, *line, "a real label")?;
                    if !y.is_finite() {
                        return Err(GamError::parse(*line, format!("label {t} is not finite")));
                    }
                    Ok(y)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(NodeLabels::Regression(RegressionLabels::normalize(raw)?))
        }
    }
}

/// Parse one split tag per line.
pub fn parse_splits(reader: impl BufRead, expected_nodes: Option<usize>) -> Result<SplitMask> {
    let tokens = tokens_per_line(reader)?;
    check_count(tokens.len(), expected_nodes, "split tags")?;
    let tags = tokens
        .iter()
        .map(|(line, t)| t.parse::<Split>().map_err(|_| GamError::parse(*line, format!("unknown split tag {t:?}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(SplitMask::new(tags))
}

/// Parse a feature table: one node per line, whitespace-separated reals, equal width.
pub fn parse_features(reader: impl BufRead) -> Result<Vec<Vec<f64>>> {
    let mut lines = Lines::new(reader);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    while let Some((line, text)) = lines.next_data()? {
        let row = text
            .split_whitespace()
            .map(|t| {
                let x: f64 = parse_token(t, line, "a real feature")?;
                if !x.is_finite() {
                    return Err(GamError::parse(line, format!("feature {t} is not finite")));
                }
                Ok(x)
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(GamError::parse(
                    line,
                    format!("row has {} features, earlier rows have {}", row.len(), first.len()),
                ));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(GamError::input("feature table is empty"));
    }
    Ok(rows)
}

pub fn write_features(features: &[Vec<f64>], mut out: impl Write) -> std::io::Result<()> {
    for row in features {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:?}")).collect();
        writeln!(out, "{}", cells.join(" "))?;
    }
    Ok(())
}

pub fn write_edge_list(graph: &DiscreteGraph, mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "{}", graph.num_nodes())?;
    for (u, v) in graph.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

/// Triplets with both orientations omitted: one `u v w` line per undirected edge.
pub fn write_triplets(graph: &WeightedGraph, mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "{}", graph.num_nodes())?;
    for (&(u, v), w) in graph.edges().iter().zip(graph.edge_weights()) {
        writeln!(out, "{u} {v} {w:?}")?;
    }
    Ok(())
}

pub fn write_labels(labels: &NodeLabels, mut out: impl Write) -> std::io::Result<()> {
    match labels {
        NodeLabels::Classification(c) => {
            for id in c.ids() {
                writeln!(out, "{id}")?;
            }
        }
        NodeLabels::Regression(r) => {
            for y in r.raw() {
                writeln!(out, "{y:?}")?;
            }
        }
    }
    Ok(())
}

pub fn write_splits(mask: &SplitMask, mut out: impl Write) -> std::io::Result<()> {
    for s in mask.assignment() {
        writeln!(out, "{s}")?;
    }
    Ok(())
}
