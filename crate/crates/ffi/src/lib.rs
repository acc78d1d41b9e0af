// SPDX-License-Identifier: Apache-2.0
//! C ABI for `gam-core`.
//!
//! Graphs and labels live behind opaque handles created by `*_new` / `*_load`
//! and released by the matching `*_free`. Every fallible call returns a
//! [`GamStatus`]; on failure [`gam_last_error`] describes the problem until
//! the next failing call on the same thread.
//!
//! Pointer contract: handles must come from this library and not be freed
//! twice; array arguments must point to at least the stated number of
//! elements (a null pointer is accepted only with length 0); strings are
//! NUL-terminated UTF-8. Output pointers may not be null unless documented.
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fs::File;
use std::io::BufReader;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use gam_core::io::{parse_edge_list, parse_labels, parse_weighted_matrix, WeightedLayout};
use gam_core::{
    ccns_matrix, continuous_ccns_matrix, continuous_homophily, continuous_regression_homophily,
    finite_difference_check, node_homophily, regression_homophily, CcnsMatrix, CcnsOptions, ClassLabels, DiscreteGraph,
    GamError, HomophilyResult, KHopExpander, NodeLabels, NodeSet, RegressionLabels, Task, WeightedGraph,
    WeightedMetric,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GamStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument was out of range (buffer too small, bad string, ...).
    InvalidArgument = 2,
    /// Structurally invalid graph, labels or node subset.
    InputError = 3,
    /// Labels of the wrong kind for the requested metric.
    TypeError = 4,
    /// Malformed input file.
    ParseError = 5,
    /// A class has no member in the evaluated node set.
    EmptyClass = 6,
    IoError = 7,
    /// Internal invariant violated; a bug in the library.
    InternalError = 8,
    /// A panic was caught at the boundary; a bug in the library.
    Panic = 9,
}

/// Opaque undirected, unweighted graph.
pub struct GamDiscreteGraph(DiscreteGraph);

/// Opaque undirected graph with positive edge weights.
pub struct GamWeightedGraph(WeightedGraph);

/// Opaque node labels: class ids or min-max normalized regression targets.
pub struct GamLabels(NodeLabels);

/// Summary of a homophily evaluation.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GamSummary {
    pub mean: f64,
    /// Population standard deviation over the scored nodes.
    pub std: f64,
    /// Nodes in the evaluated set.
    pub num_evaluated: usize,
    /// Evaluated nodes without a score (empty neighborhood or zero weight).
    pub num_excluded: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

enum Failure {
    Null(&'static str),
    Argument(String),
    Core(GamError),
}

impl From<GamError> for Failure {
    fn from(e: GamError) -> Self {
        Failure::Core(e)
    }
}

fn status_of(e: &GamError) -> GamStatus {
    match e {
        GamError::Input(_) => GamStatus::InputError,
        GamError::Type(_) => GamStatus::TypeError,
        GamError::Parse { .. } => GamStatus::ParseError,
        GamError::EmptyClass { .. } => GamStatus::EmptyClass,
        GamError::Io { .. } => GamStatus::IoError,
        GamError::Invariant(_) => GamStatus::InternalError,
    }
}

type Outcome = Result<(), Failure>;

fn guard(f: impl FnOnce() -> Outcome) -> GamStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GamStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_last_error(format!("null pointer passed as {what}"));
            GamStatus::NullPointer
        }
        Ok(Err(Failure::Argument(msg))) => {
            set_last_error(msg);
            GamStatus::InvalidArgument
        }
        Ok(Err(Failure::Core(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_last_error("panic inside gam".to_string());
            GamStatus::Panic
        }
    }
}

unsafe fn slice<'a, T>(ptr: *const T, len: usize, what: &'static str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(Failure::Null(what));
    }
    Ok(std::slice::from_raw_parts(ptr, len))
}

unsafe fn slice_mut<'a, T>(ptr: *mut T, len: usize, what: &'static str) -> Result<&'a mut [T], Failure> {
    if len == 0 {
        return Ok(&mut []);
    }
    if ptr.is_null() {
        return Err(Failure::Null(what));
    }
    Ok(std::slice::from_raw_parts_mut(ptr, len))
}

unsafe fn handle<'a, T>(ptr: *const T, what: &'static str) -> Result<&'a T, Failure> {
    ptr.as_ref().ok_or(Failure::Null(what))
}

unsafe fn out<'a, T>(ptr: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    ptr.as_mut().ok_or(Failure::Null(what))
}

unsafe fn path(ptr: *const c_char) -> Result<PathBuf, Failure> {
    if ptr.is_null() {
        return Err(Failure::Null("path"));
    }
    CStr::from_ptr(ptr).to_str().map(PathBuf::from).map_err(|_| Failure::Argument("path is not valid UTF-8".into()))
}

fn open(path: &PathBuf) -> Result<BufReader<File>, Failure> {
    File::open(path).map(BufReader::new).map_err(|e| Failure::Core(GamError::Io { path: path.clone(), source: e }))
}

unsafe fn pairs(edges: *const u32, num_edges: usize) -> Result<Vec<(u32, u32)>, Failure> {
    let flat = slice(edges, 2 * num_edges, "edges")?;
    Ok(flat.chunks_exact(2).map(|p| (p[0], p[1])).collect())
}

unsafe fn restrict_set(nodes: *const u32, len: usize, num_nodes: usize) -> Result<Option<NodeSet>, Failure> {
    if len == 0 {
        return Ok(None);
    }
    let nodes = slice(nodes, len, "restrict")?;
    Ok(Some(NodeSet::new(nodes.to_vec(), num_nodes)?))
}

fn boxed<T>(value: T, dest: &mut *mut T) {
    *dest = Box::into_raw(Box::new(value));
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn gam_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failure on this thread, or null. Owned by the library.
#[no_mangle]
pub extern "C" fn gam_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

// ------------------------------------------------------------------ graphs

/// Build a graph from `num_edges` pairs stored flat in `edges` (`u0 v0 u1 v1 ...`).
/// Duplicates and both orientations collapse; self-loops are dropped.
#[no_mangle]
pub unsafe extern "C" fn gam_discrete_graph_new(
    num_nodes: usize,
    edges: *const u32,
    num_edges: usize,
    out_graph: *mut *mut GamDiscreteGraph,
) -> GamStatus {
    guard(|| {
        let dest = out(out_graph, "out_graph")?;
        let g = DiscreteGraph::from_edges(num_nodes, &pairs(edges, num_edges)?)?;
        boxed(GamDiscreteGraph(g), dest);
        Ok(())
    })
}

/// Read an edge-list file (node count, then `u v` per line).
#[no_mangle]
pub unsafe extern "C" fn gam_discrete_graph_load(
    file: *const c_char,
    out_graph: *mut *mut GamDiscreteGraph,
) -> GamStatus {
    guard(|| {
        let dest = out(out_graph, "out_graph")?;
        let g = parse_edge_list(open(&path(file)?)?)?;
        boxed(GamDiscreteGraph(g), dest);
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn gam_discrete_graph_num_nodes(graph: *const GamDiscreteGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.num_nodes())
}

#[no_mangle]
pub unsafe extern "C" fn gam_discrete_graph_num_edges(graph: *const GamDiscreteGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.num_edges())
}

#[no_mangle]
pub unsafe extern "C" fn gam_discrete_graph_free(graph: *mut GamDiscreteGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Build a weighted graph from flat pairs and one weight per pair. Opposite
/// orientations of one edge are averaged; zero weights drop the entry.
#[no_mangle]
pub unsafe extern "C" fn gam_weighted_graph_new(
    num_nodes: usize,
    edges: *const u32,
    weights: *const f64,
    num_edges: usize,
    out_graph: *mut *mut GamWeightedGraph,
) -> GamStatus {
    guard(|| {
        let dest = out(out_graph, "out_graph")?;
        let w = slice(weights, num_edges, "weights")?;
        let entries: Vec<(u32, u32, f64)> =
            pairs(edges, num_edges)?.into_iter().zip(w).map(|((u, v), &x)| (u, v, x)).collect();
        boxed(GamWeightedGraph(WeightedGraph::from_weighted_edges(num_nodes, &entries)?), dest);
        Ok(())
    })
}

/// Read a weighted graph file: triplets (`dense == false`) or a dense matrix.
#[no_mangle]
pub unsafe extern "C" fn gam_weighted_graph_load(
    file: *const c_char,
    dense: bool,
    out_graph: *mut *mut GamWeightedGraph,
) -> GamStatus {
    guard(|| {
        let dest = out(out_graph, "out_graph")?;
        let layout = if dense { WeightedLayout::Dense } else { WeightedLayout::Triplets };
        let g = parse_weighted_matrix(open(&path(file)?)?, layout)?;
        boxed(GamWeightedGraph(g), dest);
        Ok(())
    })
}

/// Every edge of `graph` with the same positive `weight`.
#[no_mangle]
pub unsafe extern "C" fn gam_weighted_graph_from_discrete(
    graph: *const GamDiscreteGraph,
    weight: f64,
    out_graph: *mut *mut GamWeightedGraph,
) -> GamStatus {
    guard(|| {
        let g = handle(graph, "graph")?;
        let dest = out(out_graph, "out_graph")?;
        boxed(GamWeightedGraph(WeightedGraph::from_discrete(&g.0, weight)?), dest);
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn gam_weighted_graph_num_nodes(graph: *const GamWeightedGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.num_nodes())
}

#[no_mangle]
pub unsafe extern "C" fn gam_weighted_graph_num_edges(graph: *const GamWeightedGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.num_edges())
}

/// Copy the canonical edge list (`u < v`, sorted) into `out_edges` (2 entries
/// per edge) and, unless null, the weights into `out_weights`. Both buffers
/// must hold `capacity >= num_edges` edges. Gradients use this order.
#[no_mangle]
pub unsafe extern "C" fn gam_weighted_graph_edges(
    graph: *const GamWeightedGraph,
    out_edges: *mut u32,
    out_weights: *mut f64,
    capacity: usize,
) -> GamStatus {
    guard(|| {
        let g = &handle(graph, "graph")?.0;
        let m = g.num_edges();
        if capacity < m {
            return Err(Failure::Argument(format!("capacity {capacity} is below the edge count {m}")));
        }
        let flat = slice_mut(out_edges, 2 * m, "out_edges")?;
        for (dst, &(u, v)) in flat.chunks_exact_mut(2).zip(g.edges()) {
            dst[0] = u;
            dst[1] = v;
        }
        if !out_weights.is_null() {
            slice_mut(out_weights, m, "out_weights")?.copy_from_slice(g.edge_weights());
        }
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn gam_weighted_graph_free(graph: *mut GamWeightedGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

// ------------------------------------------------------------------ labels

/// Class labels; `num_classes == 0` infers it as the largest id plus one.
#[no_mangle]
pub unsafe extern "C" fn gam_labels_classes(
    ids: *const u32,
    len: usize,
    num_classes: usize,
    out_labels: *mut *mut GamLabels,
) -> GamStatus {
    guard(|| {
        let dest = out(out_labels, "out_labels")?;
        let ids = slice(ids, len, "ids")?.to_vec();
        let c =
            if num_classes == 0 { ClassLabels::new(ids)? } else { ClassLabels::with_num_classes(ids, num_classes)? };
        boxed(GamLabels(NodeLabels::Classification(c)), dest);
        Ok(())
    })
}

/// Real-valued targets, min-max normalized over all nodes.
#[no_mangle]
pub unsafe extern "C" fn gam_labels_regression(
    values: *const f64,
    len: usize,
    out_labels: *mut *mut GamLabels,
) -> GamStatus {
    guard(|| {
        let dest = out(out_labels, "out_labels")?;
        let y = RegressionLabels::normalize(slice(values, len, "values")?.to_vec())?;
        boxed(GamLabels(NodeLabels::Regression(y)), dest);
        Ok(())
    })
}

/// Read one label per line; `regression` selects real-valued targets.
#[no_mangle]
pub unsafe extern "C" fn gam_labels_load(
    file: *const c_char,
    regression: bool,
    out_labels: *mut *mut GamLabels,
) -> GamStatus {
    guard(|| {
        let dest = out(out_labels, "out_labels")?;
        let task = if regression { Task::Regression } else { Task::Classification };
        boxed(GamLabels(parse_labels(open(&path(file)?)?, task, None)?), dest);
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn gam_labels_len(labels: *const GamLabels) -> usize {
    labels.as_ref().map_or(0, |l| l.0.len())
}

#[no_mangle]
pub unsafe extern "C" fn gam_labels_free(labels: *mut GamLabels) {
    if !labels.is_null() {
        drop(Box::from_raw(labels));
    }
}

// ------------------------------------------------------------------ metrics

unsafe fn emit_homophily(
    result: HomophilyResult,
    num_nodes: usize,
    out_summary: &mut GamSummary,
    per_node: *mut f64,
    per_node_len: usize,
) -> Outcome {
    if !per_node.is_null() {
        if per_node_len != num_nodes {
            return Err(Failure::Argument(format!("per_node has {per_node_len} slots for {num_nodes} nodes")));
        }
        let dst = slice_mut(per_node, per_node_len, "per_node")?;
        dst.fill(f64::NAN);
        for (&v, s) in result.nodes.iter().zip(&result.per_node) {
            dst[v as usize] = s.unwrap_or(f64::NAN);
        }
    }
    *out_summary = GamSummary {
        mean: result.mean,
        std: result.std,
        num_evaluated: result.nodes.len(),
        num_excluded: result.num_excluded,
    };
    Ok(())
}

/// k-hop homophily: node homophily for class labels, its regression form for
/// real targets. `restrict` (nullable, length `restrict_len`) selects the
/// averaged nodes; neighborhoods use the whole graph. `per_node` (nullable)
/// receives one score per graph node, NaN where none exists.
#[no_mangle]
pub unsafe extern "C" fn gam_homophily(
    graph: *const GamDiscreteGraph,
    labels: *const GamLabels,
    k: usize,
    restrict: *const u32,
    restrict_len: usize,
    out_summary: *mut GamSummary,
    per_node: *mut f64,
    per_node_len: usize,
) -> GamStatus {
    guard(|| {
        let g = &handle(graph, "graph")?.0;
        let l = &handle(labels, "labels")?.0;
        let dest = out(out_summary, "out_summary")?;
        let set = restrict_set(restrict, restrict_len, g.num_nodes())?;
        let nbh = KHopExpander::new(g, k)?;
        let r = match l.task() {
            Task::Classification => node_homophily(l, &nbh, set.as_ref())?,
            Task::Regression => regression_homophily(l, &nbh, set.as_ref())?,
        };
        emit_homophily(r, g.num_nodes(), dest, per_node, per_node_len)
    })
}

/// Weighted homophily (class labels) or its regression form (real targets).
#[no_mangle]
pub unsafe extern "C" fn gam_continuous_homophily(
    graph: *const GamWeightedGraph,
    labels: *const GamLabels,
    restrict: *const u32,
    restrict_len: usize,
    out_summary: *mut GamSummary,
    per_node: *mut f64,
    per_node_len: usize,
) -> GamStatus {
    guard(|| {
        let g = &handle(graph, "graph")?.0;
        let l = &handle(labels, "labels")?.0;
        let dest = out(out_summary, "out_summary")?;
        let set = restrict_set(restrict, restrict_len, g.num_nodes())?;
        let r = match l.task() {
            Task::Classification => continuous_homophily(g, l, set.as_ref())?,
            Task::Regression => continuous_regression_homophily(g, l, set.as_ref())?,
        };
        emit_homophily(r, g.num_nodes(), dest, per_node, per_node_len)
    })
}

unsafe fn emit_ccns(
    m: CcnsMatrix,
    out_matrix: *mut f64,
    capacity: usize,
    out_num_classes: *mut usize,
    out_distance: *mut f64,
) -> Outcome {
    let c = m.num_classes();
    if let Some(n) = out_num_classes.as_mut() {
        *n = c;
    }
    if let Some(d) = out_distance.as_mut() {
        *d = m.distance();
    }
    if !out_matrix.is_null() {
        if capacity < c * c {
            return Err(Failure::Argument(format!("matrix capacity {capacity} is below {c} x {c}")));
        }
        slice_mut(out_matrix, c * c, "out_matrix")?.copy_from_slice(m.row_major());
    }
    Ok(())
}

/// k-hop CCNS matrix (row-major into `out_matrix`, `capacity >= C*C`) and its
/// distance from identity. Every output pointer is nullable.
#[no_mangle]
pub unsafe extern "C" fn gam_ccns(
    graph: *const GamDiscreteGraph,
    labels: *const GamLabels,
    k: usize,
    restrict: *const u32,
    restrict_len: usize,
    include_self_pairs: bool,
    out_matrix: *mut f64,
    capacity: usize,
    out_num_classes: *mut usize,
    out_distance: *mut f64,
) -> GamStatus {
    guard(|| {
        let g = &handle(graph, "graph")?.0;
        let l = &handle(labels, "labels")?.0;
        let set = restrict_set(restrict, restrict_len, g.num_nodes())?;
        let m = ccns_matrix(l, &KHopExpander::new(g, k)?, set.as_ref(), CcnsOptions { include_self_pairs })?;
        emit_ccns(m, out_matrix, capacity, out_num_classes, out_distance)
    })
}

/// CCNS on weighted neighbor-label histograms; outputs as in [`gam_ccns`].
#[no_mangle]
pub unsafe extern "C" fn gam_continuous_ccns(
    graph: *const GamWeightedGraph,
    labels: *const GamLabels,
    restrict: *const u32,
    restrict_len: usize,
    include_self_pairs: bool,
    out_matrix: *mut f64,
    capacity: usize,
    out_num_classes: *mut usize,
    out_distance: *mut f64,
) -> GamStatus {
    guard(|| {
        let g = &handle(graph, "graph")?.0;
        let l = &handle(labels, "labels")?.0;
        let set = restrict_set(restrict, restrict_len, g.num_nodes())?;
        let m = continuous_ccns_matrix(g, l, set.as_ref(), CcnsOptions { include_self_pairs })?;
        emit_ccns(m, out_matrix, capacity, out_num_classes, out_distance)
    })
}

fn weighted_metric(labels: &NodeLabels) -> WeightedMetric {
    match labels.task() {
        Task::Classification => WeightedMetric::ContinuousHomophily,
        Task::Regression => WeightedMetric::ContinuousRegressionHomophily,
    }
}

/// Gradient of the weighted homophily mean with respect to each edge weight,
/// in the order of [`gam_weighted_graph_edges`]; `capacity >= num_edges`.
#[no_mangle]
pub unsafe extern "C" fn gam_gradient(
    graph: *const GamWeightedGraph,
    labels: *const GamLabels,
    out_gradient: *mut f64,
    capacity: usize,
) -> GamStatus {
    guard(|| {
        let g = &handle(graph, "graph")?.0;
        let l = &handle(labels, "labels")?.0;
        let m = g.num_edges();
        if capacity < m {
            return Err(Failure::Argument(format!("capacity {capacity} is below the edge count {m}")));
        }
        let grad = weighted_metric(l).gradient(g, l)?;
        slice_mut(out_gradient, m, "out_gradient")?.copy_from_slice(&grad.values);
        Ok(())
    })
}

/// Largest relative error between the analytic gradient and central
/// differences with the given step.
#[no_mangle]
pub unsafe extern "C" fn gam_gradient_check(
    graph: *const GamWeightedGraph,
    labels: *const GamLabels,
    step: f64,
    out_max_relative_error: *mut f64,
) -> GamStatus {
    guard(|| {
        let g = &handle(graph, "graph")?.0;
        let l = &handle(labels, "labels")?.0;
        let dest = out(out_max_relative_error, "out_max_relative_error")?;
        *dest = finite_difference_check(g, l, weighted_metric(l), step)?.max_relative_error;
        Ok(())
    })
}
