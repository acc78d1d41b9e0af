// SPDX-License-Identifier: Apache-2.0
//! Text input formats and metric reports.

pub mod parse;
pub mod report;
pub mod snapshot;

pub use parse::{
    parse_edge_list, parse_features, parse_labels, parse_splits, parse_weighted_matrix, write_edge_list,
    write_features, write_labels, write_splits, write_triplets, WeightedLayout,
};
pub use report::{write_report, Record, ReportFormat, ReportWriter};
pub use snapshot::{
    load_graph, load_snapshot_sequence, parse_snapshot_sequence, AnyGraph, GraphLayout, Snapshot, SnapshotSequence,
};
