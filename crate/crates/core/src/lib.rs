// SPDX-License-Identifier: Apache-2.0
//! Graph assessment metrics for node-level tasks.
//!
//! Homophily over k-hop neighborhoods for class and regression labels, its
//! weighted generalization for learned (continuous) adjacency, analytic
//! edge-weight gradients of the weighted variants, and cross-class
//! neighborhood similarity (CCNS) with its scalar distance from identity.
//!
//! ```
//! use gam_core::{node_homophily, ClassLabels, DiscreteGraph, KHopExpander, NodeLabels};
//!
//! let g = DiscreteGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
//! let labels = NodeLabels::Classification(ClassLabels::new(vec![0, 0, 1]).unwrap());
//! let h = node_homophily(&labels, &KHopExpander::new(&g, 1).unwrap(), None).unwrap();
//! assert_eq!(h.mean, 0.5);
//! ```

pub mod ccns;
pub mod cli;
pub mod error;
pub mod gradient;
pub mod graph;
pub mod homophily;
pub mod io;
pub mod labels;
pub mod neighborhood;
pub mod stats;
pub mod synth;
pub mod trajectory;

pub use ccns::{ccns_distance, ccns_matrix, continuous_ccns_matrix, CcnsMatrix, CcnsMode, CcnsOptions};
pub use error::{GamError, Result};
pub use gradient::{
    check_gradient, finite_difference_check, grad_continuous_homophily, grad_continuous_regression_homophily,
    GradientCheckReport, MetricGradient, WeightedMetric,
};
pub use graph::{DiscreteGraph, NodeId, WeightedGraph};
pub use homophily::{
    continuous_homophily, continuous_regression_homophily, node_homophily, regression_homophily, HomophilyResult,
};
pub use labels::{ClassLabels, NodeLabels, NodeSet, RegressionLabels, Split, SplitMask, Task};
pub use neighborhood::{khop_neighborhoods, KHopExpander, KHopNeighborhoods, Neighborhoods};
pub use synth::{generate_synthetic, knn_graph, SyntheticDataset, SyntheticSpec, SyntheticTask};
pub use trajectory::{analyze_trajectory, TrackedMetric, TrajectoryAnalysis, TrajectoryOptions};
