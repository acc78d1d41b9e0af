/* SPDX-License-Identifier: Apache-2.0 */

#ifndef GAM_H
#define GAM_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum GamStatus {
  GAM_STATUS_OK = 0,
  // A required pointer argument was null.
  GAM_STATUS_NULL_POINTER = 1,
  // An argument was out of range (buffer too small, bad string, ...).
  GAM_STATUS_INVALID_ARGUMENT = 2,
  // Structurally invalid graph, labels or node subset.
  GAM_STATUS_INPUT_ERROR = 3,
  // Labels of the wrong kind for the requested metric.
  GAM_STATUS_TYPE_ERROR = 4,
  // Malformed input file.
  GAM_STATUS_PARSE_ERROR = 5,
  // A class has no member in the evaluated node set.
  GAM_STATUS_EMPTY_CLASS = 6,
  GAM_STATUS_IO_ERROR = 7,
  // Internal invariant violated; a bug in the library.
  GAM_STATUS_INTERNAL_ERROR = 8,
  // A panic was caught at the boundary; a bug in the library.
  GAM_STATUS_PANIC = 9,
} GamStatus;

// Opaque undirected, unweighted graph.
typedef struct GamDiscreteGraph GamDiscreteGraph;

// Opaque node labels: class ids or min-max normalized regression targets.
typedef struct GamLabels GamLabels;

// Opaque undirected graph with positive edge weights.
typedef struct GamWeightedGraph GamWeightedGraph;

// Summary of a homophily evaluation.
typedef struct GamSummary {
  double mean;
  // Population standard deviation over the scored nodes.
  double std;
  // Nodes in the evaluated set.
  size_t num_evaluated;
  // Evaluated nodes without a score (empty neighborhood or zero weight).
  size_t num_excluded;
} GamSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *gam_version(void);

// Message of the last failure on this thread, or null. Owned by the library.
const char *gam_last_error(void);

// Build a graph from `num_edges` pairs stored flat in `edges` (`u0 v0 u1 v1 ...`).
// Duplicates and both orientations collapse; self-loops are dropped.
enum GamStatus gam_discrete_graph_new(size_t num_nodes,
                                      const uint32_t *edges,
                                      size_t num_edges,
                                      struct GamDiscreteGraph **out_graph);

// Read an edge-list file (node count, then `u v` per line).
enum GamStatus gam_discrete_graph_load(const char *file, struct GamDiscreteGraph **out_graph);

size_t gam_discrete_graph_num_nodes(const struct GamDiscreteGraph *graph);

size_t gam_discrete_graph_num_edges(const struct GamDiscreteGraph *graph);

void gam_discrete_graph_free(struct GamDiscreteGraph *graph);

// Build a weighted graph from flat pairs and one weight per pair. Opposite
// orientations of one edge are averaged; zero weights drop the entry.
enum GamStatus gam_weighted_graph_new(size_t num_nodes,
                                      const uint32_t *edges,
                                      const double *weights,
                                      size_t num_edges,
                                      struct GamWeightedGraph **out_graph);

// Read a weighted graph file: triplets (`dense == false`) or a dense matrix.
enum GamStatus gam_weighted_graph_load(const char *file,
                                       bool dense,
                                       struct GamWeightedGraph **out_graph);

// Every edge of `graph` with the same positive `weight`.
enum GamStatus gam_weighted_graph_from_discrete(const struct GamDiscreteGraph *graph,
                                                double weight,
                                                struct GamWeightedGraph **out_graph);

size_t gam_weighted_graph_num_nodes(const struct GamWeightedGraph *graph);

size_t gam_weighted_graph_num_edges(const struct GamWeightedGraph *graph);

// Copy the canonical edge list (`u < v`, sorted) into `out_edges` (2 entries
// per edge) and, unless null, the weights into `out_weights`. Both buffers
// must hold `capacity >= num_edges` edges. Gradients use this order.
enum GamStatus gam_weighted_graph_edges(const struct GamWeightedGraph *graph,
                                        uint32_t *out_edges,
                                        double *out_weights,
                                        size_t capacity);

void gam_weighted_graph_free(struct GamWeightedGraph *graph);

// Class labels; `num_classes == 0` infers it as the largest id plus one.
enum GamStatus gam_labels_classes(const uint32_t *ids,
                                  size_t len,
                                  size_t num_classes,
                                  struct GamLabels **out_labels);

// Real-valued targets, min-max normalized over all nodes.
enum GamStatus gam_labels_regression(const double *values,
                                     size_t len,
                                     struct GamLabels **out_labels);

// Read one label per line; `regression` selects real-valued targets.
enum GamStatus gam_labels_load(const char *file, bool regression, struct GamLabels **out_labels);

size_t gam_labels_len(const struct GamLabels *labels);

void gam_labels_free(struct GamLabels *labels);

// k-hop homophily: node homophily for class labels, its regression form for
// real targets. `restrict` (nullable, length `restrict_len`) selects the
// averaged nodes; neighborhoods use the whole graph. `per_node` (nullable)
// receives one score per graph node, NaN where none exists.
enum GamStatus gam_homophily(const struct GamDiscreteGraph *graph,
                             const struct GamLabels *labels,
                             size_t k,
                             const uint32_t *restrict,
                             size_t restrict_len,
                             struct GamSummary *out_summary,
                             double *per_node,
                             size_t per_node_len);

// Weighted homophily (class labels) or its regression form (real targets).
enum GamStatus gam_continuous_homophily(const struct GamWeightedGraph *graph,
                                        const struct GamLabels *labels,
                                        const uint32_t *restrict,
                                        size_t restrict_len,
                                        struct GamSummary *out_summary,
                                        double *per_node,
                                        size_t per_node_len);

// k-hop CCNS matrix (row-major into `out_matrix`, `capacity >= C*C`) and its
// distance from identity. Every output pointer is nullable.
enum GamStatus gam_ccns(const struct GamDiscreteGraph *graph,
                        const struct GamLabels *labels,
                        size_t k,
                        const uint32_t *restrict,
                        size_t restrict_len,
                        bool include_self_pairs,
                        double *out_matrix,
                        size_t capacity,
                        size_t *out_num_classes,
                        double *out_distance);

// CCNS on weighted neighbor-label histograms; outputs as in [`gam_ccns`].
enum GamStatus gam_continuous_ccns(const struct GamWeightedGraph *graph,
                                   const struct GamLabels *labels,
                                   const uint32_t *restrict,
                                   size_t restrict_len,
                                   bool include_self_pairs,
                                   double *out_matrix,
                                   size_t capacity,
                                   size_t *out_num_classes,
                                   double *out_distance);

// Gradient of the weighted homophily mean with respect to each edge weight,
// in the order of [`gam_weighted_graph_edges`]; `capacity >= num_edges`.
enum GamStatus gam_gradient(const struct GamWeightedGraph *graph,
                            const struct GamLabels *labels,
                            double *out_gradient,
                            size_t capacity);

// Largest relative error between the analytic gradient and central
// differences with the given step.
enum GamStatus gam_gradient_check(const struct GamWeightedGraph *graph,
                                  const struct GamLabels *labels,
                                  double step,
                                  double *out_max_relative_error);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GAM_H */
