#pragma once

#include <cstdint>
#include <vector>

#include "baco/common.hpp"
#include "baco/graph.hpp"
#include "baco/weights.hpp"

namespace baco {

// Compacts arbitrary labels to [0, K) preserving first-appearance order;
// returns K. `dense` is resized to labels.size().
std::uint32_t densify_labels(const Labeling& labels,
                             std::vector<std::uint32_t>& dense);

// Number of edges whose endpoints share a label. `dense` is indexed by
// joint node id (users first). OpenMP-parallel on large graphs; the
// _serial variant is the reference kept for testing and benchmarking.
std::uint64_t intra_cluster_edges(const BipartiteGraph& g,
                                  const std::vector<std::uint32_t>& dense);
std::uint64_t intra_cluster_edges_serial(
    const BipartiteGraph& g, const std::vector<std::uint32_t>& dense);

// Co-clustering quality: sum over co-clusters k of
//   s_k - gamma * S_user(k) * S_item(k)
// where s_k counts intra-cluster edges and S_*(k) sums entity weights.
// `labels` has one entry per node, users first. gamma must be >= 0.
double objective_pairsum(const BipartiteGraph& g, const WeightVector& w,
                         const Labeling& labels, double gamma);
double objective_pairsum_serial(const BipartiteGraph& g,
                                const WeightVector& w, const Labeling& labels,
                                double gamma);

// Same quantity evaluated the slow way: literal summation over node
// pairs inside each cluster (adjacency term halved for double counting,
// weight penalty restricted to user-item products). Quadratic; exists to
// cross-check objective_pairsum on small graphs.
double objective_trace(const BipartiteGraph& g, const WeightVector& w,
                       const Labeling& labels, double gamma);

// Bipartite modularity with resolution gamma:
//   (1/|E|) * sum_k [ s_k - gamma * sigma_user(k) * sigma_item(k) / |E| ]
// with sigma_* the summed degrees of the cluster's entities.
double bipartite_modularity(const BipartiteGraph& g, const Labeling& labels,
                            double gamma);

// Constant Potts quality on the bipartite pair space:
//   sum_k [ s_k - gamma * |U_k| * |V_k| ].
double cpm_score(const BipartiteGraph& g, const Labeling& labels,
                 double gamma);

struct LassoValue {
  // Sum over clusters of squared deviation from the balanced volume
  // (W_user + W_item) / K.
  double deviation_form = 0.0;
  // Sum over clusters of squared volume. Differs from deviation_form by
  // the constant (W_user + W_item)^2 / K.
  double trace_form = 0.0;
};

// Balance penalty over cluster volumes vol(k) = S_user(k) + S_item(k).
// `labels` must cover all weighted entities (users first) and be
// non-empty.
LassoValue exclusive_lasso(const WeightVector& w, const Labeling& labels);

}  // namespace baco
