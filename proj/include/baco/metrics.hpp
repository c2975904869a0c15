#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "baco/common.hpp"
#include "baco/graph.hpp"

namespace baco {

// Inequality of a size distribution, 0 for perfectly balanced:
//   (2/K) * sum_i (i/K - cumsum_i/total)   over ascending-sorted sizes.
// Requires at least one size; all sizes positive.
double gini(const std::vector<std::uint64_t>& sizes);

// Size-vector selectors feeding gini: per-side distributions count the
// users (resp. items) per distinct label; the joint distribution counts
// all nodes per label.
std::vector<std::uint64_t> user_side_sizes(const Labeling& labels,
                                           NodeId n_users);
std::vector<std::uint64_t> item_side_sizes(const Labeling& labels,
                                           NodeId n_users);
std::vector<std::uint64_t> joint_sizes(const Labeling& labels);

// Edges whose endpoints carry different labels.
std::uint64_t cross_cluster_edges(const BipartiteGraph& g,
                                  const Labeling& labels);

// Averaged cross-cluster links: cross edges / C(K,2) with K the number
// of distinct co-cluster labels; 0 when K < 2 by convention.
double accl(const BipartiteGraph& g, const Labeling& labels);

std::map<Label, std::uint64_t> cluster_size_histogram(const Labeling& labels);

// Adjusted Rand index via the pair-counting contingency formula.
// Degenerate comparisons (fewer than two nodes, or both partitions
// trivial) return 1.
double ari(const Labeling& a, const Labeling& b);

}  // namespace baco
