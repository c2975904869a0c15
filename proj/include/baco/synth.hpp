#pragma once

#include <cstdint>
#include <utility>

#include "baco/common.hpp"
#include "baco/graph.hpp"
#include "baco/weights.hpp"

namespace baco {

struct Planted {
  BipartiteGraph graph;
  Labeling truth;  // block id per node, users first
};

// Planted-partition bipartite graph: a user and an item in the same
// block are connected with probability p_in, across blocks with p_out.
// Entities with no sampled edge are dropped (the graph never holds
// zero-degree entities). Deterministic for a fixed seed; throws if the
// sample comes out empty.
Planted planted_bipartite(std::uint32_t blocks, std::uint32_t users_per_block,
                          std::uint32_t items_per_block, double p_in,
                          double p_out, std::uint64_t seed);

// Uniform sample of exactly n_edges distinct user-item pairs.
// Unsampled entities are compacted away, so the returned counts can be
// below the requested ones.
BipartiteGraph random_bipartite(std::uint32_t n_users, std::uint32_t n_items,
                                std::uint64_t n_edges, std::uint64_t seed);

struct OracleResult {
  Labeling best;  // per node, users first
  double score = 0.0;
};

// Exhaustive search over all set partitions of the node set (restricted
// growth string enumeration, so label permutations are visited once).
// Ties resolve to the lexicographically smallest string. Exponential;
// refuses graphs larger than max_nodes (cap 12).
OracleResult brute_force_optimum(const BipartiteGraph& g,
                                 const WeightVector& w, double gamma,
                                 std::uint32_t max_nodes = 10);

}  // namespace baco
