#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "baco/common.hpp"

namespace baco {

// Raw user/item interaction pairs, in input order, duplicates retained.
struct EdgeList {
  std::vector<std::pair<std::string, std::string>> pairs;
};

// Reads tab-separated `user_token \t item_token` lines. Lines starting
// with '#' and blank lines are skipped. Anything else with a field count
// other than two (or an empty field) raises ParseError with the
// offending 1-based line number.
EdgeList parse_edge_list(std::istream& in);

// Convenience wrapper; throws std::runtime_error if the file cannot be
// opened.
EdgeList load_edge_list(const std::string& path);

// Unweighted bipartite interaction graph in CSR form, adjacency kept in
// both directions. Dense ids are assigned per side in order of first
// appearance in the edge list; duplicate pairs collapse to one edge.
struct BipartiteGraph {
  NodeId n_users = 0;
  NodeId n_items = 0;

  std::vector<std::uint64_t> user_offsets;  // size n_users + 1
  std::vector<NodeId> user_items;           // sorted within each row
  std::vector<std::uint64_t> item_offsets;  // size n_items + 1
  std::vector<NodeId> item_users;           // sorted within each row

  std::vector<std::string> user_tokens;
  std::vector<std::string> item_tokens;

  std::uint64_t n_edges() const { return user_items.size(); }
  NodeId n_nodes() const { return n_users + n_items; }

  std::uint64_t user_degree(NodeId u) const {
    return user_offsets[u + 1] - user_offsets[u];
  }
  std::uint64_t item_degree(NodeId v) const {
    return item_offsets[v + 1] - item_offsets[v];
  }

  std::span<const NodeId> items_of(NodeId u) const {
    return {user_items.data() + user_offsets[u],
            static_cast<std::size_t>(user_degree(u))};
  }
  std::span<const NodeId> users_of(NodeId v) const {
    return {item_users.data() + item_offsets[v],
            static_cast<std::size_t>(item_degree(v))};
  }

  // Binary search over the user's row.
  bool has_edge(NodeId u, NodeId v) const;
};

// Builds the graph from raw pairs. Throws std::invalid_argument on an
// empty edge list.
BipartiteGraph build_graph(const EdgeList& edges);

}  // namespace baco
