#include "baco/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <stdexcept>
#include <unordered_map>

namespace baco {

EdgeList parse_edge_list(std::istream& in) {
  EdgeList out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    auto tab1 = line.find('\t');
    if (tab1 == std::string::npos)
      throw ParseError("expected two tab-separated fields", lineno);
    auto tab2 = line.find('\t', tab1 + 1);
    if (tab2 != std::string::npos)
      throw ParseError("expected two tab-separated fields", lineno);

    std::string user = line.substr(0, tab1);
    std::string item = line.substr(tab1 + 1);
    if (user.empty() || item.empty())
      throw ParseError("empty field", lineno);
    out.pairs.emplace_back(std::move(user), std::move(item));
  }
  return out;
}

EdgeList load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list: " + path);
  return parse_edge_list(in);
}

bool BipartiteGraph::has_edge(NodeId u, NodeId v) const {
  auto row = items_of(u);
  return std::binary_search(row.begin(), row.end(), v);
}

BipartiteGraph build_graph(const EdgeList& edges) {
  if (edges.pairs.empty())
    throw std::invalid_argument("empty edge list");

  BipartiteGraph g;
  std::unordered_map<std::string, NodeId> user_ids, item_ids;
  user_ids.reserve(edges.pairs.size() / 2 + 1);
  item_ids.reserve(edges.pairs.size() / 2 + 1);

  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(edges.pairs.size());
  for (const auto& [ut, it] : edges.pairs) {
    auto [uit, unew] = user_ids.try_emplace(ut, g.n_users);
    if (unew) {
      g.user_tokens.push_back(ut);
      ++g.n_users;
    }
    auto [iit, inew] = item_ids.try_emplace(it, g.n_items);
    if (inew) {
      g.item_tokens.push_back(it);
      ++g.n_items;
    }
    pairs.emplace_back(uit->second, iit->second);
  }

  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  g.user_offsets.assign(g.n_users + 1, 0);
  for (auto [u, v] : pairs) g.user_offsets[u + 1]++;
  for (NodeId u = 0; u < g.n_users; ++u)
    g.user_offsets[u + 1] += g.user_offsets[u];
  g.user_items.resize(pairs.size());
  {
    std::vector<std::uint64_t> cursor(g.user_offsets.begin(),
                                      g.user_offsets.end() - 1);
    for (auto [u, v] : pairs) g.user_items[cursor[u]++] = v;
  }

  g.item_offsets.assign(g.n_items + 1, 0);
  for (auto [u, v] : pairs) g.item_offsets[v + 1]++;
  for (NodeId v = 0; v < g.n_items; ++v)
    g.item_offsets[v + 1] += g.item_offsets[v];
  g.item_users.resize(pairs.size());
  {
    std::vector<std::uint64_t> cursor(g.item_offsets.begin(),
                                      g.item_offsets.end() - 1);
    for (auto [u, v] : pairs) g.item_users[cursor[v]++] = u;
  }
  for (NodeId v = 0; v < g.n_items; ++v) {
    auto* b = g.item_users.data() + g.item_offsets[v];
    auto* e = g.item_users.data() + g.item_offsets[v + 1];
    std::sort(b, e);
  }

  return g;
}

}  // namespace baco
