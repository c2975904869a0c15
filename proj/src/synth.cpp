#include "baco/synth.hpp"

#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "baco/objective.hpp"

namespace baco {

namespace {

std::string user_token(std::uint32_t i) { return "u" + std::to_string(i); }
std::string item_token(std::uint32_t j) { return "v" + std::to_string(j); }

// Original index encoded in the generator's token.
std::uint32_t token_index(const std::string& t) {
  return static_cast<std::uint32_t>(std::stoul(t.substr(1)));
}

}  // namespace

Planted planted_bipartite(std::uint32_t blocks, std::uint32_t users_per_block,
                          std::uint32_t items_per_block, double p_in,
                          double p_out, std::uint64_t seed) {
  if (blocks < 1 || users_per_block < 1 || items_per_block < 1)
    throw std::invalid_argument("block shape must be positive");
  if (!(p_in >= 0.0 && p_in <= 1.0 && p_out >= 0.0 && p_out <= 1.0))
    throw std::invalid_argument("probabilities must lie in [0, 1]");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  EdgeList edges;
  const std::uint32_t nu = blocks * users_per_block;
  const std::uint32_t ni = blocks * items_per_block;
  for (std::uint32_t i = 0; i < nu; ++i) {
    const std::uint32_t bu = i / users_per_block;
    for (std::uint32_t j = 0; j < ni; ++j) {
      const double p = (bu == j / items_per_block) ? p_in : p_out;
      if (p > 0.0 && unif(rng) < p)
        edges.pairs.emplace_back(user_token(i), item_token(j));
    }
  }
  if (edges.pairs.empty())
    throw std::runtime_error("planted sample has no edges; try another seed");

  Planted out;
  out.graph = build_graph(edges);
  out.truth.resize(out.graph.n_nodes());
  for (NodeId u = 0; u < out.graph.n_users; ++u)
    out.truth[u] = token_index(out.graph.user_tokens[u]) / users_per_block;
  for (NodeId v = 0; v < out.graph.n_items; ++v)
    out.truth[out.graph.n_users + v] =
        token_index(out.graph.item_tokens[v]) / items_per_block;
  return out;
}

BipartiteGraph random_bipartite(std::uint32_t n_users, std::uint32_t n_items,
                                std::uint64_t n_edges, std::uint64_t seed) {
  if (n_users < 1 || n_items < 1)
    throw std::invalid_argument("entity counts must be positive");
  const std::uint64_t space =
      static_cast<std::uint64_t>(n_users) * n_items;
  if (n_edges < 1 || n_edges > space)
    throw std::invalid_argument("edge count must lie in [1, n_users*n_items]");

  std::mt19937_64 rng(seed);
  EdgeList edges;
  edges.pairs.reserve(n_edges);

  if (n_edges * 2 <= space) {
    // Sparse: rejection sampling of distinct pairs.
    std::uniform_int_distribution<std::uint32_t> du(0, n_users - 1);
    std::uniform_int_distribution<std::uint32_t> di(0, n_items - 1);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(n_edges * 2);
    while (seen.size() < n_edges) {
      const std::uint32_t u = du(rng), v = di(rng);
      if (seen.insert(static_cast<std::uint64_t>(u) * n_items + v).second)
        edges.pairs.emplace_back(user_token(u), item_token(v));
    }
  } else {
    // Dense: pick the complement instead, then emit everything else.
    const std::uint64_t skip = space - n_edges;
    std::unordered_set<std::uint64_t> excluded;
    excluded.reserve(skip * 2);
    std::uniform_int_distribution<std::uint64_t> dp(0, space - 1);
    while (excluded.size() < skip) excluded.insert(dp(rng));
    for (std::uint32_t u = 0; u < n_users; ++u)
      for (std::uint32_t v = 0; v < n_items; ++v)
        if (!excluded.count(static_cast<std::uint64_t>(u) * n_items + v))
          edges.pairs.emplace_back(user_token(u), item_token(v));
  }
  return build_graph(edges);
}

namespace {

// Scores a restricted-growth string in place: labels are already dense.
double score_partition(const BipartiteGraph& g, const WeightVector& w,
                       const std::vector<std::uint32_t>& labels,
                       std::uint32_t k, double gamma,
                       std::vector<double>& sum_user,
                       std::vector<double>& sum_item) {
  sum_user.assign(k, 0.0);
  sum_item.assign(k, 0.0);
  for (NodeId u = 0; u < g.n_users; ++u) sum_user[labels[u]] += w.user[u];
  for (NodeId v = 0; v < g.n_items; ++v)
    sum_item[labels[g.n_users + v]] += w.item[v];

  std::uint64_t intra = 0;
  for (NodeId u = 0; u < g.n_users; ++u)
    for (NodeId v : g.items_of(u))
      if (labels[u] == labels[g.n_users + v]) ++intra;

  double penalty = 0.0;
  for (std::uint32_t c = 0; c < k; ++c) penalty += sum_user[c] * sum_item[c];
  return static_cast<double>(intra) - gamma * penalty;
}

}  // namespace

OracleResult brute_force_optimum(const BipartiteGraph& g,
                                 const WeightVector& w, double gamma,
                                 std::uint32_t max_nodes) {
  if (max_nodes > 12)
    throw std::invalid_argument("max_nodes capped at 12");
  const std::uint32_t n = g.n_nodes();
  if (n > max_nodes)
    throw std::invalid_argument("graph exceeds the oracle size cap of " +
                                std::to_string(max_nodes) + " nodes");
  if (!(gamma >= 0.0))
    throw std::invalid_argument("gamma must be non-negative");

  // Restricted growth strings: a[0] = 0, a[i] <= max(a[0..i-1]) + 1.
  std::vector<std::uint32_t> a(n, 0), prefix_max(n, 0);
  std::vector<double> su, sv;
  std::vector<std::uint32_t> best_a;
  double best_score = 0.0;
  bool first = true;

  while (true) {
    const std::uint32_t k = prefix_max[n - 1] + 1;
    const double score = score_partition(g, w, a, k, gamma, su, sv);
    if (first || score > best_score) {
      first = false;
      best_score = score;
      best_a = a;
    }

    std::size_t i = n - 1;
    while (i > 0 && a[i] == prefix_max[i - 1] + 1) --i;
    if (i == 0) break;
    ++a[i];
    prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      a[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }

  OracleResult out;
  out.best.assign(best_a.begin(), best_a.end());
  out.score = objective_pairsum_serial(g, w, out.best, gamma);
  return out;
}

}  // namespace baco
