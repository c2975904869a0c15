#include "baco/objective.hpp"

#include <stdexcept>
#include <unordered_map>

namespace baco {

namespace {

void check_labels(const BipartiteGraph& g, const Labeling& labels) {
  if (labels.size() != g.n_nodes())
    throw std::invalid_argument("labeling size does not match node count");
}

void check_gamma(double gamma) {
  if (!(gamma >= 0.0))
    throw std::invalid_argument("gamma must be non-negative");
}

}  // namespace

std::uint32_t densify_labels(const Labeling& labels,
                             std::vector<std::uint32_t>& dense) {
  dense.resize(labels.size());
  std::unordered_map<Label, std::uint32_t> ids;
  ids.reserve(labels.size());
  std::uint32_t next = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, fresh] = ids.try_emplace(labels[i], next);
    if (fresh) ++next;
    dense[i] = it->second;
  }
  return next;
}

std::uint64_t intra_cluster_edges(const BipartiteGraph& g,
                                  const std::vector<std::uint32_t>& dense) {
  const NodeId n = g.n_users;
  std::int64_t acc = 0;
#pragma omp parallel for schedule(static) reduction(+ : acc) \
    if (g.n_edges() > 16384)
  for (NodeId u = 0; u < n; ++u) {
    const std::uint32_t lu = dense[u];
    std::int64_t local = 0;
    for (NodeId v : g.items_of(u))
      if (dense[n + v] == lu) ++local;
    acc += local;
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t intra_cluster_edges_serial(
    const BipartiteGraph& g, const std::vector<std::uint32_t>& dense) {
  const NodeId n = g.n_users;
  std::uint64_t acc = 0;
  for (NodeId u = 0; u < n; ++u) {
    const std::uint32_t lu = dense[u];
    for (NodeId v : g.items_of(u))
      if (dense[n + v] == lu) ++acc;
  }
  return acc;
}

namespace {

double pairsum_from_dense(const BipartiteGraph& g, const WeightVector& w,
                          const std::vector<std::uint32_t>& dense,
                          std::uint32_t k, double gamma, bool parallel) {
  std::vector<double> sum_user(k, 0.0), sum_item(k, 0.0);
  for (NodeId u = 0; u < g.n_users; ++u) sum_user[dense[u]] += w.user[u];
  for (NodeId v = 0; v < g.n_items; ++v)
    sum_item[dense[g.n_users + v]] += w.item[v];

  const std::uint64_t intra = parallel ? intra_cluster_edges(g, dense)
                                       : intra_cluster_edges_serial(g, dense);
  double penalty = 0.0;
  for (std::uint32_t c = 0; c < k; ++c) penalty += sum_user[c] * sum_item[c];
  return static_cast<double>(intra) - gamma * penalty;
}

}  // namespace

double objective_pairsum(const BipartiteGraph& g, const WeightVector& w,
                         const Labeling& labels, double gamma) {
  check_labels(g, labels);
  check_gamma(gamma);
  std::vector<std::uint32_t> dense;
  const std::uint32_t k = densify_labels(labels, dense);
  return pairsum_from_dense(g, w, dense, k, gamma, true);
}

double objective_pairsum_serial(const BipartiteGraph& g,
                                const WeightVector& w, const Labeling& labels,
                                double gamma) {
  check_labels(g, labels);
  check_gamma(gamma);
  std::vector<std::uint32_t> dense;
  const std::uint32_t k = densify_labels(labels, dense);
  return pairsum_from_dense(g, w, dense, k, gamma, false);
}

double objective_trace(const BipartiteGraph& g, const WeightVector& w,
                       const Labeling& labels, double gamma) {
  check_labels(g, labels);
  check_gamma(gamma);
  const NodeId n = g.n_users;
  const NodeId total = g.n_nodes();

  // Trace of Y^T A Y: every ordered same-cluster pair of adjacent nodes
  // contributes once, so each edge is counted twice.
  std::uint64_t ordered_adjacent = 0;
  for (NodeId x = 0; x < total; ++x) {
    for (NodeId y = 0; y < total; ++y) {
      if (x == y || labels[x] != labels[y]) continue;
      const bool x_user = x < n, y_user = y < n;
      if (x_user == y_user) continue;
      const NodeId u = x_user ? x : y;
      const NodeId v = x_user ? y - n : x - n;
      if (g.has_edge(u, v)) ++ordered_adjacent;
    }
  }

  // Penalty restricted to user-item products so that it matches the
  // pair-space sum; same-side products never appear there.
  double penalty = 0.0;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = 0; v < g.n_items; ++v)
      if (labels[u] == labels[n + v]) penalty += w.user[u] * w.item[v];

  return static_cast<double>(ordered_adjacent) / 2.0 - gamma * penalty;
}

double bipartite_modularity(const BipartiteGraph& g, const Labeling& labels,
                            double gamma) {
  check_labels(g, labels);
  check_gamma(gamma);
  std::vector<std::uint32_t> dense;
  const std::uint32_t k = densify_labels(labels, dense);

  std::vector<double> deg_user(k, 0.0), deg_item(k, 0.0);
  for (NodeId u = 0; u < g.n_users; ++u)
    deg_user[dense[u]] += static_cast<double>(g.user_degree(u));
  for (NodeId v = 0; v < g.n_items; ++v)
    deg_item[dense[g.n_users + v]] += static_cast<double>(g.item_degree(v));

  const double m = static_cast<double>(g.n_edges());
  const std::uint64_t intra = intra_cluster_edges(g, dense);
  double null_model = 0.0;
  for (std::uint32_t c = 0; c < k; ++c)
    null_model += deg_user[c] * deg_item[c];
  return (static_cast<double>(intra) - gamma * null_model / m) / m;
}

double cpm_score(const BipartiteGraph& g, const Labeling& labels,
                 double gamma) {
  check_labels(g, labels);
  check_gamma(gamma);
  std::vector<std::uint32_t> dense;
  const std::uint32_t k = densify_labels(labels, dense);

  std::vector<std::uint64_t> n_user(k, 0), n_item(k, 0);
  for (NodeId u = 0; u < g.n_users; ++u) n_user[dense[u]]++;
  for (NodeId v = 0; v < g.n_items; ++v) n_item[dense[g.n_users + v]]++;

  const std::uint64_t intra = intra_cluster_edges(g, dense);
  double penalty = 0.0;
  for (std::uint32_t c = 0; c < k; ++c)
    penalty += static_cast<double>(n_user[c]) * static_cast<double>(n_item[c]);
  return static_cast<double>(intra) - gamma * penalty;
}

LassoValue exclusive_lasso(const WeightVector& w, const Labeling& labels) {
  const std::size_t n = w.user.size();
  if (labels.size() != n + w.item.size())
    throw std::invalid_argument("labeling size does not match weight count");
  if (labels.empty()) throw std::invalid_argument("empty labeling");

  std::vector<std::uint32_t> dense;
  const std::uint32_t k = densify_labels(labels, dense);

  std::vector<double> vol(k, 0.0);
  for (std::size_t i = 0; i < n; ++i) vol[dense[i]] += w.user[i];
  for (std::size_t j = 0; j < w.item.size(); ++j)
    vol[dense[n + j]] += w.item[j];

  const double target = (w.total_user + w.total_item) / static_cast<double>(k);
  LassoValue out;
  for (std::uint32_t c = 0; c < k; ++c) {
    const double d = vol[c] - target;
    out.deviation_form += d * d;
    out.trace_form += vol[c] * vol[c];
  }
  return out;
}

}  // namespace baco
