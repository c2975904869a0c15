#include "baco/metrics.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "baco/objective.hpp"

namespace baco {

double gini(const std::vector<std::uint64_t>& sizes) {
  if (sizes.empty()) throw std::invalid_argument("gini of empty size list");
  for (auto s : sizes)
    if (s == 0) throw std::invalid_argument("gini requires positive sizes");

  std::vector<std::uint64_t> sorted = sizes;
  std::sort(sorted.begin(), sorted.end());
  const double k = static_cast<double>(sorted.size());
  double total = 0.0;
  for (auto s : sorted) total += static_cast<double>(s);

  double acc = 0.0, cumsum = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    cumsum += static_cast<double>(sorted[i]);
    acc += static_cast<double>(i + 1) / k - cumsum / total;
  }
  return 2.0 / k * acc;
}

namespace {

std::vector<std::uint64_t> sizes_of_range(const Labeling& labels,
                                          std::size_t begin,
                                          std::size_t end) {
  std::unordered_map<Label, std::uint64_t> counts;
  for (std::size_t i = begin; i < end; ++i) ++counts[labels[i]];
  std::vector<std::uint64_t> out;
  out.reserve(counts.size());
  for (const auto& [l, c] : counts) out.push_back(c);
  return out;
}

}  // namespace

std::vector<std::uint64_t> user_side_sizes(const Labeling& labels,
                                           NodeId n_users) {
  return sizes_of_range(labels, 0, n_users);
}

std::vector<std::uint64_t> item_side_sizes(const Labeling& labels,
                                           NodeId n_users) {
  return sizes_of_range(labels, n_users, labels.size());
}

std::vector<std::uint64_t> joint_sizes(const Labeling& labels) {
  return sizes_of_range(labels, 0, labels.size());
}

std::uint64_t cross_cluster_edges(const BipartiteGraph& g,
                                  const Labeling& labels) {
  if (labels.size() != g.n_nodes())
    throw std::invalid_argument("labeling size does not match node count");
  const NodeId n = g.n_users;
  std::int64_t acc = 0;
#pragma omp parallel for schedule(static) reduction(+ : acc) \
    if (g.n_edges() > 16384)
  for (NodeId u = 0; u < n; ++u) {
    const Label lu = labels[u];
    std::int64_t local = 0;
    for (NodeId v : g.items_of(u))
      if (labels[n + v] != lu) ++local;
    acc += local;
  }
  return static_cast<std::uint64_t>(acc);
}

double accl(const BipartiteGraph& g, const Labeling& labels) {
  std::vector<std::uint32_t> dense;
  const std::uint32_t k = densify_labels(labels, dense);
  if (labels.size() != g.n_nodes())
    throw std::invalid_argument("labeling size does not match node count");
  if (k < 2) return 0.0;
  const double pairs = static_cast<double>(k) * (k - 1) / 2.0;
  return static_cast<double>(cross_cluster_edges(g, labels)) / pairs;
}

std::map<Label, std::uint64_t> cluster_size_histogram(const Labeling& labels) {
  std::map<Label, std::uint64_t> hist;
  for (Label l : labels) ++hist[l];
  return hist;
}

double ari(const Labeling& a, const Labeling& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("ari labelings differ in length");
  const std::size_t n = a.size();
  if (n < 2) return 1.0;

  std::vector<std::uint32_t> da, db;
  const std::uint32_t ka = densify_labels(a, da);
  const std::uint32_t kb = densify_labels(b, db);

  std::unordered_map<std::uint64_t, std::uint64_t> cont;
  cont.reserve(n);
  std::vector<std::uint64_t> row(ka, 0), col(kb, 0);
  for (std::size_t i = 0; i < n; ++i) {
    ++cont[static_cast<std::uint64_t>(da[i]) * kb + db[i]];
    ++row[da[i]];
    ++col[db[i]];
  }

  auto choose2 = [](std::uint64_t x) {
    return static_cast<double>(x) * static_cast<double>(x - 1) / 2.0;
  };
  double index = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (const auto& [key, c] : cont) index += choose2(c);
  for (auto c : row) sum_a += choose2(c);
  for (auto c : col) sum_b += choose2(c);
  const double total = choose2(n);
  const double expected = sum_a * sum_b / total;
  const double max_index = (sum_a + sum_b) / 2.0;
  const double denom = max_index - expected;
  if (denom == 0.0) return 1.0;  // both partitions trivial
  return (index - expected) / denom;
}

}  // namespace baco
