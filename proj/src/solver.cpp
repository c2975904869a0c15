#include "baco/solver.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <numeric>
#include <random>
#include <stdexcept>

#include "baco/objective.hpp"

namespace baco {

namespace {

void validate_common(const SolverConfig& cfg) {
  if (!(cfg.gamma >= 0.0))
    throw std::invalid_argument("gamma must be non-negative");
  if (cfg.budget < 1)
    throw std::invalid_argument("budget must be a positive integer");
  if (cfg.max_iters < 1)
    throw std::invalid_argument("max_iters must be a positive integer");
}

}  // namespace

ClusterState init_state(const BipartiteGraph& g, const WeightVector& w) {
  const NodeId n = g.n_users, total = g.n_nodes();
  ClusterState s;
  s.n_users = n;
  s.label.resize(total);
  std::iota(s.label.begin(), s.label.end(), RawLabel{0});
  s.sum_user_weight.assign(total, 0.0);
  s.sum_item_weight.assign(total, 0.0);
  s.user_count.assign(total, 0);
  s.item_count.assign(total, 0);
  for (NodeId u = 0; u < n; ++u) {
    s.sum_user_weight[u] = w.user[u];
    s.user_count[u] = 1;
  }
  for (NodeId v = 0; v < g.n_items; ++v) {
    s.sum_item_weight[n + v] = w.item[v];
    s.item_count[n + v] = 1;
  }
  s.k_user = n;
  s.k_item = g.n_items;
  s.k_joint = total;
  return s;
}

Labeling labeling_of(const ClusterState& state) {
  return Labeling(state.label.begin(), state.label.end());
}

double likelihood(const ClusterState& state, const WeightVector& w,
                  double gamma, NodeId node, RawLabel candidate,
                  double neighbors_in_candidate) {
  assert(candidate < state.label.size());
  const bool user = state.is_user(node);
  const double own_weight =
      user ? w.user[node] : w.item[node - state.n_users];
  const double opposite = user ? state.sum_item_weight[candidate]
                               : state.sum_user_weight[candidate];
  return neighbors_in_candidate - gamma * own_weight * opposite;
}

namespace {

void apply_move(ClusterState& s, const WeightVector& w, NodeId node,
                RawLabel to) {
  const RawLabel from = s.label[node];
  if (s.user_count[to] + s.item_count[to] == 0) ++s.k_joint;
  if (s.is_user(node)) {
    const double weight = w.user[node];
    s.sum_user_weight[from] -= weight;
    s.sum_user_weight[to] += weight;
    if (--s.user_count[from] == 0) {
      s.sum_user_weight[from] = 0.0;
      --s.k_user;
    }
    if (s.user_count[to]++ == 0) ++s.k_user;
  } else {
    const double weight = w.item[node - s.n_users];
    s.sum_item_weight[from] -= weight;
    s.sum_item_weight[to] += weight;
    if (--s.item_count[from] == 0) {
      s.sum_item_weight[from] = 0.0;
      --s.k_item;
    }
    if (s.item_count[to]++ == 0) ++s.k_item;
  }
  if (s.user_count[from] + s.item_count[from] == 0) --s.k_joint;
  s.label[node] = to;
}

}  // namespace

bool update_node(ClusterState& state, const BipartiteGraph& g,
                 const WeightVector& w, double gamma, NodeId node,
                 LabelCounter& counts, MoveObserver* observer) {
  counts.reset();
  if (state.is_user(node)) {
    for (NodeId v : g.items_of(node)) counts.add(state.label[state.n_users + v]);
  } else {
    for (NodeId u : g.users_of(node - state.n_users)) counts.add(state.label[u]);
  }

  const RawLabel own = state.label[node];
  const double p_own =
      likelihood(state, w, gamma, node, own, counts.count(own));
  RawLabel best = own;
  double best_p = p_own;
  for (RawLabel k : counts.touched()) {
    if (k == own) continue;
    const double p = likelihood(state, w, gamma, node, k, counts.count(k));
    if (p > best_p) {
      best = k;
      best_p = p;
    } else if (p == best_p && best != own && k < best) {
      best = k;
    }
  }

  if (best == own) return false;
  if (observer) observer->on_move(state, node, own, best, p_own, best_p);
  apply_move(state, w, node, best);
  return true;
}

std::pair<ClusterState, SolveReport> run_basic(const BipartiteGraph& g,
                                               const WeightVector& w,
                                               const SolverConfig& cfg,
                                               MoveObserver* observer) {
  validate_common(cfg);
  const auto t0 = std::chrono::steady_clock::now();

  ClusterState state = init_state(g, w);
  LabelCounter counts(g.n_nodes());
  std::vector<NodeId> order(g.n_nodes());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::mt19937_64 rng(cfg.seed);

  SolveReport report;
  while (state.k_user + state.k_item > cfg.budget &&
         report.iterations < cfg.max_iters) {
    if (cfg.order == NodeOrder::ShuffledEachIter)
      std::shuffle(order.begin(), order.end(), rng);
    std::uint64_t moves = 0;
    for (NodeId node : order)
      if (update_node(state, g, w, cfg.gamma, node, counts, observer))
        ++moves;
    ++report.iterations;
    if (moves == 0) {
      report.converged = true;
      break;
    }
  }

  report.budget_met = state.k_user + state.k_item <= cfg.budget;
  report.k_user = state.k_user;
  report.k_item = state.k_item;
  report.objective =
      objective_pairsum(g, w, labeling_of(state), cfg.gamma);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  if (cfg.strict_budget && !report.budget_met)
    throw BudgetError("budget " + std::to_string(cfg.budget) +
                      " not met: K_user + K_item = " +
                      std::to_string(state.k_user + state.k_item));
  return {std::move(state), report};
}

std::vector<RawLabel> secondary_pass(const ClusterState& state,
                                     const BipartiteGraph& g,
                                     const WeightVector& w, double gamma,
                                     bool scu_distinct) {
  LabelCounter counts(static_cast<std::uint32_t>(state.label.size()));
  std::vector<RawLabel> secondary(state.n_users);
  for (NodeId u = 0; u < state.n_users; ++u) {
    counts.reset();
    for (NodeId v : g.items_of(u)) counts.add(state.label[state.n_users + v]);

    const RawLabel own = state.label[u];
    RawLabel best = own;
    double best_p = 0.0;
    bool have = false;
    if (!scu_distinct) {
      best_p = likelihood(state, w, gamma, u, own, counts.count(own));
      have = true;
    }
    for (RawLabel k : counts.touched()) {
      if (k == own) continue;  // distinct: excluded; otherwise already seeded
      const double p = likelihood(state, w, gamma, u, k, counts.count(k));
      if (!have || p > best_p) {
        best = k;
        best_p = p;
        have = true;
      } else if (p == best_p && (scu_distinct || best != own) && k < best) {
        best = k;
      }
    }
    secondary[u] = best;  // falls back to the primary when nothing else exists
  }
  return secondary;
}

CompleteResult run_complete(const BipartiteGraph& g, const WeightVector& w,
                            const SolverConfig& cfg, MoveObserver* observer) {
  validate_common(cfg);
  if (!cfg.scu)
    throw std::invalid_argument("run_complete requires scu mode");
  if (cfg.dim < 1)
    throw std::invalid_argument("scu mode requires an embedding dim");
  const std::uint64_t rows =
      static_cast<std::uint64_t>(cfg.budget) * cfg.dim;
  if (rows <= g.n_users)
    throw std::invalid_argument(
        "budget * dim must exceed the user count in scu mode");
  const std::uint64_t reduced = (rows - g.n_users) / cfg.dim;
  if (reduced < 2)
    throw std::invalid_argument("reduced budget below 2; raise the budget");

  SolverConfig inner = cfg;
  inner.budget = static_cast<std::uint32_t>(reduced);
  auto [state, report] = run_basic(g, w, inner, observer);
  auto secondary =
      secondary_pass(state, g, w, cfg.gamma, cfg.scu_distinct);
  return {std::move(state), std::move(secondary), report};
}

}  // namespace baco
