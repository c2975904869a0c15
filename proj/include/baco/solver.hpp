#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "baco/common.hpp"
#include "baco/graph.hpp"
#include "baco/weights.hpp"

namespace baco {

enum class NodeOrder { ByIndex, ShuffledEachIter };

struct SolverConfig {
  double gamma = 0.0;
  std::uint32_t budget = 2;     // target on K_user + K_item
  std::uint32_t dim = 0;        // embedding width d, required for scu
  std::uint32_t max_iters = 5;  // sweep cap
  WeightScheme scheme = WeightScheme::hws();
  bool scu = false;           // reserve per-user rows, shrink the shared budget
  bool scu_distinct = false;  // secondary label must differ from primary
  NodeOrder order = NodeOrder::ByIndex;
  std::uint64_t seed = 0;
  bool strict_budget = false;  // unmet budget throws instead of reporting
};

// Sequential label-propagation state. Labels live in the raw space
// [0, n_users + n_items); aggregates are indexed by raw label and kept
// incrementally in step with every move.
struct ClusterState {
  NodeId n_users = 0;
  std::vector<RawLabel> label;           // per joint node id
  std::vector<double> sum_user_weight;   // per raw label
  std::vector<double> sum_item_weight;   // per raw label
  std::vector<std::uint32_t> user_count;
  std::vector<std::uint32_t> item_count;
  std::uint32_t k_user = 0;  // labels holding at least one user
  std::uint32_t k_item = 0;  // labels holding at least one item
  std::uint32_t k_joint = 0;  // labels holding at least one node

  bool is_user(NodeId node) const { return node < n_users; }
};

// Every node starts in its own singleton cluster, label == node id.
ClusterState init_state(const BipartiteGraph& g, const WeightVector& w);

// Copies raw labels into the quality-function labeling type.
Labeling labeling_of(const ClusterState& state);

// Reusable neighbor-label tally: O(degree) to fill, O(touched) to reset.
class LabelCounter {
 public:
  explicit LabelCounter(std::uint32_t label_space)
      : count_(label_space, 0) {}

  void add(RawLabel l) {
    if (count_[l]++ == 0) touched_.push_back(l);
  }
  std::uint32_t count(RawLabel l) const { return count_[l]; }
  const std::vector<RawLabel>& touched() const { return touched_; }
  void reset() {
    for (RawLabel l : touched_) count_[l] = 0;
    touched_.clear();
  }

 private:
  std::vector<std::uint32_t> count_;
  std::vector<RawLabel> touched_;
};

// Gain of placing `node` into cluster `candidate`:
//   p(k) = #neighbors in k - gamma * w(node) * opposite-side weight mass of k.
// O(1) given the neighbor count; reads only state aggregates.
double likelihood(const ClusterState& state, const WeightVector& w,
                  double gamma, NodeId node, RawLabel candidate,
                  double neighbors_in_candidate);

// Called just before each accepted move is applied; `state` still holds
// the pre-move labeling and aggregates.
struct MoveObserver {
  virtual ~MoveObserver() = default;
  virtual void on_move(const ClusterState& state, NodeId node, RawLabel from,
                       RawLabel to, double p_from, double p_to) = 0;
};

// One greedy step: evaluates the node's own label plus all neighbor
// labels, keeps the current label on ties, breaks remaining ties toward
// the smallest label. Returns true iff the node moved. `counts` is
// caller-owned scratch sized to the raw label space.
bool update_node(ClusterState& state, const BipartiteGraph& g,
                 const WeightVector& w, double gamma, NodeId node,
                 LabelCounter& counts, MoveObserver* observer = nullptr);

struct SolveReport {
  std::uint32_t iterations = 0;
  bool converged = false;  // stopped because a full sweep made no move
  bool budget_met = false;
  std::uint32_t k_user = 0;
  std::uint32_t k_item = 0;
  double objective = 0.0;
  double wall_seconds = 0.0;
};

// Sweeps all nodes until K_user + K_item <= budget or max_iters sweeps
// or a moveless sweep. Throws BudgetError afterwards if strict_budget is
// set and the budget was not reached.
std::pair<ClusterState, SolveReport> run_basic(const BipartiteGraph& g,
                                               const WeightVector& w,
                                               const SolverConfig& cfg,
                                               MoveObserver* observer = nullptr);

// Secondary user labels against the frozen primary state: each user's
// best label by the same likelihood, evaluated without applying any
// move, so the result is independent of processing order. With
// scu_distinct the user's own primary label is excluded unless it is the
// only candidate.
std::vector<RawLabel> secondary_pass(const ClusterState& state,
                                     const BipartiteGraph& g,
                                     const WeightVector& w, double gamma,
                                     bool scu_distinct);

struct CompleteResult {
  ClusterState state;
  std::vector<RawLabel> secondary;  // one per user
  SolveReport report;
};

// Budget-reserving pipeline: rows for one index column per user are set
// aside, the shared budget shrinks to B' = floor((B*d - n_users) / d),
// run_basic targets B', then a secondary pass assigns each user a second
// cluster. Requires cfg.scu, cfg.dim >= 1, and B*d > n_users with
// B' >= 2.
CompleteResult run_complete(const BipartiteGraph& g, const WeightVector& w,
                            const SolverConfig& cfg,
                            MoveObserver* observer = nullptr);

}  // namespace baco
