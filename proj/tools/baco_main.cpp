#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "baco/graph.hpp"
#include "baco/metrics.hpp"
#include "baco/objective.hpp"
#include "baco/sketch.hpp"
#include "baco/solver.hpp"
#include "baco/synth.hpp"
#include "baco/weights.hpp"

namespace {

using nlohmann::json;

constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitTokenMismatch = 3;
constexpr int kExitBudget = 4;

struct ClusterArgs {
  std::string edges, out;
  double gamma = 0.0;
  std::uint32_t budget = 0;
  double ratio = 0.0;
  std::uint32_t dim = 0;
  std::uint32_t max_iters = 5;
  std::string scheme = "hws";
  bool scu = false;
  bool scu_distinct = false;
  bool strict_budget = false;
  std::string order = "index";
  std::uint64_t seed = 0;
};

int cmd_cluster(const ClusterArgs& args) {
  baco::BipartiteGraph g;
  try {
    g = baco::build_graph(baco::load_edge_list(args.edges));
  } catch (const baco::ParseError& e) {
    std::cerr << "error: " << args.edges << ": " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }

  baco::SolverConfig cfg;
  std::uint32_t budget = args.budget;
  if (args.ratio > 0.0) {
    if (args.budget > 0) {
      std::cerr << "error: pass --budget or --ratio, not both\n";
      return kExitConfig;
    }
    if (args.ratio < 0.2)
      std::cerr << "warning: compression ratio " << args.ratio
                << " is below the recommended minimum of 0.2\n";
    budget = static_cast<std::uint32_t>(
        std::llround(args.ratio * static_cast<double>(g.n_nodes())));
  }
  if (budget < 1) {
    std::cerr << "error: a positive --budget or --ratio is required\n";
    return kExitConfig;
  }
  if (args.scu && args.dim < 1) {
    std::cerr << "error: --scu requires --dim\n";
    return kExitConfig;
  }

  cfg.gamma = args.gamma;
  cfg.budget = budget;
  cfg.dim = args.dim;
  cfg.max_iters = args.max_iters;
  cfg.scu = args.scu;
  cfg.scu_distinct = args.scu_distinct;
  cfg.strict_budget = args.strict_budget;
  cfg.order = args.order == "shuffle" ? baco::NodeOrder::ShuffledEachIter
                                      : baco::NodeOrder::ByIndex;
  cfg.seed = args.seed;
  try {
    cfg.scheme = baco::WeightScheme{baco::scheme_from_name(args.scheme), {}, {}};
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  baco::ClusterState state;
  baco::SolveReport report;
  baco::SketchAssignment assignment;
  std::uint64_t effective_budget = budget;
  try {
    const baco::WeightVector w = baco::compute_weights(g, cfg.scheme);
    if (cfg.scu) {
      baco::CompleteResult r = baco::run_complete(g, w, cfg);
      state = std::move(r.state);
      report = r.report;
      assignment = baco::finalize(state, &r.secondary, cfg);
      effective_budget =
          (static_cast<std::uint64_t>(budget) * cfg.dim - g.n_users) / cfg.dim;
    } else {
      auto [s, rep] = baco::run_basic(g, w, cfg);
      state = std::move(s);
      report = rep;
      assignment = baco::finalize(state, nullptr, cfg);
    }
  } catch (const baco::BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  {
    std::ofstream out(args.out, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open " << args.out << " for writing\n";
      return kExitIo;
    }
    baco::write_assignment(assignment, g.user_tokens, g.item_tokens, out);
    if (!out.flush()) {
      std::cerr << "error: write to " << args.out << " failed\n";
      return kExitIo;
    }
  }

  const baco::Labeling labels = baco::labeling_of(state);
  json j;
  j["iterations"] = report.iterations;
  j["k_user"] = assignment.k_user;
  j["k_item"] = assignment.k_item;
  j["objective"] = report.objective;
  j["budget_met"] =
      static_cast<std::uint64_t>(assignment.k_user) + assignment.k_item <=
      effective_budget;
  j["wall_ms"] = report.wall_seconds * 1000.0;
  j["gini_user"] = baco::gini(baco::user_side_sizes(labels, g.n_users));
  j["gini_item"] = baco::gini(baco::item_side_sizes(labels, g.n_users));
  j["accl"] = baco::accl(g, labels);
  std::cout << j.dump() << "\n";
  return 0;
}

struct MetricsArgs {
  std::string edges, assignment;
  double gamma = -1.0;       // <0: take from the assignment header
  std::string scheme;        // empty: take from the assignment header
};

int cmd_metrics(const MetricsArgs& args) {
  baco::BipartiteGraph g;
  baco::AssignmentFile file;
  try {
    g = baco::build_graph(baco::load_edge_list(args.edges));
  } catch (const baco::ParseError& e) {
    std::cerr << "error: " << args.edges << ": " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  try {
    std::ifstream in(args.assignment, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot open " << args.assignment << "\n";
      return kExitIo;
    }
    file = baco::read_assignment(in);
  } catch (const baco::ParseError& e) {
    std::cerr << "error: " << args.assignment << ": " << e.what() << "\n";
    return kExitConfig;
  }

  const baco::SketchAssignment& a = file.assignment;
  if (a.n_users() != g.n_users || a.n_items() != g.n_items) {
    std::cerr << "error: assignment covers " << a.n_users() << "x"
              << a.n_items() << " entities, graph has " << g.n_users << "x"
              << g.n_items << "\n";
    return kExitTokenMismatch;
  }
  std::unordered_map<std::string, std::uint32_t> user_at, item_at;
  for (std::uint32_t i = 0; i < a.n_users(); ++i)
    user_at[file.user_tokens[i]] = i;
  for (std::uint32_t j = 0; j < a.n_items(); ++j)
    item_at[file.item_tokens[j]] = j;

  // Joint labels use the shared-column convention: user cluster k and
  // item cluster k denote one co-cluster.
  baco::Labeling joint(g.n_nodes());
  for (baco::NodeId u = 0; u < g.n_users; ++u) {
    auto it = user_at.find(g.user_tokens[u]);
    if (it == user_at.end()) {
      std::cerr << "error: user token '" << g.user_tokens[u]
                << "' missing from the assignment\n";
      return kExitTokenMismatch;
    }
    joint[u] = a.user_primary[it->second];
  }
  for (baco::NodeId v = 0; v < g.n_items; ++v) {
    auto it = item_at.find(g.item_tokens[v]);
    if (it == item_at.end()) {
      std::cerr << "error: item token '" << g.item_tokens[v]
                << "' missing from the assignment\n";
      return kExitTokenMismatch;
    }
    joint[g.n_users + v] = a.item_cluster[it->second];
  }

  const double gamma = args.gamma >= 0.0 ? args.gamma : a.gamma;
  baco::WeightSchemeKind scheme_kind;
  try {
    scheme_kind = args.scheme.empty() ? a.scheme
                                      : baco::scheme_from_name(args.scheme);
    if (scheme_kind == baco::WeightSchemeKind::Custom) {
      std::cerr << "error: custom weights are not recoverable from an "
                   "assignment file; pass --scheme\n";
      return kExitConfig;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  const baco::WeightVector w =
      baco::compute_weights(g, baco::WeightScheme{scheme_kind, {}, {}});

  std::vector<std::uint64_t> user_sizes(a.k_user, 0), item_sizes(a.k_item, 0);
  for (auto id : a.user_primary) ++user_sizes[id];
  for (auto id : a.item_cluster) ++item_sizes[id];

  const auto joint_hist = baco::joint_sizes(joint);
  std::uint64_t smin = UINT64_MAX, smax = 0, stot = 0;
  for (auto s : joint_hist) {
    smin = std::min(smin, s);
    smax = std::max(smax, s);
    stot += s;
  }

  json j;
  j["k_user"] = a.k_user;
  j["k_item"] = a.k_item;
  j["gini_user"] = baco::gini(user_sizes);
  j["gini_item"] = baco::gini(item_sizes);
  j["gini_joint"] = baco::gini(joint_hist);
  j["accl"] = baco::accl(g, joint);
  j["cross_edges"] = baco::cross_cluster_edges(g, joint);
  j["objective"] = baco::objective_pairsum(g, w, joint, gamma);
  j["sizes"] = {{"clusters", joint_hist.size()},
                {"min", smin},
                {"max", smax},
                {"mean", static_cast<double>(stot) /
                             static_cast<double>(joint_hist.size())}};
  std::cout << j.dump() << "\n";
  return 0;
}

struct SynthArgs {
  std::string out;
  std::string kind = "planted";
  std::uint32_t blocks = 2;
  std::uint32_t users_per_block = 5;
  std::uint32_t items_per_block = 5;
  double pu = 1.0;
  double po = 0.0;
  std::uint32_t users = 100;
  std::uint32_t items = 100;
  std::uint64_t edges = 500;
  std::uint64_t seed = 0;
};

int write_edges(const baco::BipartiteGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open " << path << " for writing\n";
    return kExitIo;
  }
  for (baco::NodeId u = 0; u < g.n_users; ++u)
    for (baco::NodeId v : g.items_of(u))
      out << g.user_tokens[u] << '\t' << g.item_tokens[v] << '\n';
  if (!out.flush()) {
    std::cerr << "error: write to " << path << " failed\n";
    return kExitIo;
  }
  json j;
  j["users"] = g.n_users;
  j["items"] = g.n_items;
  j["edges"] = g.n_edges();
  std::cout << j.dump() << "\n";
  return 0;
}

int cmd_synth(const SynthArgs& args) {
  try {
    if (args.kind == "planted") {
      baco::Planted p = baco::planted_bipartite(
          args.blocks, args.users_per_block, args.items_per_block, args.pu,
          args.po, args.seed);
      return write_edges(p.graph, args.out);
    }
    baco::BipartiteGraph g =
        baco::random_bipartite(args.users, args.items, args.edges, args.seed);
    return write_edges(g, args.out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

struct OracleArgs {
  std::string edges;
  double gamma = 0.0;
  std::string scheme = "hws";
  std::uint32_t max_nodes = 10;
};

int cmd_oracle(const OracleArgs& args) {
  baco::BipartiteGraph g;
  try {
    g = baco::build_graph(baco::load_edge_list(args.edges));
  } catch (const baco::ParseError& e) {
    std::cerr << "error: " << args.edges << ": " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }

  try {
    const baco::WeightScheme scheme{baco::scheme_from_name(args.scheme), {}, {}};
    const baco::WeightVector w = baco::compute_weights(g, scheme);
    const baco::OracleResult r =
        baco::brute_force_optimum(g, w, args.gamma, args.max_nodes);

    json users = json::object(), items = json::object();
    for (baco::NodeId u = 0; u < g.n_users; ++u)
      users[g.user_tokens[u]] = r.best[u];
    for (baco::NodeId v = 0; v < g.n_items; ++v)
      items[g.item_tokens[v]] = r.best[g.n_users + v];
    json j;
    j["score"] = r.score;
    j["clusters"] =
        1 + *std::max_element(r.best.begin(), r.best.end());
    j["user_labels"] = users;
    j["item_labels"] = items;
    std::cout << j.dump() << "\n";
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Balanced co-clustering sketcher for bipartite user-item graphs"};
  app.require_subcommand(1);

  ClusterArgs ca;
  CLI::App* cluster =
      app.add_subcommand("cluster", "Co-cluster a graph and write a sketch");
  cluster->add_option("--edges", ca.edges, "Edge list (user<TAB>item lines)")
      ->required();
  cluster->add_option("--out", ca.out, "Assignment output path")->required();
  cluster->add_option("--gamma", ca.gamma, "Resolution / balance strength");
  cluster->add_option("--budget", ca.budget, "Row budget on K_user + K_item");
  cluster->add_option("--ratio", ca.ratio,
                      "Budget as a fraction of n_users + n_items");
  cluster->add_option("--dim", ca.dim, "Embedding width d (needed for --scu)");
  cluster->add_option("--max-iters", ca.max_iters, "Sweep cap")
      ->capture_default_str();
  cluster->add_option("--scheme", ca.scheme,
                      "hws|modularity|cpm-unit|reverse-hws")
      ->capture_default_str();
  cluster->add_flag("--scu", ca.scu, "Assign each user a secondary cluster");
  cluster->add_flag("--scu-distinct", ca.scu_distinct,
                    "Force the secondary cluster to differ from the primary");
  cluster->add_flag("--strict-budget", ca.strict_budget,
                    "Fail when the budget is not reached");
  cluster->add_option("--order", ca.order, "index|shuffle")
      ->capture_default_str();
  cluster->add_option("--seed", ca.seed, "Shuffle seed")
      ->capture_default_str();

  MetricsArgs ma;
  CLI::App* metrics =
      app.add_subcommand("metrics", "Diagnostics for a written assignment");
  metrics->add_option("--edges", ma.edges, "Edge list")->required();
  metrics->add_option("--assignment", ma.assignment, "Assignment file")
      ->required();
  metrics->add_option("--gamma", ma.gamma,
                      "Override the gamma recorded in the assignment");
  metrics->add_option("--scheme", ma.scheme,
                      "Override the scheme recorded in the assignment");

  SynthArgs sa;
  CLI::App* synth =
      app.add_subcommand("synth", "Generate a synthetic edge list");
  synth->add_option("--out", sa.out, "Edge list output path")->required();
  synth->add_option("--kind", sa.kind, "planted|random")
      ->check(CLI::IsMember({"planted", "random"}))
      ->capture_default_str();
  synth->add_option("--blocks", sa.blocks, "Planted block count")
      ->capture_default_str();
  synth->add_option("--users-per-block", sa.users_per_block,
                    "Planted users per block")
      ->capture_default_str();
  synth->add_option("--items-per-block", sa.items_per_block,
                    "Planted items per block")
      ->capture_default_str();
  synth->add_option("--pu", sa.pu, "Within-block edge probability")
      ->capture_default_str();
  synth->add_option("--po", sa.po, "Cross-block edge probability")
      ->capture_default_str();
  synth->add_option("--users", sa.users, "Random graph user count")
      ->capture_default_str();
  synth->add_option("--items", sa.items, "Random graph item count")
      ->capture_default_str();
  synth->add_option("--edges", sa.edges, "Random graph edge count")
      ->capture_default_str();
  synth->add_option("--seed", sa.seed, "Generator seed")
      ->capture_default_str();

  OracleArgs oa;
  CLI::App* oracle = app.add_subcommand(
      "oracle", "Exhaustive optimum for a tiny graph (exponential)");
  oracle->add_option("--edges", oa.edges, "Edge list")->required();
  oracle->add_option("--gamma", oa.gamma, "Resolution / balance strength");
  oracle->add_option("--scheme", oa.scheme,
                     "hws|modularity|cpm-unit|reverse-hws")
      ->capture_default_str();
  oracle->add_option("--max-nodes", oa.max_nodes, "Size cap (<= 12)")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (cluster->parsed()) return cmd_cluster(ca);
  if (metrics->parsed()) return cmd_metrics(ma);
  if (synth->parsed()) return cmd_synth(sa);
  return cmd_oracle(oa);
}
