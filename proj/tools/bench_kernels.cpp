// Compares the OpenMP evaluation kernels against their serial reference
// implementations on a synthetic graph, and times a full solve for
// context. The solver itself is sequential by contract; only the
// edge-scan evaluation kernels parallelize.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "baco/metrics.hpp"
#include "baco/objective.hpp"
#include "baco/solver.hpp"
#include "baco/synth.hpp"

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <typename F>
double best_of(int trials, F&& f) {
  double best = 1e300;
  for (int t = 0; t < trials; ++t) {
    const double t0 = now_ms();
    f();
    best = std::min(best, now_ms() - t0);
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  std::uint32_t users = 30000, items = 41000, clusters = 2000;
  std::uint64_t edges = 1000000, seed = 42;
  int trials = 5;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    const std::string val = argv[i + 1];
    if (flag == "--users") users = std::stoul(val);
    else if (flag == "--items") items = std::stoul(val);
    else if (flag == "--edges") edges = std::stoull(val);
    else if (flag == "--clusters") clusters = std::stoul(val);
    else if (flag == "--seed") seed = std::stoull(val);
    else if (flag == "--trials") trials = std::stoi(val);
    else {
      std::fprintf(stderr, "unknown flag %s\n", flag.c_str());
      return 2;
    }
  }

  std::printf("generating %u x %u graph with %llu edges ...\n", users, items,
              static_cast<unsigned long long>(edges));
  const baco::BipartiteGraph g =
      baco::random_bipartite(users, items, edges, seed);
  const baco::WeightVector w =
      baco::compute_weights(g, baco::WeightScheme::hws());

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> dl(0, clusters - 1);
  baco::Labeling labels(g.n_nodes());
  std::vector<std::uint32_t> dense(g.n_nodes());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    dense[i] = dl(rng);
    labels[i] = dense[i];
  }

#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both columns run serial code\n");
#endif
  std::printf("%-28s %12s %12s %9s\n", "kernel", "serial ms", "parallel ms",
              "speedup");

  volatile std::uint64_t sink_u = 0;
  volatile double sink_d = 0.0;

  const double t_intra_s = best_of(
      trials, [&] { sink_u = baco::intra_cluster_edges_serial(g, dense); });
  const std::uint64_t intra_serial = sink_u;
  const double t_intra_p =
      best_of(trials, [&] { sink_u = baco::intra_cluster_edges(g, dense); });
  if (sink_u != intra_serial) {
    std::fprintf(stderr, "kernel mismatch: intra %llu vs %llu\n",
                 static_cast<unsigned long long>(intra_serial),
                 static_cast<unsigned long long>(sink_u));
    return 1;
  }
  std::printf("%-28s %12.3f %12.3f %8.2fx\n", "intra_cluster_edges", t_intra_s,
              t_intra_p, t_intra_s / t_intra_p);

  const double gamma = 2.0;
  const double t_obj_s = best_of(trials, [&] {
    sink_d = baco::objective_pairsum_serial(g, w, labels, gamma);
  });
  const double obj_serial = sink_d;
  const double t_obj_p = best_of(
      trials, [&] { sink_d = baco::objective_pairsum(g, w, labels, gamma); });
  if (sink_d != obj_serial) {
    std::fprintf(stderr, "kernel mismatch: objective %.17g vs %.17g\n",
                 obj_serial, sink_d);
    return 1;
  }
  std::printf("%-28s %12.3f %12.3f %8.2fx\n", "objective_pairsum", t_obj_s,
              t_obj_p, t_obj_s / t_obj_p);

  baco::SolverConfig cfg;
  cfg.gamma = 1.0;
  cfg.budget = 2;
  cfg.max_iters = 5;
  const double t0 = now_ms();
  auto [state, report] = baco::run_basic(g, w, cfg);
  const double t_solve = now_ms() - t0;
  std::printf("\nrun_basic (sequential): %.1f ms, %u sweeps, K=%u+%u, "
              "objective %.4f\n",
              t_solve, report.iterations, report.k_user, report.k_item,
              report.objective);
  return 0;
}
