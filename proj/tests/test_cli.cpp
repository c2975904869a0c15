#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "baco/graph.hpp"
#include "baco/sketch.hpp"
#include "test_support.hpp"

using nlohmann::json;
using testsupport::near;

namespace {

std::string g_binary;
std::filesystem::path g_dir;

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = "'" + g_binary + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string text;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) text.append(buf, got);
  const int status = pclose(pipe);
  REQUIRE(status != -1);
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = text;
  return r;
}

std::string at(const std::string& name) { return (g_dir / name).string(); }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << text;
}

// The shared fixture: a planted 2-block graph every test can reuse.
const std::string& planted_edges() {
  static const std::string path = [] {
    const std::string p = at("planted.tsv");
    const Run r = run_cli("synth --kind planted --blocks 2"
                          " --users-per-block 5 --items-per-block 5"
                          " --pu 1.0 --po 0.0 --seed 7 --out " + p);
    REQUIRE(r.code == 0);
    return p;
  }();
  return path;
}

}  // namespace

TEST_CASE("synth is deterministic and writes a loadable edge list") {
  const Run a = run_cli("synth --kind planted --blocks 2 --users-per-block 5"
                        " --items-per-block 5 --pu 1.0 --po 0.0 --seed 7"
                        " --out " + at("synth_a.tsv"));
  const Run b = run_cli("synth --kind planted --blocks 2 --users-per-block 5"
                        " --items-per-block 5 --pu 1.0 --po 0.0 --seed 7"
                        " --out " + at("synth_b.tsv"));
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(slurp(at("synth_a.tsv")) == slurp(at("synth_b.tsv")));

  const json j = json::parse(a.out);
  CHECK(j["users"] == 10);
  CHECK(j["items"] == 10);
  CHECK(j["edges"] == 50);

  // The file itself loads as a 2x(5+5) biclique pair.
  const baco::BipartiteGraph g =
      baco::build_graph(baco::load_edge_list(at("synth_a.tsv")));
  CHECK(g.n_users == 10);
  CHECK(g.n_items == 10);
  CHECK(g.n_edges() == 50);

  const Run r = run_cli("synth --kind random --users 10 --items 10"
                        " --edges 90 --seed 3 --out " + at("rand.tsv"));
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["edges"] == 90);
}

TEST_CASE("cluster emits the pinned report keys and an exact sketch") {
  const Run r = run_cli("cluster --edges " + planted_edges() +
                        " --gamma 0.1 --budget 4 --out " + at("plant.sketch"));
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  for (const char* key :
       {"iterations", "k_user", "k_item", "objective", "budget_met",
        "wall_ms", "gini_user", "gini_item", "accl"})
    CHECK(j.contains(key));
  CHECK(j["k_user"] == 2);
  CHECK(j["k_item"] == 2);
  CHECK(j["budget_met"] == true);
  CHECK(j["accl"] == 0.0);
  CHECK(j["gini_user"] == 0.0);
  CHECK(j["gini_item"] == 0.0);
  // Two 5x5 blocks under degree/sqrt scaling at gamma = 0.1.
  const double expected =
      50.0 - 0.1 * 2.0 * (25.0 / std::sqrt(50.0)) * (5.0 / std::sqrt(10.0));
  CHECK(near(j["objective"].get<double>(), expected, 1e-9, 1e-12));

  std::ifstream in(at("plant.sketch"), std::ios::binary);
  const baco::AssignmentFile f = baco::read_assignment(in);
  CHECK(f.assignment.k_user == 2);
  CHECK(f.assignment.k_item == 2);
  CHECK(f.assignment.gamma == 0.1);
  CHECK_FALSE(f.assignment.scu);
  CHECK(f.user_tokens.size() == 10);

  // Index order is deterministic: a rerun reproduces the sketch bytes
  // and the whole report except the timing.
  const Run again = run_cli("cluster --edges " + planted_edges() +
                            " --gamma 0.1 --budget 4 --out " +
                            at("plant2.sketch"));
  REQUIRE(again.code == 0);
  CHECK(slurp(at("plant.sketch")) == slurp(at("plant2.sketch")));
  json j1 = json::parse(r.out), j2 = json::parse(again.out);
  j1.erase("wall_ms");
  j2.erase("wall_ms");
  CHECK(j1 == j2);
}

TEST_CASE("metrics agrees with the cluster report it reads back") {
  const Run c = run_cli("cluster --edges " + planted_edges() +
                        " --gamma 0.1 --budget 4 --out " + at("m.sketch"));
  REQUIRE(c.code == 0);
  const Run m = run_cli("metrics --edges " + planted_edges() +
                        " --assignment " + at("m.sketch"));
  REQUIRE(m.code == 0);
  const json j = json::parse(m.out);
  CHECK(j["k_user"] == 2);
  CHECK(j["k_item"] == 2);
  CHECK(j["cross_edges"] == 0);
  CHECK(j["accl"] == 0.0);
  CHECK(j["gini_user"] == 0.0);
  CHECK(j["gini_joint"] == 0.0);
  CHECK(near(j["objective"].get<double>(),
             json::parse(c.out)["objective"].get<double>(), 1e-9, 1e-12));
  CHECK(j["sizes"]["clusters"] == 2);
  CHECK(j["sizes"]["min"] == 10);
  CHECK(j["sizes"]["max"] == 10);
  CHECK(j["sizes"]["mean"] == 10.0);

  // Overriding gamma = 0 turns the objective into the intra edge count.
  const Run zero = run_cli("metrics --edges " + planted_edges() +
                           " --assignment " + at("m.sketch") + " --gamma 0");
  REQUIRE(zero.code == 0);
  CHECK(json::parse(zero.out)["objective"] == 50.0);
}

TEST_CASE("metrics refuses assignments for a different graph") {
  const Run c = run_cli("cluster --edges " + planted_edges() +
                        " --gamma 0.1 --budget 4 --out " + at("mm.sketch"));
  REQUIRE(c.code == 0);

  // Same entity counts, one renamed token.
  spit(at("small_a.tsv"), "a\tx\na\ty\nb\tx\n");
  spit(at("small_b.tsv"), "a\tx\na\ty\nc\tx\n");
  const Run ca = run_cli("cluster --edges " + at("small_a.tsv") +
                         " --gamma 0 --budget 2 --out " + at("small.sketch"));
  REQUIRE(ca.code == 0);
  CHECK(run_cli("metrics --edges " + at("small_b.tsv") + " --assignment " +
                at("small.sketch"))
            .code == 3);

  // Mismatched entity counts.
  CHECK(run_cli("metrics --edges " + at("small_a.tsv") + " --assignment " +
                at("mm.sketch"))
            .code == 3);
}

TEST_CASE("oracle reproduces the exact two-matchings optimum") {
  spit(at("two.tsv"), "u1\tv1\nu2\tv2\n");
  const Run r = run_cli("oracle --edges " + at("two.tsv") +
                        " --gamma 0.5 --scheme cpm-unit");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["score"] == 1.0);
  CHECK(j["clusters"] == 2);
  CHECK(j["user_labels"]["u1"] == j["item_labels"]["v1"]);
  CHECK(j["user_labels"]["u2"] == j["item_labels"]["v2"]);
  CHECK(j["user_labels"]["u1"] != j["user_labels"]["u2"]);

  // 20 nodes is past the default cap, and beyond 12 is never allowed.
  CHECK(run_cli("oracle --edges " + planted_edges()).code == 2);
  CHECK(run_cli("oracle --edges " + planted_edges() + " --max-nodes 13")
            .code == 2);
}

TEST_CASE("configuration mistakes exit with the validation code") {
  const std::string base =
      "cluster --edges " + planted_edges() + " --out " + at("cfg.sketch");
  CHECK(run_cli(base + " --budget 4 --scu").code == 2);  // --scu needs --dim
  CHECK(run_cli(base + " --budget 4 --ratio 0.5").code == 2);
  CHECK(run_cli(base).code == 2);  // neither budget nor ratio
  CHECK(run_cli(base + " --budget 4 --scheme leiden").code == 2);
  CHECK(run_cli(base + " --budget 4 --gamma -1").code == 2);

  // Custom weights cannot be reconstructed from an assignment header, so
  // metrics insists on an explicit override.
  spit(at("one.tsv"), "a\tx\n");
  spit(at("custom.sketch"),
       "#BACOSKETCH v1 K_u=1 K_v=1 gamma=0.5 scu=0 scheme=custom\n"
       "U\ta\t0\n"
       "I\tx\t0\n");
  CHECK(run_cli("metrics --edges " + at("one.tsv") + " --assignment " +
                at("custom.sketch"))
            .code == 2);
  CHECK(run_cli("metrics --edges " + at("one.tsv") + " --assignment " +
                at("custom.sketch") + " --scheme hws")
            .code == 0);

  // Unknown flags are rejected by the parser (code not part of the
  // pinned map, just nonzero).
  CHECK(run_cli(base + " --frobnicate").code != 0);
  CHECK(run_cli("").code != 0);  // a subcommand is required
}

TEST_CASE("missing files exit with the io code") {
  CHECK(run_cli("cluster --edges " + at("nope.tsv") + " --budget 2 --out " +
                at("x.sketch"))
            .code == 1);
  CHECK(run_cli("metrics --edges " + planted_edges() + " --assignment " +
                at("nope.sketch"))
            .code == 1);
  CHECK(run_cli("cluster --edges " + planted_edges() +
                " --budget 4 --out " + at("no_dir/x.sketch"))
            .code == 1);
}

TEST_CASE("unreachable strict budgets exit with the budget code") {
  const Run s = run_cli("synth --kind planted --blocks 3 --users-per-block 4"
                        " --items-per-block 4 --pu 1.0 --po 0.0 --seed 11"
                        " --out " + at("three.tsv"));
  REQUIRE(s.code == 0);
  // Three disconnected blocks can never reach K = 2.
  const Run r = run_cli("cluster --edges " + at("three.tsv") +
                        " --gamma 0.1 --budget 2 --strict-budget --out " +
                        at("strict.sketch"));
  CHECK(r.code == 4);
  CHECK_FALSE(std::filesystem::exists(at("strict.sketch")));

  // Without --strict-budget the same run succeeds and reports the miss.
  const Run soft = run_cli("cluster --edges " + at("three.tsv") +
                           " --gamma 0.1 --budget 2 --out " +
                           at("soft.sketch"));
  REQUIRE(soft.code == 0);
  CHECK(json::parse(soft.out)["budget_met"] == false);
  CHECK(json::parse(soft.out)["k_user"] == 3);
}

TEST_CASE("scu clustering roundtrips through the cli") {
  const Run r = run_cli("cluster --edges " + planted_edges() +
                        " --gamma 0.1 --budget 20 --scu --dim 4"
                        " --scu-distinct --out " + at("scu.sketch"));
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["budget_met"] == true);  // shared budget B' = (80 - 10) / 4 = 17

  const std::string text = slurp(at("scu.sketch"));
  CHECK(text.find("scu=1") != std::string::npos);
  std::ifstream in(at("scu.sketch"), std::ios::binary);
  const baco::AssignmentFile f = baco::read_assignment(in);
  REQUIRE(f.assignment.scu);
  CHECK(f.assignment.user_secondary.size() == 10);

  const Run m = run_cli("metrics --edges " + planted_edges() +
                        " --assignment " + at("scu.sketch"));
  CHECK(m.code == 0);
}

TEST_CASE("shuffled order is reproducible for a fixed seed") {
  const std::string base = "cluster --edges " + planted_edges() +
                           " --gamma 0.1 --budget 4 --order shuffle";
  const Run a = run_cli(base + " --seed 9 --out " + at("sh_a.sketch"));
  const Run b = run_cli(base + " --seed 9 --out " + at("sh_b.sketch"));
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(slurp(at("sh_a.sketch")) == slurp(at("sh_b.sketch")));
}

int run_all(int argc, char** argv) {
  doctest::Context ctx;
  std::vector<const char*> rest;
  rest.push_back(argv[0]);
  for (int i = 1; i < argc; ++i) {
    if (std::string_view(argv[i]) == "--binary" && i + 1 < argc) {
      g_binary = argv[++i];
    } else {
      rest.push_back(argv[i]);
    }
  }
  if (g_binary.empty()) {
    std::fprintf(stderr, "usage: test_cli --binary <path to the cli>\n");
    return 1;
  }
  g_dir = std::filesystem::temp_directory_path() /
          ("baco_cli_" + std::to_string(getpid()));
  std::filesystem::remove_all(g_dir);
  std::filesystem::create_directories(g_dir);
  ctx.applyCommandLine(static_cast<int>(rest.size()), rest.data());
  const int rc = ctx.run();
  std::filesystem::remove_all(g_dir);
  return rc;
}

int main(int argc, char** argv) { return run_all(argc, argv); }
