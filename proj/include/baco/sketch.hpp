#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "baco/common.hpp"
#include "baco/solver.hpp"

namespace baco {

// Finalized per-entity cluster ids, consecutive from 0 per side. Users
// and items are relabeled independently; with SCU the user mapping is
// shared between the primary and secondary columns so that one codebook
// row always means one cluster.
struct SketchAssignment {
  std::vector<std::uint32_t> user_primary;    // size n_users, ids in [0, k_user)
  std::vector<std::uint32_t> user_secondary;  // empty unless scu
  std::vector<std::uint32_t> item_cluster;    // size n_items, ids in [0, k_item)
  std::uint32_t k_user = 0;
  std::uint32_t k_item = 0;
  double gamma = 0.0;
  bool scu = false;
  WeightSchemeKind scheme = WeightSchemeKind::Hws;

  std::uint32_t n_users() const {
    return static_cast<std::uint32_t>(user_primary.size());
  }
  std::uint32_t n_items() const {
    return static_cast<std::uint32_t>(item_cluster.size());
  }
};

// Maps raw labels to consecutive ids by first appearance: users over the
// primary pass first, then (when present) the secondary pass extends the
// same map, so a secondary label naming a cluster with no primary users
// grows k_user. Items are mapped independently. In strict-budget SCU
// mode, secondary labels that would push k_user + k_item past the
// reduced budget collapse to the user's primary id.
SketchAssignment finalize(const ClusterState& state,
                          const std::vector<RawLabel>* secondary,
                          const SolverConfig& cfg);

struct ParamCount {
  std::uint64_t codebook_params = 0;  // (k_user + k_item) * d
  std::uint64_t index_ints = 0;       // stored assignment integers
  std::uint64_t full_params = 0;      // (n_users + n_items) * d
  // Embedding-parameter-equivalent compression: the SCU secondary column
  // is charged at one parameter per user, plain index storage is not.
  double ratio = 0.0;
};

ParamCount param_count(const SketchAssignment& a, std::uint32_t dim);

struct DenseMatrix {
  std::uint32_t rows = 0;
  std::uint32_t dim = 0;
  std::vector<double> data;  // row-major

  double* row(std::uint32_t r) { return data.data() + std::size_t(r) * dim; }
  const double* row(std::uint32_t r) const {
    return data.data() + std::size_t(r) * dim;
  }
};

using Codebook = DenseMatrix;

struct MaterializedEmbeddings {
  DenseMatrix user;  // n_users x d
  DenseMatrix item;  // n_items x d
};

// Expands the sketch: each user row is the primary codebook row, plus
// the secondary row when present and distinct (a repeated id contributes
// once). Item rows are plain lookups.
MaterializedEmbeddings materialize(const SketchAssignment& a,
                                   const Codebook& user_codebook,
                                   const Codebook& item_codebook);

// Line-oriented text format:
//   #BACOSKETCH v1 K_u=<int> K_v=<int> gamma=<decimal> scu=<0|1> scheme=<name>
//   U\t<token>\t<primary>[\t<secondary>]   (secondary column iff scu=1)
//   I\t<token>\t<cluster>
// Tokens must not contain tab or newline; gamma roundtrips exactly.
void write_assignment(const SketchAssignment& a,
                      const std::vector<std::string>& user_tokens,
                      const std::vector<std::string>& item_tokens,
                      std::ostream& out);

struct AssignmentFile {
  SketchAssignment assignment;
  std::vector<std::string> user_tokens;
  std::vector<std::string> item_tokens;
};

// Strict parser; throws ParseError (with line number) on version
// mismatch, malformed lines, out-of-range ids, or id gaps.
AssignmentFile read_assignment(std::istream& in);

}  // namespace baco
