#pragma once

#include <string>
#include <vector>

#include "baco/graph.hpp"

namespace baco {

enum class WeightSchemeKind {
  // Users weighted by degree/sqrt(|E|), items uniformly by 1/sqrt(|V|).
  // The asymmetry follows interaction data: user activity is informative,
  // item popularity is mostly noise to be flattened.
  Hws,
  // Both sides degree/sqrt(|E|); the penalty then reduces to the standard
  // bipartite modularity null model.
  ModularityDegree,
  // All weights 1; the penalty counts user-item pairs per cluster.
  CpmUnit,
  // Mirror of Hws: users uniform 1/sqrt(|U|), items degree/sqrt(|E|).
  ReverseHws,
  // Caller-supplied positive per-entity weights.
  Custom,
};

struct WeightScheme {
  WeightSchemeKind kind = WeightSchemeKind::Hws;
  std::vector<double> custom_user;  // Custom only
  std::vector<double> custom_item;

  static WeightScheme hws() { return {WeightSchemeKind::Hws, {}, {}}; }
  static WeightScheme modularity_degree() {
    return {WeightSchemeKind::ModularityDegree, {}, {}};
  }
  static WeightScheme cpm_unit() { return {WeightSchemeKind::CpmUnit, {}, {}}; }
  static WeightScheme reverse_hws() {
    return {WeightSchemeKind::ReverseHws, {}, {}};
  }
  static WeightScheme custom(std::vector<double> user,
                             std::vector<double> item) {
    return {WeightSchemeKind::Custom, std::move(user), std::move(item)};
  }
};

// Scheme name as used in assignment-file metadata and on the CLI.
std::string scheme_name(WeightSchemeKind kind);
// Inverse of scheme_name; throws std::invalid_argument on unknown names.
WeightSchemeKind scheme_from_name(const std::string& name);

struct WeightVector {
  std::vector<double> user;  // size n_users
  std::vector<double> item;  // size n_items
  double total_user = 0.0;
  double total_item = 0.0;
};

// Materializes per-entity weights for the given scheme. Custom schemes
// must match the graph's entity counts and be strictly positive.
WeightVector compute_weights(const BipartiteGraph& g, const WeightScheme& s);

}  // namespace baco
