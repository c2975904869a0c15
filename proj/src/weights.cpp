#include "baco/weights.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace baco {

std::string scheme_name(WeightSchemeKind kind) {
  switch (kind) {
    case WeightSchemeKind::Hws: return "hws";
    case WeightSchemeKind::ModularityDegree: return "modularity";
    case WeightSchemeKind::CpmUnit: return "cpm-unit";
    case WeightSchemeKind::ReverseHws: return "reverse-hws";
    case WeightSchemeKind::Custom: return "custom";
  }
  throw std::invalid_argument("unknown weight scheme kind");
}

WeightSchemeKind scheme_from_name(const std::string& name) {
  if (name == "hws") return WeightSchemeKind::Hws;
  if (name == "modularity") return WeightSchemeKind::ModularityDegree;
  if (name == "cpm-unit") return WeightSchemeKind::CpmUnit;
  if (name == "reverse-hws") return WeightSchemeKind::ReverseHws;
  if (name == "custom") return WeightSchemeKind::Custom;
  throw std::invalid_argument("unknown weight scheme: " + name);
}

WeightVector compute_weights(const BipartiteGraph& g, const WeightScheme& s) {
  WeightVector w;
  w.user.resize(g.n_users);
  w.item.resize(g.n_items);
  const double inv_sqrt_e = 1.0 / std::sqrt(static_cast<double>(g.n_edges()));

  switch (s.kind) {
    case WeightSchemeKind::Hws: {
      for (NodeId u = 0; u < g.n_users; ++u)
        w.user[u] = static_cast<double>(g.user_degree(u)) * inv_sqrt_e;
      const double wv = 1.0 / std::sqrt(static_cast<double>(g.n_items));
      for (NodeId v = 0; v < g.n_items; ++v) w.item[v] = wv;
      break;
    }
    case WeightSchemeKind::ModularityDegree: {
      for (NodeId u = 0; u < g.n_users; ++u)
        w.user[u] = static_cast<double>(g.user_degree(u)) * inv_sqrt_e;
      for (NodeId v = 0; v < g.n_items; ++v)
        w.item[v] = static_cast<double>(g.item_degree(v)) * inv_sqrt_e;
      break;
    }
    case WeightSchemeKind::CpmUnit: {
      for (NodeId u = 0; u < g.n_users; ++u) w.user[u] = 1.0;
      for (NodeId v = 0; v < g.n_items; ++v) w.item[v] = 1.0;
      break;
    }
    case WeightSchemeKind::ReverseHws: {
      const double wu = 1.0 / std::sqrt(static_cast<double>(g.n_users));
      for (NodeId u = 0; u < g.n_users; ++u) w.user[u] = wu;
      for (NodeId v = 0; v < g.n_items; ++v)
        w.item[v] = static_cast<double>(g.item_degree(v)) * inv_sqrt_e;
      break;
    }
    case WeightSchemeKind::Custom: {
      if (s.custom_user.size() != g.n_users ||
          s.custom_item.size() != g.n_items)
        throw std::invalid_argument("custom weight length mismatch");
      for (double x : s.custom_user)
        if (!(x > 0.0))
          throw std::invalid_argument("custom weights must be positive");
      for (double x : s.custom_item)
        if (!(x > 0.0))
          throw std::invalid_argument("custom weights must be positive");
      w.user = s.custom_user;
      w.item = s.custom_item;
      break;
    }
  }

  w.total_user = std::accumulate(w.user.begin(), w.user.end(), 0.0);
  w.total_item = std::accumulate(w.item.begin(), w.item.end(), 0.0);
  return w;
}

}  // namespace baco
