#include "baco/sketch.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace baco {

SketchAssignment finalize(const ClusterState& state,
                          const std::vector<RawLabel>* secondary,
                          const SolverConfig& cfg) {
  const NodeId n = state.n_users;
  const NodeId m = static_cast<NodeId>(state.label.size()) - n;

  SketchAssignment a;
  a.gamma = cfg.gamma;
  a.scu = secondary != nullptr;
  a.scheme = cfg.scheme.kind;

  std::unordered_map<RawLabel, std::uint32_t> user_map, item_map;
  a.user_primary.resize(n);
  for (NodeId u = 0; u < n; ++u) {
    auto [it, fresh] =
        user_map.try_emplace(state.label[u], a.k_user);
    if (fresh) ++a.k_user;
    a.user_primary[u] = it->second;
  }
  a.item_cluster.resize(m);
  for (NodeId v = 0; v < m; ++v) {
    auto [it, fresh] =
        item_map.try_emplace(state.label[n + v], a.k_item);
    if (fresh) ++a.k_item;
    a.item_cluster[v] = it->second;
  }

  if (secondary) {
    if (secondary->size() != n)
      throw std::invalid_argument("secondary label count != n_users");
    // In strict SCU mode, fresh secondary columns are admitted only
    // while the shared row budget B' still has room.
    std::uint64_t row_cap = UINT64_MAX;
    if (cfg.strict_budget) {
      if (cfg.dim < 1)
        throw std::invalid_argument("strict scu finalize requires dim >= 1");
      const std::uint64_t rows =
          static_cast<std::uint64_t>(cfg.budget) * cfg.dim;
      if (rows <= state.n_users)
        throw std::invalid_argument(
            "budget * dim must exceed the user count in scu mode");
      row_cap = (rows - state.n_users) / cfg.dim;
    }
    a.user_secondary.resize(n);
    for (NodeId u = 0; u < n; ++u) {
      const RawLabel raw = (*secondary)[u];
      auto it = user_map.find(raw);
      if (it != user_map.end()) {
        a.user_secondary[u] = it->second;
      } else if (static_cast<std::uint64_t>(a.k_user) + a.k_item < row_cap) {
        user_map.emplace(raw, a.k_user);
        a.user_secondary[u] = a.k_user++;
      } else {
        a.user_secondary[u] = a.user_primary[u];
      }
    }
  }
  return a;
}

ParamCount param_count(const SketchAssignment& a, std::uint32_t dim) {
  if (dim < 1) throw std::invalid_argument("dim must be >= 1");
  const std::uint64_t n = a.n_users(), m = a.n_items();
  ParamCount p;
  p.codebook_params =
      (static_cast<std::uint64_t>(a.k_user) + a.k_item) * dim;
  p.index_ints = n + m + (a.user_secondary.empty() ? 0 : n);
  p.full_params = (n + m) * dim;
  const std::uint64_t scu_extra = a.user_secondary.empty() ? 0 : n;
  p.ratio = static_cast<double>(p.codebook_params + scu_extra) /
            static_cast<double>(p.full_params);
  return p;
}

MaterializedEmbeddings materialize(const SketchAssignment& a,
                                   const Codebook& user_codebook,
                                   const Codebook& item_codebook) {
  if (user_codebook.rows != a.k_user || item_codebook.rows != a.k_item)
    throw std::invalid_argument("codebook row count does not match K");
  if (user_codebook.dim != item_codebook.dim || user_codebook.dim < 1)
    throw std::invalid_argument("codebook dimension mismatch");

  const std::uint32_t d = user_codebook.dim;
  MaterializedEmbeddings out;
  out.user = {a.n_users(), d,
              std::vector<double>(std::size_t(a.n_users()) * d, 0.0)};
  out.item = {a.n_items(), d,
              std::vector<double>(std::size_t(a.n_items()) * d, 0.0)};

  for (std::uint32_t i = 0; i < a.n_users(); ++i) {
    const double* p = user_codebook.row(a.user_primary[i]);
    double* dst = out.user.row(i);
    for (std::uint32_t c = 0; c < d; ++c) dst[c] = p[c];
    if (!a.user_secondary.empty() &&
        a.user_secondary[i] != a.user_primary[i]) {
      const double* s = user_codebook.row(a.user_secondary[i]);
      for (std::uint32_t c = 0; c < d; ++c) dst[c] += s[c];
    }
  }
  for (std::uint32_t j = 0; j < a.n_items(); ++j) {
    const double* p = item_codebook.row(a.item_cluster[j]);
    double* dst = out.item.row(j);
    for (std::uint32_t c = 0; c < d; ++c) dst[c] = p[c];
  }
  return out;
}

namespace {

std::string format_gamma(double g) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", g);
  return buf;
}

void check_token(const std::string& t) {
  if (t.empty() || t.find('\t') != std::string::npos ||
      t.find('\n') != std::string::npos)
    throw std::invalid_argument("token must be non-empty, tab/newline free");
}

}  // namespace

void write_assignment(const SketchAssignment& a,
                      const std::vector<std::string>& user_tokens,
                      const std::vector<std::string>& item_tokens,
                      std::ostream& out) {
  if (user_tokens.size() != a.n_users() || item_tokens.size() != a.n_items())
    throw std::invalid_argument("token map size does not match assignment");
  if (a.scu && a.user_secondary.size() != a.n_users())
    throw std::invalid_argument("scu assignment lacks secondary column");

  out << "#BACOSKETCH v1 K_u=" << a.k_user << " K_v=" << a.k_item
      << " gamma=" << format_gamma(a.gamma) << " scu=" << (a.scu ? 1 : 0)
      << " scheme=" << scheme_name(a.scheme) << "\n";
  for (std::uint32_t i = 0; i < a.n_users(); ++i) {
    check_token(user_tokens[i]);
    out << "U\t" << user_tokens[i] << '\t' << a.user_primary[i];
    if (a.scu) out << '\t' << a.user_secondary[i];
    out << '\n';
  }
  for (std::uint32_t j = 0; j < a.n_items(); ++j) {
    check_token(item_tokens[j]);
    out << "I\t" << item_tokens[j] << '\t' << a.item_cluster[j] << '\n';
  }
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (true) {
    auto tab = line.find('\t', pos);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(pos));
      return fields;
    }
    fields.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
}

std::uint32_t parse_id(const std::string& s, std::uint32_t limit,
                       std::size_t lineno) {
  std::uint32_t value = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || p != s.data() + s.size())
    throw ParseError("malformed cluster id '" + s + "'", lineno);
  if (value >= limit)
    throw ParseError("cluster id " + s + " out of range [0, " +
                         std::to_string(limit) + ")",
                     lineno);
  return value;
}

// Header fields are positional: K_u, K_v, gamma, scu, scheme.
std::string header_field(const std::vector<std::string>& parts,
                         std::size_t idx, const std::string& key) {
  if (idx >= parts.size() || parts[idx].rfind(key + "=", 0) != 0)
    throw ParseError("header missing " + key + "=", 1);
  return parts[idx].substr(key.size() + 1);
}

std::vector<std::string> split_spaces(const std::string& line) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos < line.size()) {
    auto sp = line.find(' ', pos);
    if (sp == std::string::npos) sp = line.size();
    if (sp > pos) parts.push_back(line.substr(pos, sp - pos));
    pos = sp + 1;
  }
  return parts;
}

}  // namespace

AssignmentFile read_assignment(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty input", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();

  auto parts = split_spaces(line);
  if (parts.empty() || parts[0] != "#BACOSKETCH")
    throw ParseError("missing #BACOSKETCH header", 1);
  if (parts.size() < 2 || parts[1] != "v1")
    throw ParseError("unsupported format version", 1);

  AssignmentFile f;
  SketchAssignment& a = f.assignment;
  {
    const std::string ku = header_field(parts, 2, "K_u");
    const std::string kv = header_field(parts, 3, "K_v");
    const std::string gm = header_field(parts, 4, "gamma");
    const std::string sc = header_field(parts, 5, "scu");
    const std::string sn = header_field(parts, 6, "scheme");
    try {
      a.k_user = static_cast<std::uint32_t>(std::stoul(ku));
      a.k_item = static_cast<std::uint32_t>(std::stoul(kv));
      std::size_t used = 0;
      a.gamma = std::stod(gm, &used);
      if (used != gm.size()) throw std::invalid_argument(gm);
    } catch (const std::exception&) {
      throw ParseError("malformed header numbers", 1);
    }
    if (sc == "0")
      a.scu = false;
    else if (sc == "1")
      a.scu = true;
    else
      throw ParseError("scu must be 0 or 1", 1);
    try {
      a.scheme = scheme_from_name(sn);
    } catch (const std::invalid_argument&) {
      throw ParseError("unknown scheme '" + sn + "'", 1);
    }
  }

  std::size_t lineno = 1;
  bool items_started = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto fields = split_tabs(line);
    if (fields[0] == "U") {
      if (items_started)
        throw ParseError("user line after item lines", lineno);
      const std::size_t want = a.scu ? 4u : 3u;
      if (fields.size() != want)
        throw ParseError("expected " + std::to_string(want) +
                             " tab-separated fields on a U line",
                         lineno);
      if (fields[1].empty()) throw ParseError("empty token", lineno);
      f.user_tokens.push_back(fields[1]);
      a.user_primary.push_back(parse_id(fields[2], a.k_user, lineno));
      if (a.scu)
        a.user_secondary.push_back(parse_id(fields[3], a.k_user, lineno));
    } else if (fields[0] == "I") {
      items_started = true;
      if (fields.size() != 3)
        throw ParseError("expected 3 tab-separated fields on an I line",
                         lineno);
      if (fields[1].empty()) throw ParseError("empty token", lineno);
      f.item_tokens.push_back(fields[1]);
      a.item_cluster.push_back(parse_id(fields[2], a.k_item, lineno));
    } else {
      throw ParseError("expected a U or I line", lineno);
    }
  }

  // Gap rule: every id in [0, K) must occur on its side (user side
  // counts the primary/secondary union).
  std::vector<bool> seen_u(a.k_user, false), seen_i(a.k_item, false);
  for (auto id : a.user_primary) seen_u[id] = true;
  for (auto id : a.user_secondary) seen_u[id] = true;
  for (auto id : a.item_cluster) seen_i[id] = true;
  for (std::uint32_t k = 0; k < a.k_user; ++k)
    if (!seen_u[k])
      throw ParseError("user cluster id " + std::to_string(k) +
                           " never occurs (gap rule)",
                       lineno + 1);
  for (std::uint32_t k = 0; k < a.k_item; ++k)
    if (!seen_i[k])
      throw ParseError("item cluster id " + std::to_string(k) +
                           " never occurs (gap rule)",
                       lineno + 1);
  return f;
}

}  // namespace baco
