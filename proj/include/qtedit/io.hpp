#ifndef QTEDIT_IO_HPP
#define QTEDIT_IO_HPP

#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qtedit/analysis.hpp"
#include "qtedit/graph.hpp"
#include "qtedit/search.hpp"

namespace qtedit {

enum class InstanceFormat { edge_list, similarity_matrix };

/// Raised for any malformed instance text.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t b = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

template <class T>
T parse_number(std::string_view token, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError("line " + std::to_string(line) + ": bad number '" + std::string(token) + "'");
  return value;
}

}  // namespace detail

/// Lines "u v" with non-negative ids; '#' starts a comment line. The node
/// count is the largest id plus one.
inline Graph parse_edge_list(std::string_view text) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  NodeId max_id = 0;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    const auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto tok = detail::split_ws(line);
    if (tok.size() != 2) throw ParseError("line " + std::to_string(line_no) + ": expected two node ids");
    const auto u = detail::parse_number<std::uint64_t>(tok[0], line_no);
    const auto v = detail::parse_number<std::uint64_t>(tok[1], line_no);
    if (u >= max_nodes || v >= max_nodes) throw ParseError("line " + std::to_string(line_no) + ": node id too large");
    if (u == v) throw ParseError("line " + std::to_string(line_no) + ": self-loop");
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    max_id = std::max({max_id, static_cast<NodeId>(u), static_cast<NodeId>(v)});
  }
  if (edges.empty()) throw ParseError("no edges");
  Graph g(static_cast<std::size_t>(max_id) + 1);
  for (auto [u, v] : edges) g.add_edge({u, v});
  return g;
}

/// First line n, then n rows of n scores. A pair is an edge when either of
/// its two scores is non-negative; the diagonal is ignored.
inline Graph parse_similarity_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  std::optional<std::size_t> n;
  while (!n && std::getline(in, raw)) {
    ++line_no;
    const auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto tok = detail::split_ws(line);
    if (tok.size() != 1) throw ParseError("line " + std::to_string(line_no) + ": expected the node count");
    n = detail::parse_number<std::size_t>(tok[0], line_no);
  }
  if (!n || *n == 0) throw ParseError("missing node count");
  if (*n > max_nodes) throw ParseError("node count too large");
  std::vector<std::vector<bool>> nonneg;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto tok = detail::split_ws(line);
    if (tok.size() != *n)
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(*n) + " scores");
    if (nonneg.size() == *n) throw ParseError("line " + std::to_string(line_no) + ": too many rows");
    auto& row = nonneg.emplace_back(*n);
    for (std::size_t j = 0; j < *n; ++j) row[j] = detail::parse_number<double>(tok[j], line_no) >= 0;
  }
  if (nonneg.size() != *n) throw ParseError("expected " + std::to_string(*n) + " rows");
  Graph g(*n);
  for (NodeId i = 0; i < *n; ++i)
    for (NodeId j = i + 1; j < *n; ++j)
      if (nonneg[i][j] || nonneg[j][i]) g.add_edge({i, j});
  return g;
}

inline Graph parse_instance(std::string_view text, InstanceFormat format) {
  return format == InstanceFormat::edge_list ? parse_edge_list(text) : parse_similarity_matrix(text);
}

/// Edge list with a header comment carrying the node count, so isolated
/// trailing nodes are visible to readers (the parser itself ignores it).
inline std::string write_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "# nodes " << g.node_count() << " edges " << g.edge_count() << '\n';
  g.for_each_edge([&](VertexPair p) { out << p.u << ' ' << p.v << '\n'; });
  return out.str();
}

/// Scores are 1 for edges and -1 otherwise.
inline std::string write_similarity_matrix(const Graph& g) {
  std::ostringstream out;
  const std::size_t n = g.node_count();
  out << n << '\n';
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) {
      if (j) out << ' ';
      out << (i != j && g.has_edge({i, j}) ? "1" : "-1");
    }
    out << '\n';
  }
  return out.str();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// Run record

inline constexpr int run_record_schema_version = 1;

inline std::string to_string(BoundKind k) {
  switch (k) {
    case BoundKind::basic: return "basic";
    case BoundKind::update: return "update";
    case BoundKind::local_search: return "local-search";
    case BoundKind::min_degree: return "min-degree";
  }
  return "?";
}

inline std::string to_string(BranchKind k) {
  switch (k) {
    case BranchKind::first: return "first";
    case BranchKind::most: return "most";
    case BranchKind::most_pruned: return "most-pruned";
  }
  return "?";
}

inline std::string to_string(InstanceFormat f) {
  return f == InstanceFormat::edge_list ? "edge-list" : "similarity-matrix";
}

inline std::optional<BoundKind> bound_from_string(std::string_view s) {
  for (auto k : {BoundKind::basic, BoundKind::update, BoundKind::local_search, BoundKind::min_degree})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

inline std::optional<BranchKind> branching_from_string(std::string_view s) {
  for (auto k : {BranchKind::first, BranchKind::most, BranchKind::most_pruned})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

struct EditRecord {
  NodeId u = 0, v = 0;
  EditKind kind = EditKind::insertion;
  bool operator==(const EditRecord&) const = default;
};

struct AnalysisRecord {
  std::size_t solution_count = 0;
  std::size_t distinct_clusterings = 0;
  std::size_t min_clusters = 0, max_clusters = 0;
  std::size_t common_insertions = 0, common_deletions = 0;
  std::size_t union_insertions = 0, union_deletions = 0;
  std::size_t common_edit_clusters = 0;
  std::size_t intersection_clusters = 0;
  bool operator==(const AnalysisRecord&) const = default;
};

struct KRecord {
  int k = 0;
  std::uint64_t calls = 0;
  std::uint64_t extra_bound_updates = 0;
  std::uint64_t pruned = 0;
  double wall_seconds = 0;
  bool found = false;
  bool completed = true;
  bool operator==(const KRecord&) const = default;
};

struct RunConfigRecord {
  InstanceFormat format = InstanceFormat::edge_list;
  BoundKind bound = BoundKind::local_search;
  BranchKind branching = BranchKind::most_pruned;
  bool all_solutions = false;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  std::uint64_t permutation_seed = 0;
  std::optional<int> max_k;
  double time_limit_seconds = 1000;
  bool operator==(const RunConfigRecord&) const = default;
};

/// One document per run. Every field is written on every exit path that got
/// past parsing; absent optional values are null.
struct RunRecord {
  int schema_version = run_record_schema_version;
  std::string instance;
  std::size_t nodes = 0, edges = 0;
  RunConfigRecord config;
  std::string status;  // "solved" or "budget-exhausted"
  std::optional<int> k_opt;
  int lower_bound = 0;
  int initial_bound = 0;
  std::vector<KRecord> per_k;
  std::size_t solution_count = 0;
  std::optional<std::vector<std::vector<EditRecord>>> solutions;
  std::optional<AnalysisRecord> analysis;
  bool operator==(const RunRecord&) const = default;
};

inline AnalysisRecord to_record(const SolutionSummary& s) {
  return {s.solution_count,           s.distinct_clusterings,    s.min_clusters,          s.max_clusters,
          s.common_insertions.size(), s.common_deletions.size(), s.union_insertions.size(), s.union_deletions.size(),
          s.common_edit_clusters,     s.intersection_clusters};
}

inline KRecord to_record(const KStats& s) {
  return {s.k, s.calls, s.extra_bound_updates, s.pruned, s.wall_seconds, s.found, s.completed};
}

NLOHMANN_JSON_SERIALIZE_ENUM(EditKind, {{EditKind::insertion, "insert"}, {EditKind::deletion, "delete"}})
NLOHMANN_JSON_SERIALIZE_ENUM(InstanceFormat,
                             {{InstanceFormat::edge_list, "edge-list"},
                              {InstanceFormat::similarity_matrix, "similarity-matrix"}})
NLOHMANN_JSON_SERIALIZE_ENUM(BoundKind, {{BoundKind::basic, "basic"},
                                         {BoundKind::update, "update"},
                                         {BoundKind::local_search, "local-search"},
                                         {BoundKind::min_degree, "min-degree"}})
NLOHMANN_JSON_SERIALIZE_ENUM(BranchKind, {{BranchKind::first, "first"},
                                          {BranchKind::most, "most"},
                                          {BranchKind::most_pruned, "most-pruned"}})

inline void to_json(nlohmann::json& j, const EditRecord& e) { j = {{"u", e.u}, {"v", e.v}, {"kind", e.kind}}; }
inline void from_json(const nlohmann::json& j, EditRecord& e) {
  j.at("u").get_to(e.u);
  j.at("v").get_to(e.v);
  j.at("kind").get_to(e.kind);
}

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(AnalysisRecord, solution_count, distinct_clusterings, min_clusters, max_clusters,
                                   common_insertions, common_deletions, union_insertions, union_deletions,
                                   common_edit_clusters, intersection_clusters)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(KRecord, k, calls, extra_bound_updates, pruned, wall_seconds, found, completed)

namespace detail {

template <class T>
nlohmann::json optional_to_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <class T>
void optional_from_json(const nlohmann::json& j, const char* key, std::optional<T>& v) {
  const auto& x = j.at(key);
  if (x.is_null())
    v.reset();
  else
    v = x.get<T>();
}

}  // namespace detail

inline void to_json(nlohmann::json& j, const RunConfigRecord& c) {
  j = {{"format", c.format},
       {"bound", c.bound},
       {"branching", c.branching},
       {"all_solutions", c.all_solutions},
       {"threads", c.threads},
       {"seed", c.seed},
       {"permutation_seed", c.permutation_seed},
       {"max_k", detail::optional_to_json(c.max_k)},
       {"time_limit_seconds", c.time_limit_seconds}};
}
inline void from_json(const nlohmann::json& j, RunConfigRecord& c) {
  j.at("format").get_to(c.format);
  j.at("bound").get_to(c.bound);
  j.at("branching").get_to(c.branching);
  j.at("all_solutions").get_to(c.all_solutions);
  j.at("threads").get_to(c.threads);
  j.at("seed").get_to(c.seed);
  j.at("permutation_seed").get_to(c.permutation_seed);
  detail::optional_from_json(j, "max_k", c.max_k);
  j.at("time_limit_seconds").get_to(c.time_limit_seconds);
}

inline void to_json(nlohmann::json& j, const RunRecord& r) {
  j = {{"schema_version", r.schema_version},
       {"instance", r.instance},
       {"nodes", r.nodes},
       {"edges", r.edges},
       {"config", r.config},
       {"status", r.status},
       {"k_opt", detail::optional_to_json(r.k_opt)},
       {"lower_bound", r.lower_bound},
       {"initial_bound", r.initial_bound},
       {"per_k", r.per_k},
       {"solution_count", r.solution_count},
       {"solutions", detail::optional_to_json(r.solutions)},
       {"analysis", detail::optional_to_json(r.analysis)}};
}
inline void from_json(const nlohmann::json& j, RunRecord& r) {
  j.at("schema_version").get_to(r.schema_version);
  j.at("instance").get_to(r.instance);
  j.at("nodes").get_to(r.nodes);
  j.at("edges").get_to(r.edges);
  j.at("config").get_to(r.config);
  j.at("status").get_to(r.status);
  detail::optional_from_json(j, "k_opt", r.k_opt);
  j.at("lower_bound").get_to(r.lower_bound);
  j.at("initial_bound").get_to(r.initial_bound);
  j.at("per_k").get_to(r.per_k);
  j.at("solution_count").get_to(r.solution_count);
  detail::optional_from_json(j, "solutions", r.solutions);
  detail::optional_from_json(j, "analysis", r.analysis);
}

}  // namespace qtedit

#endif  // QTEDIT_IO_HPP
