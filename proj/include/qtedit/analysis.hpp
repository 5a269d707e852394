#ifndef QTEDIT_ANALYSIS_HPP
#define QTEDIT_ANALYSIS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "qtedit/graph.hpp"

namespace qtedit {

/// Node partition with block ids numbered by first appearance, so two
/// partitions are equal exactly when they group the nodes the same way.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<std::uint32_t> block_of) : block_(std::move(block_of)) { canonicalize(); }

  std::size_t node_count() const { return block_.size(); }
  std::size_t block_count() const { return count_; }
  std::uint32_t block(NodeId u) const { return block_[u]; }
  const std::vector<std::uint32_t>& blocks() const { return block_; }

  std::vector<std::vector<NodeId>> members() const {
    std::vector<std::vector<NodeId>> out(count_);
    for (NodeId u = 0; u < block_.size(); ++u) out[block_[u]].push_back(u);
    return out;
  }

  bool operator==(const Partition&) const = default;
  auto operator<=>(const Partition&) const = default;

 private:
  void canonicalize() {
    std::map<std::uint32_t, std::uint32_t> relabel;
    for (auto& b : block_) {
      auto [it, inserted] = relabel.try_emplace(b, static_cast<std::uint32_t>(relabel.size()));
      b = it->second;
    }
    count_ = relabel.size();
  }

  std::vector<std::uint32_t> block_;
  std::size_t count_ = 0;
};

inline Partition components(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> block(n, UINT32_MAX);
  std::vector<NodeId> stack;
  std::uint32_t next = 0;
  for (NodeId s = 0; s < n; ++s) {
    if (block[s] != UINT32_MAX) continue;
    block[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      detail::for_each_bit(g.row(u).size(), [&](std::size_t w) { return g.row(u)[w]; }, [&](NodeId v) {
        if (block[v] == UINT32_MAX) {
          block[v] = next;
          stack.push_back(v);
        }
      });
    }
    ++next;
  }
  return Partition(std::move(block));
}

/// Coarsest common refinement: two nodes share a block iff they do in both.
inline Partition meet(const Partition& a, const Partition& b) {
  if (a.node_count() != b.node_count()) throw std::invalid_argument("meet: node counts differ");
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> ids;
  std::vector<std::uint32_t> block(a.node_count());
  for (NodeId u = 0; u < a.node_count(); ++u) {
    auto [it, inserted] = ids.try_emplace({a.block(u), b.block(u)}, static_cast<std::uint32_t>(ids.size()));
    block[u] = it->second;
  }
  return Partition(std::move(block));
}

inline Partition meet(const std::vector<Partition>& parts) {
  if (parts.empty()) throw std::invalid_argument("meet: no partitions");
  Partition out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = meet(out, parts[i]);
  return out;
}

/// Applies every pair in edits to a copy of g.
inline Graph apply_edits(const Graph& g, const std::vector<VertexPair>& edits) {
  Graph out = g;
  for (VertexPair p : edits) out.toggle_edge(p);
  return out;
}

struct SolutionSummary {
  std::size_t solution_count = 0;
  std::size_t distinct_clusterings = 0;
  std::size_t min_clusters = 0;
  std::size_t max_clusters = 0;
  std::vector<VertexPair> common_insertions, common_deletions;
  std::vector<VertexPair> union_insertions, union_deletions;
  std::size_t common_edit_clusters = 0;
  std::size_t intersection_clusters = 0;
  Partition intersection;
};

/// Consumes solutions one at a time; only the running intersection, union,
/// meet and the set of distinct clusterings are kept.
class SolutionAnalyzer {
 public:
  explicit SolutionAnalyzer(const Graph& g) : g_(g) {}

  void add(const std::vector<VertexPair>& edits) {
    std::set<VertexPair> s(edits.begin(), edits.end());
    if (count_ == 0) {
      common_ = s;
    } else {
      std::set<VertexPair> keep;
      std::set_intersection(common_.begin(), common_.end(), s.begin(), s.end(), std::inserter(keep, keep.end()));
      common_ = std::move(keep);
    }
    union_.insert(s.begin(), s.end());

    Partition p = components(apply_edits(g_, edits));
    min_ = count_ == 0 ? p.block_count() : std::min(min_, p.block_count());
    max_ = std::max(max_, p.block_count());
    meet_ = count_ == 0 ? p : meet(meet_, p);
    clusterings_.insert(std::move(p));
    ++count_;
  }

  SolutionSummary summary() const {
    if (count_ == 0) throw std::invalid_argument("summary of an empty solution list");
    SolutionSummary s;
    s.solution_count = count_;
    s.distinct_clusterings = clusterings_.size();
    s.min_clusters = min_;
    s.max_clusters = max_;
    split(common_, s.common_insertions, s.common_deletions);
    split(union_, s.union_insertions, s.union_deletions);
    s.common_edit_clusters = components(apply_edits(g_, {common_.begin(), common_.end()})).block_count();
    s.intersection = meet_;
    s.intersection_clusters = meet_.block_count();
    return s;
  }

 private:
  void split(const std::set<VertexPair>& pairs, std::vector<VertexPair>& ins, std::vector<VertexPair>& del) const {
    for (VertexPair p : pairs) (g_.has_edge(p) ? del : ins).push_back(p);
  }

  const Graph& g_;
  std::size_t count_ = 0;
  std::set<VertexPair> common_, union_;
  std::size_t min_ = 0, max_ = 0;
  Partition meet_;
  std::set<Partition> clusterings_;
};

inline SolutionSummary summarize(const Graph& g, const std::vector<std::vector<VertexPair>>& solutions) {
  SolutionAnalyzer a(g);
  for (const auto& s : solutions) a.add(s);
  return a.summary();
}

}  // namespace qtedit

#endif  // QTEDIT_ANALYSIS_HPP
