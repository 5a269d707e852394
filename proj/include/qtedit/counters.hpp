#ifndef QTEDIT_COUNTERS_HPP
#define QTEDIT_COUNTERS_HPP

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qtedit/graph.hpp"
#include "qtedit/subgraph.hpp"

namespace qtedit {

/// For every pair, the number of listed subgraph instances that use it as a
/// non-omitted pair. A C4 therefore counts three times on each cycle edge and
/// four times on each diagonal. Blocked pairs read zero; their previous value
/// sits on a stack until they are unblocked.
class PairCounters {
 public:
  PairCounters() = default;
  explicit PairCounters(std::size_t n) : n_(n), counts_(pair_count(n), 0) {}

  /// Counts from a full listing of g; pairs set in blocked stay at zero.
  static PairCounters from_graph(const Graph& g, const PairMatrix* blocked = nullptr) {
    PairCounters c(g.node_count());
    list_global(g, [&](const Subgraph& s) { c.add(s, blocked, 1); });
    return c;
  }

  std::int32_t count(VertexPair p) const { return counts_[triangle_index(p)]; }
  std::int64_t total() const { return total_; }
  std::size_t node_count() const { return n_; }
  std::size_t saved_depth() const { return saved_.size(); }

  void block(VertexPair p) {
    auto& c = counts_[triangle_index(p)];
    saved_.emplace_back(p, c);
    total_ -= c;
    c = 0;
  }

  /// Restores the counter of the most recently blocked pair, which must be p.
  void unblock(VertexPair p) {
    if (saved_.empty()) throw std::logic_error("unblock with empty save stack");
    const auto [q, value] = saved_.back();
    if (q != p) throw std::logic_error("unblock out of stack order");
    saved_.pop_back();
    counts_[triangle_index(p)] = value;
    total_ += value;
  }

  /// Toggles p in g and moves the counts of every instance destroyed or
  /// created through p.
  Edit toggle_and_update(Graph& g, VertexPair p, const PairMatrix& blocked) {
    list_containing(g, p, [&](const Subgraph& s) { add(s, &blocked, -1); });
    const Edit e = g.toggle_edge(p);
    list_containing(g, p, [&](const Subgraph& s) { add(s, &blocked, 1); });
    return e;
  }

  /// Max over all pairs; zero when there is no unblocked subgraph.
  std::int32_t max_count() const {
    std::int32_t best = 0;
    for (auto c : counts_) best = std::max(best, c);
    return best;
  }

  template <class F>
  void for_each_pair_with_count(std::int32_t value, F&& f) const {
    for (NodeId v = 1; v < n_; ++v)
      for (NodeId u = 0; u < v; ++u)
        if (counts_[triangle_index({u, v})] == value) f(VertexPair{u, v});
  }

  /// Compares counts and total; the save stack is bookkeeping and not compared.
  bool same_counts(const PairCounters& other) const { return counts_ == other.counts_ && total_ == other.total_; }

  bool operator==(const PairCounters&) const = default;

 private:
  void add(const Subgraph& s, const PairMatrix* blocked, std::int32_t delta) {
    for (VertexPair q : s.pairs()) {
      if (blocked && blocked->test(q)) continue;
      counts_[triangle_index(q)] += delta;
      total_ += delta;
      assert(counts_[triangle_index(q)] >= 0);
    }
  }

  std::size_t n_ = 0;
  std::vector<std::int32_t> counts_;
  std::int64_t total_ = 0;
  std::vector<std::pair<VertexPair, std::int32_t>> saved_;
};

}  // namespace qtedit

#endif  // QTEDIT_COUNTERS_HPP
