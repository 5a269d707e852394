#ifndef QTEDIT_BRANCHING_HPP
#define QTEDIT_BRANCHING_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "qtedit/counters.hpp"
#include "qtedit/graph.hpp"
#include "qtedit/subgraph.hpp"

namespace qtedit {

enum class BranchKind { first, most, most_pruned };

/// Branching call-state: instances left with a single editable pair, and
/// whether some instance has none left (then the branch has no solution).
struct BranchState {
  std::vector<Subgraph> forced;
  bool dead = false;

  bool operator==(const BranchState&) const = default;
};

struct BranchDecision {
  enum class Kind { solved, prune, pairs };

  Kind kind = Kind::prune;
  std::vector<VertexPair> pairs;

  static BranchDecision solved() { return {Kind::solved, {}}; }
  static BranchDecision prune() { return {Kind::prune, {}}; }
};

/// Re-examines the instances through p after p was edited or blocked.
inline void observe_pair(BranchState& bs, const Graph& g, VertexPair p, const PairMatrix& blocked,
                         bool skip_conversion = true) {
  if (bs.dead) return;
  list_containing(g, p, [&](const Subgraph& s) {
    const auto editable = editable_pairs(s, blocked, skip_conversion).size();
    if (editable == 0) {
      bs.dead = true;
      return false;
    }
    if (editable == 1) bs.forced.push_back(s);
    return true;
  });
}

namespace detail {

// Full check used when the counters report nothing left: instances whose
// pairs are all blocked contribute zero to the counters.
inline BranchDecision solved_or_stuck(const Graph& g) {
  return is_quasi_threshold(g) ? BranchDecision::solved() : BranchDecision::prune();
}

}  // namespace detail

/// Baseline: the first instance of the global listing.
inline BranchDecision select_first(const Graph& g, const PairMatrix& blocked, const BranchState* bs = nullptr,
                                   bool skip_conversion = true) {
  if (bs && bs->dead) return BranchDecision::prune();
  std::optional<Subgraph> first;
  list_global(g, [&](const Subgraph& s) {
    first = s;
    return false;
  });
  if (!first) return BranchDecision::solved();
  const auto editable = editable_pairs(*first, blocked, skip_conversion);
  if (editable.empty()) return BranchDecision::prune();
  return {BranchDecision::Kind::pairs, {editable.begin(), editable.end()}};
}

namespace detail {

struct RankedCandidate {
  Subgraph subgraph;
  std::vector<VertexPair> pairs;   // editable pairs, descending counter
  std::vector<std::int32_t> keys;  // their counters, last one dropped
};

inline RankedCandidate rank(const Subgraph& s, const PairCounters& c, const PairMatrix& blocked, bool skip_conversion) {
  const auto editable = editable_pairs(s, blocked, skip_conversion);
  RankedCandidate r{s, {editable.begin(), editable.end()}, {}};
  std::stable_sort(r.pairs.begin(), r.pairs.end(),
                   [&](VertexPair a, VertexPair b) { return c.count(a) > c.count(b); });
  for (std::size_t i = 0; i + 1 < r.pairs.size(); ++i) r.keys.push_back(c.count(r.pairs[i]));
  return r;
}

// Larger key sequence wins; on a shared prefix the shorter one wins; full ties
// go to the smaller node tuple.
inline bool better(const RankedCandidate& a, const RankedCandidate& b) {
  const std::size_t common = std::min(a.keys.size(), b.keys.size());
  for (std::size_t i = 0; i < common; ++i)
    if (a.keys[i] != b.keys[i]) return a.keys[i] > b.keys[i];
  if (a.keys.size() != b.keys.size()) return a.keys.size() < b.keys.size();
  return a.subgraph < b.subgraph;
}

}  // namespace detail

/// Prefers instances whose editable pairs are used by many other instances.
/// Only instances through a pair with the maximum counter are ranked.
inline BranchDecision select_most(const Graph& g, const PairCounters& c, const BranchState& bs,
                                  const PairMatrix& blocked, bool skip_conversion = true) {
  if (bs.dead) return BranchDecision::prune();
  if (c.total() == 0) return detail::solved_or_stuck(g);

  for (const auto& s : bs.forced) {
    if (!is_induced(g, s)) continue;
    const auto editable = editable_pairs(s, blocked, skip_conversion);
    if (editable.size() == 1) return {BranchDecision::Kind::pairs, {editable[0]}};
    if (editable.empty()) return BranchDecision::prune();
  }

  std::optional<detail::RankedCandidate> best;
  c.for_each_pair_with_count(c.max_count(), [&](VertexPair q) {
    list_near(g, q, [&](const Subgraph& s) {
      auto r = detail::rank(s, c, blocked, skip_conversion);
      if (r.pairs.empty()) return;
      if (!best || detail::better(r, *best)) best = std::move(r);
    });
  });
  if (!best) return detail::solved_or_stuck(g);
  return {BranchDecision::Kind::pairs, std::move(best->pairs)};
}

}  // namespace qtedit

#endif  // QTEDIT_BRANCHING_HPP
