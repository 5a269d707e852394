#ifndef QTEDIT_BOUNDS_HPP
#define QTEDIT_BOUNDS_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "qtedit/bucket_queue.hpp"
#include "qtedit/counters.hpp"
#include "qtedit/graph.hpp"
#include "qtedit/subgraph.hpp"

namespace qtedit {

enum class BoundKind { basic, update, local_search, min_degree };

using Rng = std::mt19937_64;

/// Subgraph instances that pairwise share no pair other than omitted or
/// blocked ones. Every member needs its own edit, so the size is a lower bound
/// on the edits still required.
struct Packing {
  std::vector<Subgraph> members;

  std::size_t size() const { return members.size(); }
  bool empty() const { return members.empty(); }
  bool operator==(const Packing&) const = default;
};

struct LocalSearchParams {
  /// Share of one-for-one swaps that take the candidate with the smallest
  /// approximate coverage instead of a uniform pick.
  double greedy_probability = 0.7;
  /// Rounds in a row without a one-for-two swap before giving up.
  int stall_rounds = 5;
};

/// Sum of the subgraph counters over the non-omitted pairs of s: a cheap
/// estimate of how many other instances s conflicts with.
inline std::int64_t approx_coverage(const Subgraph& s, const PairCounters& c) {
  std::int64_t sum = 0;
  for (VertexPair q : s.pairs()) sum += c.count(q);
  return sum;
}

/// Whether members already hold s: same node set and same omitted pair.
inline bool has_member(std::span<const Subgraph> members, const Subgraph& s) {
  auto key = [](const Subgraph& x) {
    auto k = x.nodes;
    std::ranges::sort(k);
    return std::pair(k, x.omitted());
  };
  const auto want = key(s);
  return std::ranges::any_of(members, [&](const Subgraph& m) { return key(m) == want; });
}

/// Per-worker scratch for the packing bounds. The covered matrix is rebuilt
/// from the member list whenever a packing is modified, so call-states only
/// carry member lists.
class PackingWorkspace {
 public:
  explicit PackingWorkspace(std::size_t n) : covered_(n) {}

  const PairMatrix& covered() const { return covered_; }

  bool fits(const Subgraph& s, const PairMatrix& blocked) const {
    for (VertexPair q : s.pairs())
      if (!blocked.test(q) && covered_.test(q)) return false;
    return true;
  }

  static bool fully_blocked(const Subgraph& s, const PairMatrix& blocked) {
    return std::ranges::all_of(s.pairs(), [&](VertexPair q) { return blocked.test(q); });
  }

  void cover(const Subgraph& s, const PairMatrix& blocked) {
    for (VertexPair q : s.pairs())
      if (!blocked.test(q)) covered_.set(q);
  }

  void uncover(const Subgraph& s, const PairMatrix& blocked) {
    for (VertexPair q : s.pairs())
      if (!blocked.test(q)) covered_.reset(q);
  }

  void recompute(const Packing& p, const PairMatrix& blocked) {
    covered_.clear();
    for (const auto& s : p.members) cover(s, blocked);
  }

  /// One greedy pass over the global listing.
  Packing basic(const Graph& g, const PairMatrix& blocked) {
    Packing p;
    covered_.clear();
    list_global(g, &covered_, [&](const Subgraph& s) { try_add(p, s, blocked); });
    return p;
  }

  /// Brings a packing that was valid before `changed` was edited or blocked
  /// back to a valid, inclusion-maximal one.
  void update(Packing& p, VertexPair changed, const Graph& g, const PairMatrix& blocked) {
    touched_.clear();
    std::erase_if(p.members, [&](const Subgraph& s) {
      if (!s.contains(changed) || is_induced(g, s)) return false;
      for (VertexPair q : s.pairs()) touched_.push_back(q);
      return true;
    });
    recompute(p, blocked);
    list_near(
        g, changed, &covered_, [&](const Subgraph& s) { try_add(p, s, blocked); }, true);
    for (VertexPair q : touched_)
      list_near(g, q, &covered_, [&](const Subgraph& s) { try_add(p, s, blocked); });
  }

  /// Local search with one-for-two and one-for-one swaps. Stops once the
  /// packing reaches prune_at, after a round without any change, or after
  /// stall_rounds consecutive rounds without growth.
  void improve(Packing& p, const Graph& g, const PairMatrix& blocked, const PairCounters& counters,
               std::size_t prune_at, Rng& rng, const LocalSearchParams& params = {}) {
    if (p.size() >= prune_at) return;
    recompute(p, blocked);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    int stall = 0;
    for (;;) {
      bool changed = false;
      bool grew = false;
      const std::size_t round_size = p.size();
      for (std::size_t i = 0; i < round_size; ++i) {
        const Subgraph current = p.members[i];
        uncover(current, blocked);
        collect_candidates(current, g, blocked);
        if (candidates_.empty()) {
          cover(current, blocked);
          continue;
        }
        if (try_two_for_one(p, i, blocked)) {
          changed = grew = true;
        } else {
          std::size_t pick = 0;
          if (coin(rng) < params.greedy_probability) {
            std::int64_t best = std::numeric_limits<std::int64_t>::max();
            for (std::size_t c = 0; c < candidates_.size(); ++c) {
              const auto cov = approx_coverage(candidates_[c], counters);
              if (cov < best) {
                best = cov;
                pick = c;
              }
            }
          } else {
            pick = std::uniform_int_distribution<std::size_t>(0, candidates_.size() - 1)(rng);
          }
          p.members[i] = candidates_[pick];
          cover(p.members[i], blocked);
          if (p.members[i] != current) changed = true;
        }
        if (p.size() >= prune_at) return;
      }
      stall = grew ? 0 : stall + 1;
      if (!changed || stall >= params.stall_rounds) return;
    }
  }

  /// Greedy independent set on the conflict structure: repeatedly take the
  /// instance with the smallest key, where the key starts as the sum over its
  /// pairs of the number of instances using that pair.
  Packing min_degree(const Graph& g, const PairMatrix& blocked) {
    const std::size_t n = g.node_count();
    std::vector<Subgraph> subs;
    list_global(g, [&](const Subgraph& s) { subs.push_back(s); });

    // Pair -> instances using it, in CSR form.
    std::vector<std::uint32_t> offsets(pair_count(n) + 1, 0);
    for (const auto& s : subs)
      for (VertexPair q : s.pairs())
        if (!blocked.test(q)) ++offsets[triangle_index(q) + 1];
    for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];
    std::vector<std::uint32_t> users(offsets.back());
    {
      std::vector<std::uint32_t> fill(offsets.begin(), offsets.end() - 1);
      for (std::uint32_t id = 0; id < subs.size(); ++id)
        for (VertexPair q : subs[id].pairs())
          if (!blocked.test(q)) users[fill[triangle_index(q)]++] = id;
    }
    auto users_of = [&](VertexPair q) {
      const auto t = triangle_index(q);
      return std::span<const std::uint32_t>(users.data() + offsets[t], offsets[t + 1] - offsets[t]);
    };

    std::vector<std::uint32_t> keys(subs.size(), 0);
    for (std::uint32_t id = 0; id < subs.size(); ++id)
      for (VertexPair q : subs[id].pairs())
        if (!blocked.test(q)) keys[id] += static_cast<std::uint32_t>(users_of(q).size());

    BucketQueue queue(keys);
    Packing p;
    while (auto top = queue.pop_min()) {
      const Subgraph& s = subs[*top];
      if (fully_blocked(s, blocked) && has_member(p.members, s)) continue;
      p.members.push_back(s);
      for (VertexPair q : s.pairs()) {
        if (blocked.test(q)) continue;
        for (std::uint32_t t : users_of(q)) {
          if (!queue.contains(t)) continue;
          queue.erase(t);
          for (VertexPair r : subs[t].pairs()) {
            if (blocked.test(r)) continue;
            for (std::uint32_t u : users_of(r))
              if (queue.contains(u)) queue.decrement(u);
          }
        }
      }
    }
    return p;
  }

 private:
  void try_add(Packing& p, const Subgraph& s, const PairMatrix& blocked) {
    if (!fits(s, blocked)) return;
    // A fully blocked instance covers nothing, so only its own copy stops it.
    if (fully_blocked(s, blocked) && has_member(p.members, s)) return;
    p.members.push_back(s);
    cover(s, blocked);
  }

  // Replacement candidates for a removed member: instances through its free
  // pairs that fit the rest of the packing. Each candidate is listed only
  // under the first of those pairs it uses.
  void collect_candidates(const Subgraph& removed, const Graph& g, const PairMatrix& blocked) {
    candidates_.clear();
    PairList seen;
    for (VertexPair q : removed.pairs()) {
      if (blocked.test(q)) continue;
      list_near(g, q, &covered_, [&](const Subgraph& s) {
        for (VertexPair earlier : seen)
          if (s.uses(earlier)) return;
        if (fits(s, blocked)) candidates_.push_back(s);
      });
      seen.push_back(q);
    }
  }

  bool try_two_for_one(Packing& p, std::size_t slot, const PairMatrix& blocked) {
    for (std::size_t a = 0; a < candidates_.size(); ++a) {
      cover(candidates_[a], blocked);
      extra_.clear();
      for (std::size_t b = 0; b < candidates_.size(); ++b) {
        if (b == a || !fits(candidates_[b], blocked)) continue;
        cover(candidates_[b], blocked);
        extra_.push_back(candidates_[b]);
      }
      if (!extra_.empty()) {
        p.members[slot] = candidates_[a];
        p.members.insert(p.members.end(), extra_.begin(), extra_.end());
        return true;
      }
      uncover(candidates_[a], blocked);
    }
    return false;
  }

  PairMatrix covered_;
  std::vector<VertexPair> touched_;
  std::vector<Subgraph> candidates_;
  std::vector<Subgraph> extra_;
};

inline Packing basic_pack(const Graph& g, const PairMatrix& blocked) {
  return PackingWorkspace(g.node_count()).basic(g, blocked);
}

inline void update_pack(Packing& p, VertexPair edited, const Graph& g, const PairMatrix& blocked) {
  PackingWorkspace(g.node_count()).update(p, edited, g, blocked);
}

inline void local_search_improve(Packing& p, const Graph& g, const PairMatrix& blocked, const PairCounters& counters,
                                 std::size_t prune_at, Rng& rng, const LocalSearchParams& params = {}) {
  PackingWorkspace(g.node_count()).improve(p, g, blocked, counters, prune_at, rng, params);
}

inline Packing min_degree_pack(const Graph& g, const PairMatrix& blocked) {
  return PackingWorkspace(g.node_count()).min_degree(g, blocked);
}

/// Checks that every member is induced and no two members share a pair that
/// is neither omitted nor blocked.
inline bool packing_valid(const Packing& p, const Graph& g, const PairMatrix& blocked) {
  PairMatrix used(g.node_count());
  for (std::size_t i = 0; i < p.members.size(); ++i) {
    const Subgraph& s = p.members[i];
    if (!is_induced(g, s)) return false;
    if (has_member(std::span(p.members).first(i), s)) return false;
    for (VertexPair q : s.pairs()) {
      if (blocked.test(q)) continue;
      if (used.test(q)) return false;
      used.set(q);
    }
  }
  return true;
}

/// True if no listed instance could be added without a conflict.
inline bool packing_maximal(const Packing& p, const Graph& g, const PairMatrix& blocked) {
  PackingWorkspace ws(g.node_count());
  ws.recompute(p, blocked);
  return list_global(g, [&](const Subgraph& s) {
    return !ws.fits(s, blocked) || has_member(p.members, s);
  });
}

/// The thread-state of one bound kind: how a packing call-state is seeded at
/// the root, carried into a child after an edit, and refreshed at each call.
class LowerBound {
 public:
  LowerBound(BoundKind kind, std::size_t n, LocalSearchParams params = {})
      : kind_(kind), params_(params), ws_(n) {}

  BoundKind kind() const { return kind_; }

  Packing initial(const Graph& g, const PairMatrix& blocked, const PairCounters& counters, Rng& rng) {
    if (kind_ == BoundKind::min_degree) return ws_.min_degree(g, blocked);
    Packing p = ws_.basic(g, blocked);
    if (kind_ == BoundKind::local_search)
      ws_.improve(p, g, blocked, counters, std::numeric_limits<std::size_t>::max(), rng, params_);
    return p;
  }

  /// Called after `changed` was edited or blocked.
  void after_change(Packing& p, VertexPair changed, const Graph& g, const PairMatrix& blocked) {
    if (kind_ != BoundKind::basic) ws_.update(p, changed, g, blocked);
  }

  void refresh(Packing& p, const Graph& g, const PairMatrix& blocked, const PairCounters& counters,
               std::size_t prune_at, Rng& rng) {
    switch (kind_) {
      case BoundKind::basic:
        p = ws_.basic(g, blocked);
        break;
      case BoundKind::update:
        break;
      case BoundKind::local_search:
        ws_.improve(p, g, blocked, counters, prune_at, rng, params_);
        break;
      case BoundKind::min_degree:
        if (p.size() < prune_at) {
          Packing md = ws_.min_degree(g, blocked);
          if (md.size() > p.size()) p = std::move(md);
        }
        break;
    }
  }

 private:
  BoundKind kind_;
  LocalSearchParams params_;
  PackingWorkspace ws_;
};

}  // namespace qtedit

#endif  // QTEDIT_BOUNDS_HPP
