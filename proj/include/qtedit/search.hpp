#ifndef QTEDIT_SEARCH_HPP
#define QTEDIT_SEARCH_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "qtedit/bounds.hpp"
#include "qtedit/branching.hpp"
#include "qtedit/counters.hpp"
#include "qtedit/graph.hpp"
#include "qtedit/subgraph.hpp"

namespace qtedit {

struct SearchConfig {
  BoundKind bound = BoundKind::local_search;
  BranchKind branching = BranchKind::most_pruned;
  bool all_solutions = false;
  std::optional<int> max_k;
  std::optional<double> time_limit_seconds;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  /// Leave out the pair whose edit only converts one forbidden subgraph into
  /// the other. Turning it off is only useful for cross-checking.
  bool skip_conversion = true;
  /// Recompute counters, validate packings and check blocking restoration at
  /// every call; violations are counted in SearchResult::audit.
  bool audit = false;
  LocalSearchParams local_search;
};

/// An edit set, as sorted pairs. Edit kinds follow from the input graph.
using Solution = std::vector<VertexPair>;

struct KStats {
  int k = 0;
  std::uint64_t calls = 0;
  /// Bound recomputations between siblings (most-pruned only).
  std::uint64_t extra_bound_updates = 0;
  std::uint64_t pruned = 0;
  double wall_seconds = 0;
  bool found = false;
  /// False when the time limit cut this k short.
  bool completed = true;

  void merge(const KStats& o) {
    calls += o.calls;
    extra_bound_updates += o.extra_bound_updates;
    pruned += o.pruned;
  }
};

struct AuditReport {
  std::uint64_t counter_mismatches = 0;
  std::uint64_t packing_violations = 0;
  std::uint64_t blocking_violations = 0;
  std::uint64_t duplicate_solutions = 0;

  std::uint64_t total() const {
    return counter_mismatches + packing_violations + blocking_violations + duplicate_solutions;
  }
  void merge(const AuditReport& o) {
    counter_mismatches += o.counter_mismatches;
    packing_violations += o.packing_violations;
    blocking_violations += o.blocking_violations;
    duplicate_solutions += o.duplicate_solutions;
  }
};

struct SearchResult {
  std::optional<int> k_opt;
  /// Largest k proven infeasible plus one (equals k_opt when solved).
  int lower_bound = 0;
  /// Size of the packing computed on the input graph.
  int initial_bound = 0;
  std::vector<Solution> solutions;
  std::vector<KStats> per_k;
  bool timed_out = false;
  bool budget_exhausted = false;
  AuditReport audit;

  std::uint64_t total_calls() const {
    std::uint64_t c = 0;
    for (const auto& s : per_k) c += s.calls + s.extra_bound_updates;
    return c;
  }
};

/// Mutable state of one search node. Blocked pairs form a stack mirrored by
/// the counters' save stack.
struct NodeState {
  int k = 0;
  Graph graph;
  PairMatrix blocked;
  PairCounters counters;
  std::vector<VertexPair> edits;

  void block(VertexPair p) {
    blocked.set(p);
    counters.block(p);
  }
  void unblock(VertexPair p) {
    counters.unblock(p);
    blocked.reset(p);
  }
  void edit(VertexPair p) {
    counters.toggle_and_update(graph, p, blocked);
    edits.push_back(p);
    --k;
  }
  void unedit(VertexPair p) {
    counters.toggle_and_update(graph, p, blocked);
    edits.pop_back();
    ++k;
  }
};

/// Self-contained root of a subtree. With `pair` set, the receiving worker
/// first blocks and edits that pair (the package stands for one branch of the
/// node described by `state`); otherwise `state` itself is the root.
struct WorkPackage {
  NodeState state;
  Packing packing;
  BranchState branch;
  std::optional<VertexPair> pair;
};

/// One level of a worker's recursion path.
struct PathElement {
  std::size_t depth = 0;
  std::vector<VertexPair> pairs;
  /// Next branch to explore; pairs before it are consumed.
  std::size_t next = 0;
  Packing packing;
  BranchState branch;
};

/// What a worker shares with the rest of the search.
class SearchContext {
 public:
  virtual ~SearchContext() = default;

  /// Records a solution; the searcher stops iterating once stopped() is true.
  virtual void emit(Solution solution) = 0;
  virtual bool stopped() = 0;

  /// Work sharing hooks; the sequential context never asks for packages.
  virtual bool wants_packages() const { return false; }
  virtual bool has_enough(std::size_t /*pending*/) const { return true; }
  virtual void enqueue(std::vector<WorkPackage>&& /*packages*/) {}
};

class Deadline {
 public:
  Deadline() = default;
  explicit Deadline(std::optional<double> seconds) {
    if (seconds)
      at_ = std::chrono::steady_clock::now() +
            std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(*seconds));
  }
  bool expired() const { return at_ && std::chrono::steady_clock::now() >= *at_; }

 private:
  std::optional<std::chrono::steady_clock::time_point> at_;
};

/// Branch-and-bound worker. Every edit of a branch stays blocked for the later
/// siblings, so each edit set is reached at most once.
class Searcher {
 public:
  Searcher(const SearchConfig& cfg, std::size_t n, SearchContext& ctx, std::uint64_t rng_seed)
      : cfg_(cfg), ctx_(ctx), bound_(cfg.bound, n, cfg.local_search), rng_(rng_seed) {}

  bool run(WorkPackage package) {
    bottom_ = std::move(package.state);
    Packing packing = std::move(package.packing);
    BranchState branch = std::move(package.branch);
    if (package.pair) {
      const VertexPair p = *package.pair;
      bottom_.block(p);
      bottom_.edit(p);
      bound_.after_change(packing, p, bottom_.graph, bottom_.blocked);
      observe_pair(branch, bottom_.graph, p, bottom_.blocked, cfg_.skip_conversion);
    }
    path_.clear();
    if (ctx_.wants_packages() || sharing_) {
      sharing_ = true;
      top_ = bottom_;
    }
    return recurse(0, packing, branch);
  }

  /// Enables path bookkeeping for work sharing even when the first package
  /// arrives while the queue is full.
  void enable_sharing() { sharing_ = true; }

  const KStats& stats() const { return stats_; }
  const AuditReport& audit() const { return audit_; }

 private:
  bool alive(std::size_t depth) const { return !path_.empty() && path_.back().depth == depth; }

  BranchDecision decide(const BranchState& branch) const {
    if (cfg_.branching == BranchKind::first)
      return select_first(bottom_.graph, bottom_.blocked, &branch, cfg_.skip_conversion);
    return select_most(bottom_.graph, bottom_.counters, branch, bottom_.blocked, cfg_.skip_conversion);
  }

  bool recurse(std::size_t depth, Packing& packing, BranchState& branch) {
    if (sharing_) maybe_spawn();
    if (ctx_.stopped()) return false;
    ++stats_.calls;
    const int k = bottom_.k;
    auto& g = bottom_.graph;
    auto& blocked = bottom_.blocked;
    auto& counters = bottom_.counters;

    if (cfg_.audit && !counters.same_counts(PairCounters::from_graph(g, &blocked))) ++audit_.counter_mismatches;
    bound_.refresh(packing, g, blocked, counters, static_cast<std::size_t>(k) + 1, rng_);
    if (cfg_.audit && !packing_valid(packing, g, blocked)) ++audit_.packing_violations;
    if (packing.size() > static_cast<std::size_t>(k)) {
      ++stats_.pruned;
      return false;
    }

    BranchDecision decision = decide(branch);
    if (decision.kind == BranchDecision::Kind::solved) {
      Solution s = bottom_.edits;
      std::sort(s.begin(), s.end());
      ctx_.emit(std::move(s));
      return true;
    }
    if (decision.kind == BranchDecision::Kind::prune || k == 0) {
      ++stats_.pruned;
      return false;
    }

    std::optional<PairMatrix> blocked_on_entry;
    if (cfg_.audit) blocked_on_entry = blocked;

    const std::vector<VertexPair> pairs = decision.pairs;
    path_.push_back(PathElement{depth, std::move(decision.pairs), 0, std::move(packing), std::move(branch)});
    bool found = false;
    std::size_t blocked_here = 0;
    while (alive(depth)) {
      PathElement& level = path_.back();
      if (level.next >= level.pairs.size()) break;
      const VertexPair p = level.pairs[level.next++];
      const std::size_t remaining = level.pairs.size() - level.next;
      const auto uses_before = counters.count(p);

      bottom_.block(p);
      ++blocked_here;
      Packing child_packing = level.packing;
      BranchState child_branch = level.branch;
      bottom_.edit(p);
      bound_.after_change(child_packing, p, g, blocked);
      observe_pair(child_branch, g, p, blocked, cfg_.skip_conversion);
      found = recurse(depth + 1, child_packing, child_branch) || found;
      bottom_.unedit(p);

      if (remaining == 0 || ctx_.stopped() || !alive(depth)) break;
      PathElement& after = path_.back();
      observe_pair(after.branch, g, p, blocked, cfg_.skip_conversion);
      if (after.branch.dead) {
        after.next = after.pairs.size();
        ++stats_.pruned;
        break;
      }
      // Early pruning: the pair just explored stays blocked for the remaining
      // siblings, which may already push the bound past k.
      if (cfg_.branching == BranchKind::most_pruned && remaining >= 2 && uses_before > 1) {
        ++stats_.extra_bound_updates;
        bound_.after_change(after.packing, p, g, blocked);
        bound_.refresh(after.packing, g, blocked, counters, static_cast<std::size_t>(k) + 1, rng_);
        if (after.packing.size() > static_cast<std::size_t>(k)) {
          after.next = after.pairs.size();
          ++stats_.pruned;
          break;
        }
      }
    }
    if (alive(depth)) path_.pop_back();
    for (std::size_t i = blocked_here; i-- > 0;) bottom_.unblock(pairs[i]);
    if (blocked_on_entry && !(*blocked_on_entry == blocked)) ++audit_.blocking_violations;
    return found;
  }

  // Splits unexplored branches off the top of the path while the shared queue
  // is short. top_ mirrors the node state of path_.front().
  void maybe_spawn() {
    if (!ctx_.wants_packages()) return;
    std::vector<WorkPackage> out;
    while (!path_.empty() && !ctx_.has_enough(out.size())) {
      PathElement& top = path_.front();
      for (std::size_t j = 0; j < top.next; ++j) top_.block(top.pairs[j]);
      BranchState branch = top.branch;
      observe_pair(branch, top_.graph, top.pairs[top.next - 1], top_.blocked, cfg_.skip_conversion);
      for (std::size_t j = top.next; j < top.pairs.size(); ++j) {
        out.push_back(WorkPackage{top_, top.packing, branch, top.pairs[j]});
        top_.block(top.pairs[j]);
        observe_pair(branch, top_.graph, top.pairs[j], top_.blocked, cfg_.skip_conversion);
      }
      for (std::size_t j = top.pairs.size(); j-- > top.next;) top_.unblock(top.pairs[j]);
      top_.edit(top.pairs[top.next - 1]);
      path_.pop_front();
    }
    if (!out.empty()) ctx_.enqueue(std::move(out));
  }

  const SearchConfig& cfg_;
  SearchContext& ctx_;
  LowerBound bound_;
  Rng rng_;
  NodeState bottom_;
  NodeState top_;
  std::deque<PathElement> path_;
  bool sharing_ = false;
  KStats stats_;
  AuditReport audit_;
};

/// Root data shared by every k of one solve.
struct SearchRoot {
  const Graph* graph = nullptr;
  PairCounters counters;
  Packing packing;

  WorkPackage package(int k) const {
    NodeState s{k, *graph, PairMatrix(graph->node_count()), counters, {}};
    return WorkPackage{std::move(s), packing, BranchState{}, std::nullopt};
  }
};

inline SearchRoot make_root(const Graph& g, const SearchConfig& cfg) {
  SearchRoot root{&g, PairCounters::from_graph(g), {}};
  LowerBound bound(cfg.bound, g.node_count(), cfg.local_search);
  Rng rng(cfg.seed);
  root.packing = bound.initial(g, PairMatrix(g.node_count()), root.counters, rng);
  return root;
}

/// Outcome of one fixed-k run.
struct KRun {
  KStats stats;
  std::vector<Solution> solutions;
  AuditReport audit;
  bool timed_out = false;
};

/// Single-worker context: collects solutions, stops at the first one unless
/// all are wanted, and watches the deadline.
class SequentialContext : public SearchContext {
 public:
  SequentialContext(bool all_solutions, const Deadline& deadline) : all_(all_solutions), deadline_(deadline) {}

  void emit(Solution solution) override {
    solutions.push_back(std::move(solution));
    if (!all_) stop_ = true;
  }
  bool stopped() override {
    if (!stop_ && deadline_.expired()) {
      stop_ = true;
      timed_out = true;
    }
    return stop_;
  }

  std::vector<Solution> solutions;
  bool timed_out = false;

 private:
  bool all_;
  const Deadline& deadline_;
  bool stop_ = false;
};

inline std::uint64_t worker_seed(std::uint64_t seed, int k, unsigned worker) {
  return seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(k + 1)) ^
         (0xbf58476d1ce4e5b9ULL * static_cast<std::uint64_t>(worker + 1));
}

inline KRun run_k_sequential(const SearchRoot& root, int k, const SearchConfig& cfg, const Deadline& deadline) {
  SequentialContext ctx(cfg.all_solutions, deadline);
  Searcher searcher(cfg, root.graph->node_count(), ctx, worker_seed(cfg.seed, k, 0));
  const bool found = searcher.run(root.package(k));
  KRun out{searcher.stats(), std::move(ctx.solutions), searcher.audit(), ctx.timed_out};
  out.stats.found = found;
  return out;
}

/// Runs k = initial bound, initial bound + 1, ... through run_k until a
/// solution appears or the budget (max_k, time limit) runs out.
template <class RunK>
SearchResult iterative_deepening(const Graph& g, const SearchConfig& cfg, RunK&& run_k) {
  const Deadline deadline(cfg.time_limit_seconds);
  const SearchRoot root = make_root(g, cfg);
  SearchResult result;
  result.initial_bound = static_cast<int>(root.packing.size());
  result.lower_bound = result.initial_bound;
  for (int k = result.initial_bound;; ++k) {
    if (cfg.max_k && k > *cfg.max_k) {
      result.budget_exhausted = true;
      break;
    }
    if (deadline.expired()) {
      result.timed_out = result.budget_exhausted = true;
      break;
    }
    const auto start = std::chrono::steady_clock::now();
    KRun run = run_k(root, k, deadline);
    run.stats.k = k;
    run.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    run.stats.completed = !run.timed_out;
    run.stats.found = !run.solutions.empty();
    result.per_k.push_back(run.stats);
    result.audit.merge(run.audit);
    if (!run.solutions.empty()) {
      result.k_opt = k;
      result.lower_bound = k;
      result.solutions = std::move(run.solutions);
      std::sort(result.solutions.begin(), result.solutions.end());
      if (!cfg.all_solutions) result.solutions.resize(1);
      break;
    }
    if (run.timed_out) {
      result.timed_out = result.budget_exhausted = true;
      break;
    }
    result.lower_bound = k + 1;
  }
  return result;
}

/// Single-threaded exact solve.
inline SearchResult solve(const Graph& g, const SearchConfig& cfg) {
  return iterative_deepening(g, cfg, [&](const SearchRoot& root, int k, const Deadline& deadline) {
    return run_k_sequential(root, k, cfg, deadline);
  });
}

/// One fixed-k search from scratch; returns whether any solution with at most
/// k edits exists and hands every one found to the sink.
template <class Sink>
bool search_k(const Graph& g, int k, const SearchConfig& cfg, Sink&& sink) {
  const SearchRoot root = make_root(g, cfg);
  if (root.packing.size() > static_cast<std::size_t>(k)) return false;
  KRun run = run_k_sequential(root, k, cfg, Deadline(cfg.time_limit_seconds));
  for (auto& s : run.solutions) sink(std::move(s));
  return run.stats.found;
}

}  // namespace qtedit

#endif  // QTEDIT_SEARCH_HPP
