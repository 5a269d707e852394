#ifndef QTEDIT_PARALLEL_HPP
#define QTEDIT_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <set>
#include <thread>
#include <vector>

#include "qtedit/search.hpp"

namespace qtedit {

/// Shared queue of work packages for one fixed-k run. Workers idle on the
/// queue; the run ends when the queue is empty and nobody is working, or when
/// the first solution arrives in first-solution mode.
class WorkScheduler : public SearchContext {
 public:
  WorkScheduler(unsigned threads, bool all_solutions, const Deadline& deadline)
      : threads_(threads), all_(all_solutions), deadline_(deadline) {}

  void emit(Solution solution) override {
    std::lock_guard lock(mutex_);
    if (!seen_.insert(solution).second) ++duplicates_;
    solutions_.push_back(std::move(solution));
    if (!all_) request_stop();
  }

  bool stopped() override {
    if (stop_.load(std::memory_order_relaxed)) return true;
    if (deadline_.expired()) {
      timed_out_.store(true);
      std::lock_guard lock(mutex_);
      request_stop();
      return true;
    }
    return false;
  }

  bool wants_packages() const override { return queued_.load(std::memory_order_relaxed) < threads_; }
  bool has_enough(std::size_t pending) const override {
    return queued_.load(std::memory_order_relaxed) + pending >= 2 * static_cast<std::size_t>(threads_);
  }

  void enqueue(std::vector<WorkPackage>&& packages) override {
    {
      std::lock_guard lock(mutex_);
      for (auto& p : packages) queue_.push_back(std::move(p));
      queued_.store(queue_.size());
    }
    cv_.notify_all();
  }

  /// Runs packages until the queue drains or the search stops.
  void work(Searcher& searcher) {
    std::unique_lock lock(mutex_);
    for (;;) {
      cv_.wait(lock, [&] { return stop_.load() || !queue_.empty() || active_ == 0; });
      if (stop_.load() || queue_.empty()) break;
      WorkPackage package = std::move(queue_.front());
      queue_.pop_front();
      queued_.store(queue_.size());
      ++active_;
      lock.unlock();
      searcher.run(std::move(package));
      lock.lock();
      --active_;
      if (active_ == 0 && queue_.empty()) cv_.notify_all();
    }
    cv_.notify_all();
  }

  std::vector<Solution> take_solutions() { return std::move(solutions_); }
  std::uint64_t duplicates() const { return duplicates_; }
  bool timed_out() const { return timed_out_.load(); }

 private:
  void request_stop() {
    stop_.store(true);
    cv_.notify_all();
  }

  unsigned threads_;
  bool all_;
  const Deadline& deadline_;
  std::mutex mutex_;
  std::condition_variable cv_;
  std::deque<WorkPackage> queue_;
  std::atomic<std::size_t> queued_{0};
  std::size_t active_ = 0;
  std::atomic<bool> stop_{false};
  std::atomic<bool> timed_out_{false};
  std::vector<Solution> solutions_;
  std::set<Solution> seen_;
  std::uint64_t duplicates_ = 0;
};

inline KRun run_k_parallel(const SearchRoot& root, int k, const SearchConfig& cfg, const Deadline& deadline) {
  const unsigned threads = std::max(1u, cfg.threads);
  WorkScheduler scheduler(threads, cfg.all_solutions, deadline);
  scheduler.enqueue({root.package(k)});

  std::vector<Searcher> searchers;
  searchers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    searchers.emplace_back(cfg, root.graph->node_count(), scheduler, worker_seed(cfg.seed, k, t));
    searchers.back().enable_sharing();
  }
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) workers.emplace_back([&, t] { scheduler.work(searchers[t]); });
  workers.clear();

  KRun out;
  for (const auto& s : searchers) {
    out.stats.merge(s.stats());
    out.audit.merge(s.audit());
  }
  out.audit.duplicate_solutions += scheduler.duplicates();
  out.solutions = scheduler.take_solutions();
  out.timed_out = scheduler.timed_out();
  return out;
}

/// Exact solve with work sharing across cfg.threads workers. A single thread
/// runs the sequential search.
inline SearchResult solve_parallel(const Graph& g, const SearchConfig& cfg) {
  if (cfg.threads <= 1) return solve(g, cfg);
  return iterative_deepening(g, cfg, [&](const SearchRoot& root, int k, const Deadline& deadline) {
    return run_k_parallel(root, k, cfg, deadline);
  });
}

}  // namespace qtedit

#endif  // QTEDIT_PARALLEL_HPP
