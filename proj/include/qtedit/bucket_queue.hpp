#ifndef QTEDIT_BUCKET_QUEUE_HPP
#define QTEDIT_BUCKET_QUEUE_HPP

#include <cassert>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace qtedit {

/// Min-priority queue over element ids [0, size) with small integer keys.
/// Each bucket is an intrusive FIFO list, so equal keys leave in insertion
/// order. Keys only ever decrease by one, which moves an element to the
/// adjacent bucket in O(1).
class BucketQueue {
 public:
  explicit BucketQueue(const std::vector<std::uint32_t>& keys) {
    const std::size_t n = keys.size();
    key_ = keys;
    next_.assign(n, none);
    prev_.assign(n, none);
    in_queue_.assign(n, true);
    std::uint32_t max_key = 0;
    for (auto k : keys) max_key = std::max(max_key, k);
    head_.assign(static_cast<std::size_t>(max_key) + 1, none);
    tail_.assign(static_cast<std::size_t>(max_key) + 1, none);
    for (std::uint32_t e = 0; e < n; ++e) push_back(e);
    size_ = n;
    min_ = 0;
  }

  bool empty() const { return size_ == 0; }
  std::size_t size() const { return size_; }
  bool contains(std::uint32_t e) const { return in_queue_[e]; }
  std::uint32_t key(std::uint32_t e) const { return key_[e]; }

  std::optional<std::uint32_t> pop_min() {
    if (size_ == 0) return std::nullopt;
    while (head_[min_] == none) ++min_;
    const std::uint32_t e = head_[min_];
    erase(e);
    return e;
  }

  void erase(std::uint32_t e) {
    assert(in_queue_[e]);
    unlink(e);
    in_queue_[e] = false;
    --size_;
  }

  void decrement(std::uint32_t e) {
    assert(in_queue_[e] && key_[e] > 0);
    unlink(e);
    --key_[e];
    push_back(e);
    if (key_[e] < min_) min_ = key_[e];
  }

 private:
  static constexpr std::uint32_t none = std::numeric_limits<std::uint32_t>::max();

  void push_back(std::uint32_t e) {
    const auto k = key_[e];
    prev_[e] = tail_[k];
    next_[e] = none;
    if (tail_[k] == none)
      head_[k] = e;
    else
      next_[tail_[k]] = e;
    tail_[k] = e;
  }

  void unlink(std::uint32_t e) {
    const auto k = key_[e];
    if (prev_[e] == none)
      head_[k] = next_[e];
    else
      next_[prev_[e]] = next_[e];
    if (next_[e] == none)
      tail_[k] = prev_[e];
    else
      prev_[next_[e]] = prev_[e];
  }

  std::vector<std::uint32_t> key_, next_, prev_, head_, tail_;
  std::vector<bool> in_queue_;
  std::size_t size_ = 0;
  std::uint32_t min_ = 0;
};

}  // namespace qtedit

#endif  // QTEDIT_BUCKET_QUEUE_HPP
