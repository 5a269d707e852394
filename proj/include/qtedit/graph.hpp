#ifndef QTEDIT_GRAPH_HPP
#define QTEDIT_GRAPH_HPP

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace qtedit {

using NodeId = std::uint32_t;
using Word = std::uint64_t;

inline constexpr std::size_t word_bits = 64;

/// Largest node count accepted anywhere (one n x n bit matrix is n^2/8 bytes,
/// and every search worker keeps several of them).
inline constexpr std::size_t max_nodes = 32768;

namespace detail {

// Callbacks may return void (always continue) or bool (false stops the scan).
template <class F, class... Args>
constexpr bool keep_going(F& f, Args&&... args) {
  if constexpr (std::is_void_v<std::invoke_result_t<F&, Args...>>) {
    f(std::forward<Args>(args)...);
    return true;
  } else {
    return static_cast<bool>(f(std::forward<Args>(args)...));
  }
}

// Visits set bits of the words produced by word(i), i in [0, words), in
// ascending index order.
template <class WordFn, class F>
bool for_each_bit(std::size_t words, WordFn&& word, F&& f) {
  for (std::size_t w = 0; w < words; ++w) {
    Word bits = word(w);
    while (bits != 0) {
      const auto b = static_cast<NodeId>(std::countr_zero(bits));
      bits &= bits - 1;
      if (!keep_going(f, static_cast<NodeId>(w * word_bits + b))) return false;
    }
  }
  return true;
}

// Bits strictly above position u within word w.
constexpr Word above_mask(NodeId u, std::size_t w) {
  const std::size_t uw = u / word_bits;
  if (w < uw) return 0;
  if (w > uw) return ~Word{0};
  const auto b = u % word_bits;
  return b == word_bits - 1 ? Word{0} : (~Word{0} << (b + 1));
}

}  // namespace detail

/// Unordered node pair, stored with u < v.
struct VertexPair {
  NodeId u = 0;
  NodeId v = 1;

  constexpr VertexPair() = default;
  constexpr VertexPair(NodeId a, NodeId b) : u(std::min(a, b)), v(std::max(a, b)) {
    assert(a != b);
  }

  constexpr auto operator<=>(const VertexPair&) const = default;

  constexpr bool contains(NodeId x) const { return x == u || x == v; }
};

/// Index of a pair in the strict lower triangle, used for flat per-pair arrays.
constexpr std::size_t triangle_index(VertexPair p) {
  return static_cast<std::size_t>(p.v) * (p.v - 1) / 2 + p.u;
}

constexpr std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

/// Symmetric n x n bit matrix with a zero diagonal. Rows are padded to whole
/// words; padding bits are never set.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n)
      : n_(n), words_((n + word_bits - 1) / word_bits), bits_(n * words_, 0) {}

  std::size_t size() const { return n_; }
  std::size_t words_per_row() const { return words_; }

  bool test(NodeId u, NodeId v) const {
    return (bits_[u * words_ + v / word_bits] >> (v % word_bits)) & 1U;
  }
  bool test(VertexPair p) const { return test(p.u, p.v); }

  void set(VertexPair p) {
    set_bit(p.u, p.v);
    set_bit(p.v, p.u);
  }
  void reset(VertexPair p) {
    clear_bit(p.u, p.v);
    clear_bit(p.v, p.u);
  }
  void flip(VertexPair p) {
    flip_bit(p.u, p.v);
    flip_bit(p.v, p.u);
  }

  std::span<const Word> row(NodeId u) const {
    return {bits_.data() + static_cast<std::size_t>(u) * words_, words_};
  }

  void clear() { std::fill(bits_.begin(), bits_.end(), Word{0}); }

  /// Number of set pairs (upper triangle).
  std::size_t count() const {
    std::size_t total = 0;
    for (Word w : bits_) total += static_cast<std::size_t>(std::popcount(w));
    return total / 2;
  }

  /// Checks symmetry, the zero diagonal and zero padding.
  bool well_formed() const {
    for (NodeId u = 0; u < n_; ++u) {
      if (test(u, u)) return false;
      for (NodeId v = u + 1; v < n_; ++v)
        if (test(u, v) != test(v, u)) return false;
      if (n_ % word_bits != 0) {
        const Word pad = ~Word{0} << (n_ % word_bits);
        if (bits_[u * words_ + words_ - 1] & pad) return false;
      }
    }
    return true;
  }

  bool operator==(const BitMatrix&) const = default;

 private:
  void set_bit(NodeId r, NodeId c) { bits_[r * words_ + c / word_bits] |= Word{1} << (c % word_bits); }
  void clear_bit(NodeId r, NodeId c) { bits_[r * words_ + c / word_bits] &= ~(Word{1} << (c % word_bits)); }
  void flip_bit(NodeId r, NodeId c) { bits_[r * words_ + c / word_bits] ^= Word{1} << (c % word_bits); }

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<Word> bits_;
};

/// Per-pair flag matrix: blocked pairs during the search, covered pairs while
/// packing subgraphs.
class PairMatrix : public BitMatrix {
 public:
  using BitMatrix::BitMatrix;
};

enum class EditKind { insertion, deletion };

struct Edit {
  VertexPair pair;
  EditKind kind;

  bool operator==(const Edit&) const = default;
};

/// Undirected simple graph stored as an adjacency bit matrix.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adjacency_(check_size(n)) {}

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edges_; }
  std::size_t words_per_row() const { return adjacency_.words_per_row(); }

  bool has_edge(NodeId u, NodeId v) const { return adjacency_.test(u, v); }
  bool has_edge(VertexPair p) const { return adjacency_.test(p); }

  std::span<const Word> row(NodeId u) const { return adjacency_.row(u); }
  const BitMatrix& matrix() const { return adjacency_; }

  void add_edge(VertexPair p) {
    if (!has_edge(p)) toggle_edge(p);
  }
  void remove_edge(VertexPair p) {
    if (has_edge(p)) toggle_edge(p);
  }

  /// Flips the pair; applying the same toggle twice restores the graph.
  Edit toggle_edge(VertexPair p) {
    assert(p.v < node_count());
    const bool was_edge = has_edge(p);
    adjacency_.flip(p);
    if (was_edge) {
      --edges_;
      return {p, EditKind::deletion};
    }
    ++edges_;
    return {p, EditKind::insertion};
  }

  std::size_t degree(NodeId u) const {
    std::size_t d = 0;
    for (Word w : row(u)) d += static_cast<std::size_t>(std::popcount(w));
    return d;
  }

  template <class F>
  void for_each_edge(F&& f) const {
    for (NodeId u = 0; u < node_count(); ++u) {
      const auto r = row(u);
      detail::for_each_bit(
          words_per_row(), [&](std::size_t w) { return r[w] & detail::above_mask(u, w); },
          [&](NodeId v) { f(VertexPair{u, v}); });
    }
  }

  bool consistent() const { return adjacency_.well_formed() && adjacency_.count() == edges_; }

  bool operator==(const Graph&) const = default;

 private:
  static std::size_t check_size(std::size_t n) {
    if (n == 0) throw std::invalid_argument("graph must have at least one node");
    if (n > max_nodes)
      throw std::length_error("graph with " + std::to_string(n) + " nodes exceeds the bit-matrix limit of " +
                              std::to_string(max_nodes));
    return n;
  }

  BitMatrix adjacency_;
  std::size_t edges_ = 0;
};

/// Visits the set bits of `base` AND every row in `and_rows` AND NOT every row
/// in `and_not_rows`, ascending, skipping the bit `exclude` (normally the row's
/// own node, so the diagonal never shows up).
template <class F>
bool scan_row_masked(std::span<const Word> base, NodeId exclude, std::initializer_list<std::span<const Word>> and_rows,
                     std::initializer_list<std::span<const Word>> and_not_rows, F&& f) {
  for (auto r : and_rows) assert(r.size() == base.size());
  for (auto r : and_not_rows) assert(r.size() == base.size());
  return detail::for_each_bit(
      base.size(),
      [&](std::size_t w) {
        Word x = base[w];
        for (auto r : and_rows) x &= r[w];
        for (auto r : and_not_rows) x &= ~r[w];
        if (exclude / word_bits == w) x &= ~(Word{1} << (exclude % word_bits));
        return x;
      },
      f);
}

/// Node-id mapping produced by permute_nodes: to_new[old] and to_old[new].
struct NodePermutation {
  std::vector<NodeId> to_new;
  std::vector<NodeId> to_old;

  VertexPair forward(VertexPair p) const { return {to_new[p.u], to_new[p.v]}; }
  VertexPair backward(VertexPair p) const { return {to_old[p.u], to_old[p.v]}; }
  bool identity() const {
    for (std::size_t i = 0; i < to_new.size(); ++i)
      if (to_new[i] != i) return false;
    return true;
  }
};

/// Seed 0 is reserved for the identity permutation.
inline constexpr std::uint64_t identity_permutation_seed = 0;

/// Relabels nodes by a uniformly random permutation drawn from mt19937_64.
inline std::pair<Graph, NodePermutation> permute_nodes(const Graph& g, std::uint64_t seed) {
  const std::size_t n = g.node_count();
  NodePermutation perm;
  perm.to_new.resize(n);
  std::iota(perm.to_new.begin(), perm.to_new.end(), NodeId{0});
  if (seed != identity_permutation_seed) {
    std::mt19937_64 rng(seed);
    // Fisher-Yates with an explicit modulo draw so the result does not depend
    // on the standard library's distribution implementation.
    for (std::size_t i = n; i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(rng() % i);
      std::swap(perm.to_new[i - 1], perm.to_new[j]);
    }
  }
  perm.to_old.resize(n);
  for (std::size_t i = 0; i < n; ++i) perm.to_old[perm.to_new[i]] = static_cast<NodeId>(i);

  Graph out(n);
  g.for_each_edge([&](VertexPair p) { out.add_edge(perm.forward(p)); });
  return {std::move(out), std::move(perm)};
}

}  // namespace qtedit

#endif  // QTEDIT_GRAPH_HPP
