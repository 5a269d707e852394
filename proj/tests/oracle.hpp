// Brute-force reference implementations used only by the tests. Nothing here
// shares code with the library beyond the Graph container.
#ifndef QTEDIT_TESTS_ORACLE_HPP
#define QTEDIT_TESTS_ORACLE_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "qtedit/graph.hpp"

namespace oracle {

using qtedit::Graph;
using qtedit::NodeId;
using qtedit::VertexPair;
using Tuple = std::array<NodeId, 4>;

inline Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (NodeId v = 1; v < n; ++v)
    for (NodeId u = 0; u < v; ++u)
      if (coin(rng)) g.add_edge({u, v});
  return g;
}

inline Graph from_edges(std::size_t n, std::initializer_list<std::pair<NodeId, NodeId>> edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge({u, v});
  return g;
}

inline std::vector<VertexPair> all_pairs(std::size_t n) {
  std::vector<VertexPair> out;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) out.push_back({u, v});
  return out;
}

// A 4-node set induces a P4 iff it has 3 edges and degrees {1,1,2,2}, and a
// C4 iff it has 4 edges and every degree is 2.
inline bool forbidden_quadruple(const Graph& g, const std::array<NodeId, 4>& q) {
  std::array<int, 4> deg{};
  int edges = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (g.has_edge({q[i], q[j]})) {
        ++deg[i];
        ++deg[j];
        ++edges;
      }
  std::sort(deg.begin(), deg.end());
  if (edges == 3) return deg == std::array<int, 4>{1, 1, 2, 2};
  if (edges == 4) return deg == std::array<int, 4>{2, 2, 2, 2};
  return false;
}

inline bool is_quasi_threshold(const Graph& g) {
  const NodeId n = static_cast<NodeId>(g.node_count());
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b)
      for (NodeId c = b + 1; c < n; ++c)
        for (NodeId d = c + 1; d < n; ++d)
          if (forbidden_quadruple(g, {a, b, c, d})) return false;
  return true;
}

// Every ordered tuple forming an induced path u1-u2-u3-u4 (with {u1,u4} free),
// keeping the orientation with u1 < u4. A P4 appears once and a C4 four times.
inline std::vector<Tuple> listed_tuples(const Graph& g) {
  const NodeId n = static_cast<NodeId>(g.node_count());
  std::vector<Tuple> out;
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = 0; b < n; ++b)
      for (NodeId c = 0; c < n; ++c)
        for (NodeId d = a + 1; d < n; ++d) {
          if (a == b || a == c || b == c || b == d || c == d) continue;
          if (g.has_edge({a, b}) && g.has_edge({b, c}) && g.has_edge({c, d}) && !g.has_edge({a, c}) &&
              !g.has_edge({b, d}))
            out.push_back({a, b, c, d});
        }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<VertexPair> used_pairs(const Tuple& t) {
  return {{t[1], t[2]}, {t[0], t[1]}, {t[2], t[3]}, {t[0], t[2]}, {t[1], t[3]}};
}

inline bool tuple_contains(const Tuple& t, VertexPair p) {
  return std::count(t.begin(), t.end(), p.u) + std::count(t.begin(), t.end(), p.v) == 2;
}

struct EditOptimum {
  std::optional<int> k;  // unset when no solution with at most max_k edits exists
  std::set<std::vector<VertexPair>> solutions;
};

// Minimum edit sets by exhaustive search over all subsets of up to max_k pairs.
inline EditOptimum minimum_edits(const Graph& g, int max_k = 4) {
  const auto pairs = all_pairs(g.node_count());
  EditOptimum out;
  for (int k = 0; k <= max_k && !out.k; ++k) {
    if (k > static_cast<int>(pairs.size())) break;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      Graph h = g;
      std::vector<VertexPair> edits;
      for (int i : idx) {
        h.toggle_edge(pairs[i]);
        edits.push_back(pairs[i]);
      }
      if (is_quasi_threshold(h)) {
        out.k = k;
        out.solutions.insert(edits);
      }
      int i = k - 1;
      while (i >= 0 && idx[i] == static_cast<int>(pairs.size()) - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

// Largest set of listed tuples pairwise sharing no used, non-blocked pair.
inline std::size_t maximum_packing(const std::vector<Tuple>& tuples, const std::set<VertexPair>& blocked = {}) {
  std::size_t best = 0;
  std::vector<std::size_t> chosen;
  auto conflicts = [&](const Tuple& a, const Tuple& b) {
    for (auto p : used_pairs(a)) {
      if (blocked.count(p)) continue;
      for (auto q : used_pairs(b))
        if (p == q) return true;
    }
    return false;
  };
  auto rec = [&](auto&& self, std::size_t i) -> void {
    best = std::max(best, chosen.size());
    if (chosen.size() + (tuples.size() - i) <= best) return;
    for (std::size_t j = i; j < tuples.size(); ++j) {
      bool ok = true;
      for (auto c : chosen)
        if (conflicts(tuples[c], tuples[j])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      chosen.push_back(j);
      self(self, j + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  return best;
}

// Connected components by repeated relabeling, node order canonical.
inline std::vector<int> component_labels(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<int> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = static_cast<int>(i);
  for (bool changed = true; changed;) {
    changed = false;
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v)
        if (g.has_edge({u, v}) && label[u] != label[v]) {
          const int m = std::min(label[u], label[v]);
          label[u] = label[v] = m;
          changed = true;
        }
  }
  return label;
}

// Random-graph corpus shared by the oracle tests: n in [4,7], three densities.
struct CorpusEntry {
  std::size_t n;
  double p;
  std::uint64_t seed;
  Graph graph;
};

inline std::vector<CorpusEntry> corpus(int seeds_per_cell) {
  std::vector<CorpusEntry> out;
  for (std::size_t n = 4; n <= 7; ++n)
    for (double p : {0.3, 0.5, 0.7})
      for (int s = 0; s < seeds_per_cell; ++s) {
        const std::uint64_t seed = 1000003ULL * n + 7919ULL * static_cast<std::uint64_t>(p * 10) + s;
        out.push_back({n, p, seed, random_graph(n, p, seed)});
      }
  return out;
}

}  // namespace oracle

#endif  // QTEDIT_TESTS_ORACLE_HPP
