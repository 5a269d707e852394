#ifndef QTEDIT_SUBGRAPH_HPP
#define QTEDIT_SUBGRAPH_HPP

#include <array>
#include <cstddef>
#include <span>

#include "qtedit/graph.hpp"

namespace qtedit {

enum class Shape { p4, c4 };

/// An induced P4 or C4 given as a path u1-u2-u3-u4. The pair {u1,u4} is the
/// omitted pair: for a P4 the degree-1 endpoints, for a C4 the cycle edge this
/// listing instance skips. Tuples are stored with u1 < u4.
struct Subgraph {
  std::array<NodeId, 4> nodes{};

  VertexPair omitted() const { return {nodes[0], nodes[3]}; }
  VertexPair central() const { return {nodes[1], nodes[2]}; }

  /// The five non-omitted pairs: central edge, the two outer edges, then the
  /// two non-edges {u1,u3} and {u2,u4}.
  std::array<VertexPair, 5> pairs() const {
    return {VertexPair{nodes[1], nodes[2]}, VertexPair{nodes[0], nodes[1]}, VertexPair{nodes[2], nodes[3]},
            VertexPair{nodes[0], nodes[2]}, VertexPair{nodes[1], nodes[3]}};
  }

  bool contains(VertexPair p) const {
    int hits = 0;
    for (NodeId x : nodes) hits += p.contains(x) ? 1 : 0;
    return hits == 2;
  }

  /// True if p is one of the five non-omitted pairs.
  bool uses(VertexPair p) const { return contains(p) && p != omitted(); }

  auto operator<=>(const Subgraph&) const = default;
};

inline Shape shape(const Graph& g, const Subgraph& s) {
  return g.has_edge(s.nodes[0], s.nodes[3]) ? Shape::c4 : Shape::p4;
}

/// Whether the tuple still forms an induced P4 or C4 in g.
inline bool is_induced(const Graph& g, const Subgraph& s) {
  const auto& x = s.nodes;
  return g.has_edge(x[0], x[1]) && g.has_edge(x[1], x[2]) && g.has_edge(x[2], x[3]) && !g.has_edge(x[0], x[2]) &&
         !g.has_edge(x[1], x[3]);
}

namespace detail {

inline Subgraph canonical(NodeId a, NodeId b, NodeId c, NodeId d) {
  return a < d ? Subgraph{{a, b, c, d}} : Subgraph{{d, c, b, a}};
}

// Row accessor for an optional exclusion matrix; a null matrix excludes nothing.
struct Excluder {
  const PairMatrix* m;
  Word at(NodeId u, std::size_t w) const { return m ? m->row(u)[w] : Word{0}; }
  bool test(NodeId u, NodeId v) const { return m && m->test(u, v); }
};

// All instances with central edge {u2,u3} (u2 != u3 adjacent), canonical form.
template <class F>
bool list_with_central(const Graph& g, NodeId u2, NodeId u3, Excluder ex, F& f) {
  const std::size_t words = g.words_per_row();
  const auto r2 = g.row(u2);
  const auto r3 = g.row(u3);
  return for_each_bit(
      words, [&](std::size_t w) { return r2[w] & ~r3[w] & ~ex.at(u2, w) & ~ex.at(u3, w); },
      [&](NodeId u1) {
        if (u1 == u3) return true;
        return for_each_bit(
            words, [&](std::size_t w) { return r3[w] & ~r2[w] & ~ex.at(u2, w) & ~ex.at(u3, w); },
            [&](NodeId u4) {
              if (u4 == u2) return true;
              return keep_going(f, canonical(u1, u2, u3, u4));
            });
      });
}

// Instances where the edge (a,b) is the first path edge of the oriented tuple
// (a,b,c,d). Each such instance is emitted once in canonical form.
template <class F>
bool list_with_end_edge(const Graph& g, NodeId a, NodeId b, Excluder ex, F& f) {
  const std::size_t words = g.words_per_row();
  const auto ra = g.row(a);
  const auto rb = g.row(b);
  return for_each_bit(
      words, [&](std::size_t w) { return rb[w] & ~ra[w] & ~ex.at(a, w) & ~ex.at(b, w); },
      [&](NodeId c) {
        if (c == a) return true;
        const auto rc = g.row(c);
        return for_each_bit(
            words, [&](std::size_t w) { return rc[w] & ~rb[w] & ~ex.at(c, w) & ~ex.at(b, w); },
            [&](NodeId d) {
              if (d == b) return true;
              return keep_going(f, canonical(a, b, c, d));
            });
      });
}

// Instances where the non-edge (a,c) spans the first two path edges of (a,b,c,d).
template <class F>
bool list_with_chord(const Graph& g, NodeId a, NodeId c, Excluder ex, F& f) {
  const std::size_t words = g.words_per_row();
  const auto ra = g.row(a);
  const auto rc = g.row(c);
  return for_each_bit(
      words, [&](std::size_t w) { return ra[w] & rc[w] & ~ex.at(a, w) & ~ex.at(c, w); },
      [&](NodeId b) {
        const auto rb = g.row(b);
        return for_each_bit(
            words, [&](std::size_t w) { return rc[w] & ~rb[w] & ~ex.at(c, w) & ~ex.at(b, w); },
            [&](NodeId d) {
              if (d == b) return true;
              return keep_going(f, canonical(a, b, c, d));
            });
      });
}

// Instances whose omitted pair is exactly {a,d} (a < d): the C4 instance that
// skips edge {a,d}, or the P4 with endpoints a and d.
template <class F>
bool list_with_omitted(const Graph& g, NodeId a, NodeId d, Excluder ex, F& f) {
  const std::size_t words = g.words_per_row();
  const auto ra = g.row(a);
  const auto rd = g.row(d);
  return for_each_bit(
      words, [&](std::size_t w) { return ra[w] & ~rd[w] & ~ex.at(a, w) & ~ex.at(d, w); },
      [&](NodeId b) {
        if (b == d) return true;
        const auto rb = g.row(b);
        return for_each_bit(
            words, [&](std::size_t w) { return rb[w] & rd[w] & ~ra[w] & ~ex.at(b, w) & ~ex.at(d, w) & ~ex.at(a, w); },
            [&](NodeId c) {
              if (c == a) return true;
              return keep_going(f, Subgraph{{a, b, c, d}});
            });
      });
}

}  // namespace detail

/// Lists every induced P4 once and every induced C4 four times (once per
/// omitted cycle edge). With an exclusion matrix, candidates using an excluded
/// non-omitted pair are skipped as far as the rows seen at scan time allow;
/// callers that grow the matrix while listing must re-check.
template <class F>
bool list_global(const Graph& g, const PairMatrix* exclude, F&& f) {
  const detail::Excluder ex{exclude};
  const std::size_t words = g.words_per_row();
  for (NodeId u2 = 0; u2 < g.node_count(); ++u2) {
    const auto r2 = g.row(u2);
    const bool done = detail::for_each_bit(
        words, [&](std::size_t w) { return r2[w] & detail::above_mask(u2, w); },
        [&](NodeId u3) {
          if (ex.test(u2, u3)) return true;
          return detail::list_with_central(g, u2, u3, ex, f);
        });
    if (!done) return false;
  }
  return true;
}

template <class F>
bool list_global(const Graph& g, F&& f) {
  return list_global(g, nullptr, std::forward<F>(f));
}

/// Lists the instances containing p. When include_endpoint_position is false
/// (the default, used for branching and packing), a P4 whose degree-1
/// endpoints are p is left out, since p is its omitted pair.
template <class F>
bool list_near(const Graph& g, VertexPair p, const PairMatrix* exclude, F&& f, bool include_endpoint_position = false) {
  const detail::Excluder ex{exclude};
  // An excluded p only rules out the instances that use it.
  const bool used_allowed = !ex.test(p.u, p.v);
  if (g.has_edge(p)) {
    if (used_allowed) {
      if (!detail::list_with_central(g, p.u, p.v, ex, f)) return false;
      if (!detail::list_with_end_edge(g, p.u, p.v, ex, f)) return false;
      if (!detail::list_with_end_edge(g, p.v, p.u, ex, f)) return false;
    }
    return detail::list_with_omitted(g, p.u, p.v, ex, f);
  }
  if (!used_allowed) return include_endpoint_position ? detail::list_with_omitted(g, p.u, p.v, ex, f) : true;
  if (!detail::list_with_chord(g, p.u, p.v, ex, f)) return false;
  if (!detail::list_with_chord(g, p.v, p.u, ex, f)) return false;
  if (include_endpoint_position) return detail::list_with_omitted(g, p.u, p.v, ex, f);
  return true;
}

template <class F>
bool list_near(const Graph& g, VertexPair p, F&& f) {
  return list_near(g, p, nullptr, std::forward<F>(f));
}

/// Every instance whose six pairs include p, omitted position included.
template <class F>
bool list_containing(const Graph& g, VertexPair p, F&& f) {
  return list_near(g, p, nullptr, std::forward<F>(f), true);
}

inline bool is_quasi_threshold(const Graph& g) {
  return list_global(g, [](const Subgraph&) { return false; });
}

/// Small fixed-capacity list of node pairs (at most six per subgraph).
class PairList {
 public:
  void push_back(VertexPair p) {
    assert(size_ < items_.size());
    items_[size_++] = p;
  }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  const VertexPair& operator[](std::size_t i) const { return items_[i]; }
  const VertexPair* begin() const { return items_.data(); }
  const VertexPair* end() const { return items_.data() + size_; }

 private:
  std::array<VertexPair, 6> items_{};
  std::size_t size_ = 0;
};

/// Pairs of s that a branch may edit: the non-omitted pairs that are not
/// blocked, central edge first. Without conversion skipping the omitted pair
/// is appended as well.
inline PairList editable_pairs(const Subgraph& s, const PairMatrix& blocked, bool skip_conversion = true) {
  PairList out;
  for (VertexPair p : s.pairs())
    if (!blocked.test(p)) out.push_back(p);
  if (!skip_conversion && !blocked.test(s.omitted())) out.push_back(s.omitted());
  return out;
}

}  // namespace qtedit

#endif  // QTEDIT_SUBGRAPH_HPP
