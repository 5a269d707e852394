#include <gtest/gtest.h>

#include <map>
#include <random>

#include "oracle.hpp"
#include "qtedit/counters.hpp"

using namespace qtedit;

namespace {

// Counts from the brute-force listing, skipping blocked pairs.
std::map<VertexPair, int> brute_counts(const Graph& g, const std::set<VertexPair>& blocked) {
  std::map<VertexPair, int> out;
  for (const auto& t : oracle::listed_tuples(g))
    for (auto p : oracle::used_pairs(t))
      if (!blocked.count(p)) ++out[p];
  return out;
}

void expect_matches(const PairCounters& c, const Graph& g, const std::set<VertexPair>& blocked) {
  const auto want = brute_counts(g, blocked);
  std::int64_t total = 0;
  for (auto p : oracle::all_pairs(g.node_count())) {
    const auto it = want.find(p);
    const int w = it == want.end() ? 0 : it->second;
    ASSERT_EQ(c.count(p), w) << p.u << "," << p.v;
    total += w;
  }
  ASSERT_EQ(c.total(), total);
}

}  // namespace

TEST(Counters, PathCounts) {
  const Graph g = oracle::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  const auto c = PairCounters::from_graph(g);
  EXPECT_EQ(c.total(), 5);
  EXPECT_EQ(c.count({0, 3}), 0);
  for (VertexPair p : {VertexPair{0, 1}, {1, 2}, {2, 3}, {0, 2}, {1, 3}}) EXPECT_EQ(c.count(p), 1);
}

TEST(Counters, CycleCounts) {
  const Graph g = oracle::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  const auto c = PairCounters::from_graph(g);
  EXPECT_EQ(c.total(), 20);
  for (VertexPair p : {VertexPair{0, 1}, {1, 2}, {2, 3}, {0, 3}}) EXPECT_EQ(c.count(p), 3);
  EXPECT_EQ(c.count({0, 2}), 4);
  EXPECT_EQ(c.count({1, 3}), 4);
}

TEST(Counters, QuasiThresholdGraphIsZero) {
  const Graph star = oracle::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  const auto c = PairCounters::from_graph(star);
  EXPECT_EQ(c.total(), 0);
  EXPECT_EQ(c.max_count(), 0);
}

TEST(Counters, DeleteCentralEdgeOfPath) {
  Graph g = oracle::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  auto c = PairCounters::from_graph(g);
  const Edit e = c.toggle_and_update(g, {1, 2}, PairMatrix(4));
  EXPECT_EQ(e.kind, EditKind::deletion);
  EXPECT_EQ(c.total(), 0);
  EXPECT_TRUE(c.same_counts(PairCounters::from_graph(g)));
}

TEST(Counters, BlockAndUnblock) {
  const Graph g = oracle::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  auto c = PairCounters::from_graph(g);
  const auto before = c;
  c.block({0, 1});
  EXPECT_EQ(c.count({0, 1}), 0);
  EXPECT_EQ(c.saved_depth(), 1u);
  EXPECT_EQ(c.total(), 4);
  c.unblock({0, 1});
  EXPECT_EQ(c, before);
}

TEST(Counters, UnblockErrors) {
  PairCounters c(4);
  EXPECT_THROW(c.unblock({0, 1}), std::logic_error);
  c.block({0, 1});
  EXPECT_THROW(c.unblock({0, 2}), std::logic_error);
}

TEST(Counters, FromGraphMatchesBruteForce) {
  for (std::size_t n = 4; n <= 9; ++n)
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Graph g = oracle::random_graph(n, 0.5, seed + 100 * n);
      expect_matches(PairCounters::from_graph(g), g, {});
    }
}

// Random block/edit/revert/unblock sequences in the order the search uses:
// a pair is blocked before it is edited, and its edit is undone before it is
// unblocked.
TEST(Counters, IncrementalEqualsRecompute) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 5 + trial % 5;
    Graph g = oracle::random_graph(n, 0.5, rng());
    PairMatrix blocked(n);
    std::set<VertexPair> blocked_set;
    std::vector<std::pair<VertexPair, bool>> stack;  // pair, edited
    auto c = PairCounters::from_graph(g);
    const auto pairs = oracle::all_pairs(n);
    for (int step = 0; step < 80; ++step) {
      const VertexPair p = pairs[rng() % pairs.size()];
      if (rng() % 3 == 0 && !stack.empty()) {
        auto [q, edited] = stack.back();
        stack.pop_back();
        if (edited) c.toggle_and_update(g, q, blocked);
        c.unblock(q);
        blocked.reset(q);
        blocked_set.erase(q);
      } else if (!blocked.test(p)) {
        c.block(p);
        blocked.set(p);
        blocked_set.insert(p);
        const bool edit = rng() % 2 == 0;
        if (edit) c.toggle_and_update(g, p, blocked);
        stack.emplace_back(p, edit);
      }
      expect_matches(c, g, blocked_set);
      ASSERT_TRUE(c.same_counts(PairCounters::from_graph(g, &blocked)));
    }
  }
}

TEST(Counters, TotalZeroIffQuasiThreshold) {
  for (std::size_t n = 4; n <= 9; ++n)
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const Graph g = oracle::random_graph(n, 0.1 * static_cast<double>(seed % 10), seed);
      EXPECT_EQ(PairCounters::from_graph(g).total() == 0, oracle::is_quasi_threshold(g));
    }
}

TEST(Counters, PairsWithCount) {
  const Graph g = oracle::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  const auto c = PairCounters::from_graph(g);
  std::vector<VertexPair> got;
  c.for_each_pair_with_count(c.max_count(), [&](VertexPair p) { got.push_back(p); });
  EXPECT_EQ(got, (std::vector<VertexPair>{{0, 2}, {1, 3}}));
}
