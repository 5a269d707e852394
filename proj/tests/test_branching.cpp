#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "qtedit/branching.hpp"

using namespace qtedit;

namespace {

const Graph path4 = oracle::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});

}  // namespace

TEST(ObservePair, ForcedAfterFourBlocks) {
  const Subgraph s{{0, 1, 2, 3}};
  PairMatrix blocked(4);
  BranchState bs;
  const auto pairs = s.pairs();
  for (int i = 0; i < 3; ++i) {
    blocked.set(pairs[i]);
    observe_pair(bs, path4, pairs[i], blocked);
  }
  EXPECT_TRUE(bs.forced.empty());
  blocked.set(pairs[3]);
  observe_pair(bs, path4, pairs[3], blocked);
  ASSERT_EQ(bs.forced.size(), 1u);
  EXPECT_EQ(bs.forced[0], s);
  EXPECT_FALSE(bs.dead);
}

TEST(ObservePair, DeadWhenAllBlocked) {
  PairMatrix blocked(4);
  BranchState bs;
  for (auto p : Subgraph{{0, 1, 2, 3}}.pairs()) {
    blocked.set(p);
    observe_pair(bs, path4, p, blocked);
  }
  EXPECT_TRUE(bs.dead);
}

TEST(ObservePair, PairOutsideSubgraphsChangesNothing) {
  const Graph g = oracle::from_edges(6, {{0, 1}, {1, 2}, {2, 3}});
  PairMatrix blocked(6);
  blocked.set({4, 5});
  BranchState bs;
  observe_pair(bs, g, {4, 5}, blocked);
  EXPECT_EQ(bs, BranchState{});
}

TEST(SelectFirst, Cases) {
  const Graph star = oracle::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  EXPECT_EQ(select_first(star, PairMatrix(4)).kind, BranchDecision::Kind::solved);
  const auto d = select_first(path4, PairMatrix(4));
  ASSERT_EQ(d.kind, BranchDecision::Kind::pairs);
  EXPECT_EQ(d.pairs.size(), 5u);
  BranchState dead;
  dead.dead = true;
  EXPECT_EQ(select_first(path4, PairMatrix(4), &dead).kind, BranchDecision::Kind::prune);
}

TEST(SelectMost, SinglePathCentralFirst) {
  const auto c = PairCounters::from_graph(path4);
  const auto d = select_most(path4, c, BranchState{}, PairMatrix(4));
  ASSERT_EQ(d.kind, BranchDecision::Kind::pairs);
  EXPECT_EQ(d.pairs, (std::vector<VertexPair>{{1, 2}, {0, 1}, {2, 3}, {0, 2}, {1, 3}}));
}

TEST(SelectMost, SharedPairComesFirst) {
  // Path on six nodes: {2,3} lies in all three P4s.
  const Graph g = oracle::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
  const auto c = PairCounters::from_graph(g);
  ASSERT_EQ(c.count({2, 3}), 3);  // also the central edge of 1-2-3-4
  const auto d = select_most(g, c, BranchState{}, PairMatrix(6));
  ASSERT_EQ(d.kind, BranchDecision::Kind::pairs);
  EXPECT_EQ(d.pairs.front(), (VertexPair{2, 3}));
}

TEST(SelectMost, ForcedSubgraphGivesSinglePair) {
  PairMatrix blocked(4);
  BranchState bs;
  auto c = PairCounters::from_graph(path4);
  const auto pairs = Subgraph{{0, 1, 2, 3}}.pairs();
  for (int i = 0; i < 4; ++i) {
    blocked.set(pairs[i]);
    c.block(pairs[i]);
    observe_pair(bs, path4, pairs[i], blocked);
  }
  const auto d = select_most(path4, c, bs, blocked);
  ASSERT_EQ(d.kind, BranchDecision::Kind::pairs);
  EXPECT_EQ(d.pairs, (std::vector<VertexPair>{pairs[4]}));
}

TEST(SelectMost, DeadPrunes) {
  BranchState bs;
  bs.dead = true;
  EXPECT_EQ(select_most(path4, PairCounters::from_graph(path4), bs, PairMatrix(4)).kind,
            BranchDecision::Kind::prune);
}

TEST(SelectMost, StaleForcedEntryIsSkipped) {
  // A forced entry that is no longer induced must not be used.
  Graph g = oracle::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  BranchState bs;
  bs.forced.push_back(Subgraph{{0, 1, 2, 3}});
  g.add_edge({0, 2});  // 0-1-2-3 no longer induced, 0-2-3-4 is
  const auto c = PairCounters::from_graph(g);
  const auto d = select_most(g, c, bs, PairMatrix(5));
  ASSERT_EQ(d.kind, BranchDecision::Kind::pairs);
  EXPECT_GT(d.pairs.size(), 1u);
}

TEST(SelectMost, PropertiesOnRandomStates) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 4 + trial % 6;
    const Graph g = oracle::random_graph(n, 0.5, rng());
    PairMatrix blocked(n);
    auto c = PairCounters::from_graph(g);
    BranchState bs;
    for (const auto& p : oracle::all_pairs(n))
      if (rng() % 4 == 0) {
        blocked.set(p);
        c.block(p);
        observe_pair(bs, g, p, blocked);
      }
    const auto d = select_most(g, c, bs, blocked);
    const auto again = select_most(g, c, bs, blocked);
    EXPECT_EQ(d.kind, again.kind);
    EXPECT_EQ(d.pairs, again.pairs);
    EXPECT_EQ(d.kind == BranchDecision::Kind::solved, oracle::is_quasi_threshold(g));
    if (d.kind != BranchDecision::Kind::pairs) continue;
    ASSERT_FALSE(d.pairs.empty());
    // All pairs come from one induced instance and are neither blocked nor
    // its omitted pair.
    bool from_instance = false;
    list_global(g, [&](const Subgraph& s) {
      bool all = true;
      for (auto p : d.pairs) all = all && s.uses(p);
      from_instance = from_instance || all;
    });
    EXPECT_TRUE(from_instance);
    for (auto p : d.pairs) EXPECT_FALSE(blocked.test(p));
    for (std::size_t i = 1; i < d.pairs.size(); ++i) EXPECT_GE(c.count(d.pairs[i - 1]), c.count(d.pairs[i]));
  }
}
