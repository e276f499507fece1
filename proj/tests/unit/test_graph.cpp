#include <random>
#include <set>

#include <gtest/gtest.h>

#include <netoco/error.hpp>
#include <netoco/graph.hpp>

#include "oracles.hpp"

using namespace netoco;

namespace {

Network random_graph(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) e.emplace_back(u, v);
  return Network(n, e);
}

}  // namespace

TEST(Network, RejectsSelfLoopsAndDuplicates) {
  EXPECT_THROW(Network(3, {{0, 0}}), InvalidGraph);
  EXPECT_THROW(Network(3, {{0, 1}, {1, 0}}), InvalidGraph);
  EXPECT_THROW(Network(3, {{0, 3}}), InvalidVertex);
}

TEST(Network, EdgesAreSymmetric) {
  Network g(4, {{2, 1}, {3, 0}});
  EXPECT_GE(g.edge_index(1, 2), 0);
  EXPECT_EQ(g.edge_index(1, 2), g.edge_index(2, 1));
  EXPECT_EQ(g.edge_index(0, 1), -1);
  EXPECT_EQ(g.edge(0).u, 0);
  EXPECT_EQ(g.edge(0).v, 3);
}

TEST(Neighborhood, PathExample) {
  Network p = path_graph(5);
  EXPECT_EQ(p.neighborhood(2, 1), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(p.neighborhood(4, 0), (std::vector<int>{4}));
  EXPECT_TRUE(p.neighborhood(4, -1).empty());
  EXPECT_THROW(p.neighborhood(5, 1), InvalidVertex);
}

TEST(Neighborhood, CycleAllButAntipode) {
  Network c = cycle_graph(8);
  auto n = c.neighborhood(0, 3);
  EXPECT_EQ(n.size(), 7u);
  EXPECT_EQ(std::count(n.begin(), n.end(), 4), 0);
}

TEST(Boundary, CycleExamples) {
  Network c = cycle_graph(8);
  EXPECT_EQ(c.boundary(0, 2), (std::vector<int>{2, 6}));
  EXPECT_EQ(c.boundary(5, 0), (std::vector<int>{5}));
  EXPECT_TRUE(c.boundary(0, c.eccentricity(0) + 1).empty());
  EXPECT_THROW(c.boundary(-1, 1), InvalidVertex);
}

TEST(BoundaryGrowth, Examples) {
  EXPECT_EQ(cycle_graph(8).boundary_growth(4), (std::vector<int>{1, 2, 2, 2, 1}));
  auto star = star_graph(4).boundary_growth(3);
  EXPECT_EQ(star[0], 1);
  EXPECT_EQ(star[1], 4);
  EXPECT_EQ(star[2], 3);
  EXPECT_EQ(star[3], 0);
  auto k5 = complete_graph(5).boundary_growth(3);
  EXPECT_EQ(k5[1], 4);
  EXPECT_EQ(k5[2], 0);
  EXPECT_EQ(k5[3], 0);
}

TEST(SpaceTime, PathExample) {
  Network p = path_graph(5);
  auto st = st_neighborhood(p, 7, 2, 3, 2);
  std::vector<SpaceTimeIndex> interior;
  for (int t : {7, 8})
    for (int v : {1, 2, 3}) interior.push_back({t, v});
  EXPECT_EQ(st.interior, interior);
  std::set<SpaceTimeIndex> boundary(st.boundary.begin(), st.boundary.end());
  std::set<SpaceTimeIndex> expected;
  for (int v = 0; v < 5; ++v) expected.insert({9, v});
  for (int t : {7, 8})
    for (int v : {0, 4}) expected.insert({t, v});
  EXPECT_EQ(boundary, expected);
}

TEST(SpaceTime, SingleStepHasEmptyInterior) {
  Network c = cycle_graph(6);
  auto st = st_neighborhood(c, 1, 0, 1, 1);
  EXPECT_TRUE(st.interior.empty());
  EXPECT_EQ(st.boundary.size(), 3u);
  EXPECT_THROW(st_neighborhood(c, 1, 0, 0, 1), InvalidConfig);
}

TEST(SpaceTime, PartitionOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Network g = random_graph(12, 0.25, seed);
    for (int k = 1; k <= 3; ++k) {
      for (int r = 0; r <= 3; ++r) {
        auto st = st_neighborhood(g, 2, static_cast<int>(seed % 12), k, r);
        std::set<SpaceTimeIndex> all;
        for (auto s : st.interior) all.insert(s);
        for (auto s : st.boundary) EXPECT_TRUE(all.insert(s).second) << "overlap";
        EXPECT_EQ(all.size(), static_cast<std::size_t>(k) * g.neighborhood(static_cast<int>(seed % 12), r).size());
      }
    }
  }
}

TEST(RingOfBlocks, Construction) {
  Network g = ring_of_blocks(6, 2);
  EXPECT_EQ(g.vertex_count(), 12);
  EXPECT_EQ(g.max_degree(), 4);
  EXPECT_EQ(g.min_degree(), 4);
  Network c4 = ring_of_blocks(4, 1);
  Network ref = cycle_graph(4);
  EXPECT_EQ(c4.edges(), ref.edges());
  EXPECT_THROW(ring_of_blocks(2, 3), InvalidGraph);
}

TEST(RingOfBlocks, DistancesAgainstOracle) {
  Network g = ring_of_blocks(8, 3);
  auto d = oracle::floyd(g);
  EXPECT_EQ(d[0][3 * 3], 3);
  EXPECT_EQ(d[0][1], 2);
  for (int i = 0; i < g.vertex_count(); ++i)
    for (int j = 0; j < g.vertex_count(); ++j) EXPECT_EQ(g.distance(i, j), d[i][j]);
  for (int d_ = 1; d_ <= 3; ++d_) {
    Network h = ring_of_blocks(5, d_);
    EXPECT_EQ(h.max_degree(), 2 * d_);
    EXPECT_EQ(h.min_degree(), 2 * d_);
  }
}

TEST(Distances, BfsMatchesRelaxationOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    int n = 5 + static_cast<int>(seed * 7 % 46);
    Network g = random_graph(n, 3.0 / n, seed);
    auto d = oracle::floyd(g);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        int expect = d[i][j] >= oracle::kFar ? Network::kUnreachable : d[i][j];
        ASSERT_EQ(g.distance(i, j), expect) << "seed " << seed;
      }
    }
  }
}

TEST(Distances, MetricAndNeighborhoodIdentities) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Network g = random_graph(15, 0.2, seed + 100);
    for (int v = 0; v < 15; ++v) {
      std::size_t total = 0;
      for (int r = 0; r <= 6; ++r) {
        auto b = g.boundary(v, r);
        total += b.size();
        EXPECT_EQ(total, g.neighborhood(v, r).size());
        auto inner = g.neighborhood(v, r - 1);
        for (int u : b) {
          EXPECT_EQ(std::count(inner.begin(), inner.end(), u), 0);
          EXPECT_EQ(g.distance(v, u), r);
        }
      }
      for (int u = 0; u < 15; ++u) {
        EXPECT_EQ(g.distance(u, v), g.distance(v, u));
        for (int w = 0; w < 15; ++w) {
          if (g.distance(u, w) != Network::kUnreachable && g.distance(w, v) != Network::kUnreachable) {
            EXPECT_LE(g.distance(u, v), g.distance(u, w) + g.distance(w, v));
          }
        }
      }
    }
  }
}

TEST(Distances, DisconnectedGraphUsesSentinel) {
  Network g(4, {{0, 1}, {2, 3}});
  EXPECT_FALSE(g.connected());
  EXPECT_EQ(g.distance(0, 3), Network::kUnreachable);
  EXPECT_EQ(g.neighborhood(0, 10), (std::vector<int>{0, 1}));
}

TEST(Generators, Shapes) {
  EXPECT_EQ(grid_graph(3, 4).vertex_count(), 12);
  EXPECT_EQ(grid_graph(3, 4).edge_count(), 17);
  EXPECT_EQ(star_graph(5).degree(0), 5);
  EXPECT_EQ(complete_graph(6).edge_count(), 15);
  EXPECT_EQ(path_graph(7).diameter(), 6);
  EXPECT_EQ(cycle_graph(9).diameter(), 4);
}
