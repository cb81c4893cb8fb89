#include "shapley/graph.hpp"

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "shapley/error.hpp"

namespace shapley {
namespace {

using testing::named_path;
using testing::random_graph;
using testing::y_instance;

TEST(GraphTest, RejectsSelfLoopsNegativeCostsAndUnknownVertices) {
  Graph g({"a", "b"});
  EXPECT_THROW(g.add_edge(0, 0, Rational(1)), InputError);
  EXPECT_THROW(g.add_edge(0, 1, Rational(-1)), InputError);
  EXPECT_THROW(g.add_edge(0, 5, Rational(1)), InputError);
  EXPECT_THROW(g.add_vertex("a"), InputError);
  EXPECT_THROW(g.vertex("zz"), InputError);
}

TEST(GraphTest, AllowsParallelEdges) {
  Graph g({"a", "b"});
  g.add_edge(0, 1, Rational(3));
  g.add_edge(0, 1, Rational(2));
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(shortest_path(g, 0, 1).distance, Rational(2));
  EXPECT_EQ(shortest_path(g, 0, 1).path.edges, std::vector<EdgeId>{1});
  EXPECT_FALSE(is_tree(g));
}

TEST(ShortestPathTest, SingleEdge) {
  Graph g({"s", "t"});
  g.add_edge(0, 1, Rational(1));
  const ShortestPath sp = shortest_path(g, 0, 1);
  EXPECT_EQ(sp.distance, Rational(1));
  EXPECT_EQ(sp.path.edges, std::vector<EdgeId>{0});
}

TEST(ShortestPathTest, IdentityIsEmpty) {
  const GameInstance y = y_instance();
  const ShortestPath sp = shortest_path(y.graph(), 2, 2);
  EXPECT_EQ(sp.distance, Rational(0));
  EXPECT_TRUE(sp.path.empty());
}

TEST(ShortestPathTest, YInstanceSourcesMeetAtHub) {
  const GameInstance y = y_instance();
  const Graph& g = y.graph();
  // Frozen from exhaustive enumeration: s1-m-s2 = 2, s1-t-s2 = 4, s1-m-t-s2 = 5, s1-t-m-s2 = 5.
  EXPECT_EQ(testing::brute_force_distance(g, g.vertex("s1"), g.vertex("s2")), Rational(2));
  const ShortestPath sp = shortest_path(g, g.vertex("s1"), g.vertex("s2"));
  EXPECT_EQ(sp.distance, Rational(2));
  EXPECT_EQ(sp.path, named_path(g, {"s1", "m", "s2"}));
}

TEST(ShortestPathTest, ErrorsOnUnknownOrDisconnected) {
  Graph g({"a", "b", "c"});
  g.add_edge(0, 1, Rational(1));
  EXPECT_THROW(shortest_path(g, 0, 2), ConnectivityError);
  EXPECT_THROW(shortest_path(g, 0, 9), InputError);
}

TEST(ShortestPathTest, TiesGoToLexicographicallySmallestVertexSequence) {
  Graph g({"s", "a", "b", "t"});
  g.add_edge(0, 2, Rational(1));
  g.add_edge(2, 3, Rational(1));
  g.add_edge(0, 1, Rational(1));
  g.add_edge(1, 3, Rational(1));
  EXPECT_EQ(shortest_path(g, 0, 3).path, named_path(g, {"s", "a", "t"}));
}

TEST(ShortestPathTest, ZeroCostCyclesStillYieldSimplePaths) {
  Graph g({"s", "a", "b", "t"});
  g.add_edge(0, 1, Rational(0));
  g.add_edge(1, 2, Rational(0));
  g.add_edge(2, 0, Rational(0));
  g.add_edge(2, 3, Rational(1));
  const ShortestPath sp = shortest_path(g, 0, 3);
  EXPECT_EQ(sp.distance, Rational(1));
  EXPECT_TRUE(is_simple_path(g, sp.path));
  EXPECT_EQ(sp.path, named_path(g, {"s", "a", "b", "t"}));
}

TEST(IsTreeTest, Examples) {
  const GameInstance y = y_instance();
  EXPECT_FALSE(is_tree(y.graph()));
  Graph star({"s1", "s2", "m", "t"});
  star.add_edge(0, 2, Rational(1));
  star.add_edge(1, 2, Rational(1));
  star.add_edge(2, 3, Rational(2));
  EXPECT_TRUE(is_tree(star));
  EXPECT_FALSE(is_tree(Graph({"a", "b"})));
}

TEST(IsTreeTest, EdgeSubsets) {
  const GameInstance y = y_instance();
  const std::vector<EdgeId> star{0, 1, 2};
  const std::vector<EdgeId> cycle{0, 2, 3};
  const std::vector<EdgeId> split{0, 4};
  EXPECT_TRUE(is_tree(y.graph(), star));
  EXPECT_FALSE(is_tree(y.graph(), cycle));
  EXPECT_FALSE(is_tree(y.graph(), split));
}

// Metric properties and insertion-order independence on random graphs.
TEST(ShortestPathProperty, MetricAndOrderIndependent) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const Graph g = random_graph(rng, 7, 6, 9, trial % 3 == 0);
    std::vector<std::vector<Rational>> d;
    for (VertexId v = 0; v < g.vertex_count(); ++v) d.push_back(distances_from(g, v));

    std::vector<EdgeId> order(g.edge_count());
    for (EdgeId e = 0; e < order.size(); ++e) order[e] = e;
    std::shuffle(order.begin(), order.end(), rng);
    Graph shuffled(std::vector<std::string>(g.names().begin(), g.names().end()));
    for (EdgeId e : order) shuffled.add_edge(g.edge(e).u, g.edge(e).v, g.edge(e).cost);

    for (VertexId a = 0; a < g.vertex_count(); ++a) {
      EXPECT_EQ(d[a][a], Rational(0));
      for (VertexId b = 0; b < g.vertex_count(); ++b) {
        EXPECT_EQ(d[a][b], d[b][a]);
        EXPECT_EQ(shortest_path(shuffled, a, b).distance, d[a][b]);
        const ShortestPath sp = shortest_path(g, a, b);
        EXPECT_EQ(g.cost_of(sp.path.edges), d[a][b]);
        EXPECT_TRUE(is_simple_path(g, sp.path));
        for (VertexId c = 0; c < g.vertex_count(); ++c) EXPECT_LE(d[a][c], d[a][b] + d[b][c]);
      }
    }
    EXPECT_EQ(d[0][g.vertex_count() - 1], testing::brute_force_distance(g, 0, g.vertex_count() - 1));
  }
}

}  // namespace
}  // namespace shapley
