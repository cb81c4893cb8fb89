#include "fixtures.hpp"

#include <algorithm>
#include <stdexcept>

namespace shapley::testing {

GameInstance y_instance() {
  Graph g({"s1", "s2", "m", "t"});
  g.add_edge(0, 2, Rational(1));
  g.add_edge(1, 2, Rational(1));
  g.add_edge(2, 3, Rational(2));
  g.add_edge(0, 3, Rational(2));
  g.add_edge(1, 3, Rational(2));
  return GameInstance(std::move(g), {{0, 3}, {1, 3}}, VertexId{3});
}

GameInstance single_edge_instance(Rational cost) {
  Graph g({"s", "t"});
  g.add_edge(0, 1, std::move(cost));
  return GameInstance(std::move(g), {{0, 1}}, VertexId{1});
}

Path named_path(const Graph& g, std::initializer_list<const char*> names) {
  std::vector<VertexId> vs;
  for (const char* n : names) vs.push_back(g.vertex(n));
  Path p = Path::trivial(vs.front());
  for (std::size_t k = 1; k < vs.size(); ++k) {
    bool found = false;
    for (const Incidence& inc : g.incident(vs[k - 1])) {
      if (inc.neighbor == vs[k]) {
        p.vertices.push_back(vs[k]);
        p.edges.push_back(inc.edge);
        found = true;
        break;
      }
    }
    if (!found) throw std::invalid_argument("no edge between consecutive path vertices");
  }
  return p;
}

StrategyProfile y_star_profile(const GameInstance& y) {
  return {{named_path(y.graph(), {"s1", "m", "t"}), named_path(y.graph(), {"s2", "m", "t"})}};
}

StrategyProfile y_direct_profile(const GameInstance& y) {
  return {{named_path(y.graph(), {"s1", "t"}), named_path(y.graph(), {"s2", "t"})}};
}

StrategyProfile y_mixed_profile(const GameInstance& y) {
  return {{named_path(y.graph(), {"s1", "t"}), named_path(y.graph(), {"s2", "m", "t"})}};
}

Graph random_graph(std::mt19937_64& rng, std::size_t vertices, std::size_t extra, std::int64_t max_cost,
                   bool allow_zero) {
  std::uniform_int_distribution<std::int64_t> cost(allow_zero ? 0 : 1, max_cost);
  Graph g;
  for (std::size_t i = 0; i < vertices; ++i) g.add_vertex("v" + std::to_string(i));
  for (std::size_t i = 1; i < vertices; ++i) {
    std::uniform_int_distribution<std::size_t> parent(0, i - 1);
    g.add_edge(static_cast<VertexId>(parent(rng)), static_cast<VertexId>(i), Rational(cost(rng)));
  }
  std::uniform_int_distribution<std::size_t> pick(0, vertices - 1);
  for (std::size_t k = 0; k < extra && vertices > 1; ++k) {
    const auto a = static_cast<VertexId>(pick(rng));
    auto b = static_cast<VertexId>(pick(rng));
    while (b == a) b = static_cast<VertexId>(pick(rng));
    g.add_edge(a, b, Rational(cost(rng)));
  }
  return g;
}

GameInstance random_single_sink(std::mt19937_64& rng, std::size_t vertices, std::size_t players, std::size_t extra,
                                std::int64_t max_cost) {
  Graph g = random_graph(rng, vertices, extra, max_cost);
  std::uniform_int_distribution<std::size_t> pick(0, vertices - 1);
  std::vector<Player> ps;
  for (std::size_t i = 0; i < players; ++i) ps.push_back({static_cast<VertexId>(pick(rng)), 0});
  return GameInstance(std::move(g), std::move(ps), VertexId{0});
}

GameInstance random_multi_sink(std::mt19937_64& rng, std::size_t vertices, std::size_t players, std::size_t extra,
                               std::int64_t max_cost) {
  Graph g = random_graph(rng, vertices, extra, max_cost);
  std::uniform_int_distribution<std::size_t> pick(0, vertices - 1);
  std::vector<Player> ps;
  for (std::size_t i = 0; i < players; ++i) {
    ps.push_back({static_cast<VertexId>(pick(rng)), static_cast<VertexId>(pick(rng))});
  }
  return GameInstance(std::move(g), std::move(ps));
}

namespace {

bool random_dfs(std::mt19937_64& rng, const Graph& g, VertexId v, VertexId t, std::vector<char>& seen, Path& p) {
  if (v == t) return true;
  std::vector<Incidence> next(g.incident(v).begin(), g.incident(v).end());
  std::shuffle(next.begin(), next.end(), rng);
  for (const Incidence& inc : next) {
    if (seen[inc.neighbor]) continue;
    seen[inc.neighbor] = 1;
    p.vertices.push_back(inc.neighbor);
    p.edges.push_back(inc.edge);
    if (random_dfs(rng, g, inc.neighbor, t, seen, p)) return true;
    p.vertices.pop_back();
    p.edges.pop_back();
  }
  return false;
}

}  // namespace

Path random_simple_path(std::mt19937_64& rng, const Graph& g, VertexId s, VertexId t) {
  std::vector<char> seen(g.vertex_count(), 0);
  seen[s] = 1;
  Path p = Path::trivial(s);
  if (!random_dfs(rng, g, s, t, seen, p)) throw std::runtime_error("no path");
  return p;
}

StrategyProfile random_profile(std::mt19937_64& rng, const GameInstance& inst) {
  StrategyProfile prof;
  for (const Player& p : inst.players()) prof.paths.push_back(random_simple_path(rng, inst.graph(), p.source, p.sink));
  return prof;
}

}  // namespace shapley::testing
