#include "shapley/graph.hpp"

#include <algorithm>
#include <numeric>

#include "shapley/error.hpp"

namespace shapley {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

void require_vertex(const Graph& g, VertexId v) {
  if (!g.contains(v)) throw InputError("unknown vertex id " + std::to_string(v));
}

// Depth-first search over tight edges in ascending (neighbor, edge) order.
// The first s-t simple path found is the lexicographically smallest one.
bool tight_dfs(const Graph& g, VertexId v, VertexId t, const EdgeWeights& weights,
               const std::vector<std::optional<PathWeight>>& dist, std::vector<char>& on_path,
               Path& path) {
  if (v == t) return true;
  for (const Incidence& inc : g.incident(v)) {
    const auto& w = weights[inc.edge];
    const auto& dw = dist[inc.neighbor];
    if (!w || !dw || on_path[inc.neighbor]) continue;
    if (*w + *dw != *dist[v]) continue;
    on_path[inc.neighbor] = 1;
    path.vertices.push_back(inc.neighbor);
    path.edges.push_back(inc.edge);
    if (tight_dfs(g, inc.neighbor, t, weights, dist, on_path, path)) return true;
    path.vertices.pop_back();
    path.edges.pop_back();
    on_path[inc.neighbor] = 0;
  }
  return false;
}

EdgeWeights cost_weights(const Graph& g) {
  EdgeWeights w;
  w.reserve(g.edge_count());
  for (const Edge& e : g.edges()) w.emplace_back(PathWeight{e.cost, 0});
  return w;
}

}  // namespace

Graph::Graph(std::vector<std::string> vertex_names) {
  for (auto& name : vertex_names) add_vertex(std::move(name));
}

VertexId Graph::add_vertex(std::string name) {
  if (index_.contains(name)) throw InputError("duplicate vertex '" + name + "'");
  const auto id = static_cast<VertexId>(names_.size());
  index_.emplace(name, id);
  names_.push_back(std::move(name));
  adjacency_.emplace_back();
  return id;
}

EdgeId Graph::add_edge(VertexId u, VertexId v, Rational cost) {
  require_vertex(*this, u);
  require_vertex(*this, v);
  if (u == v) throw InputError("self-loop at vertex '" + names_[u] + "'");
  if (cost.sign() < 0) throw InputError("negative edge cost " + cost.str());
  const auto id = static_cast<EdgeId>(edges_.size());
  edges_.push_back(Edge{u, v, std::move(cost)});
  for (auto [from, to] : {std::pair{u, v}, std::pair{v, u}}) {
    auto& list = adjacency_[from];
    const Incidence inc{to, id};
    list.insert(std::upper_bound(list.begin(), list.end(), inc), inc);
  }
  return id;
}

std::optional<VertexId> Graph::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VertexId Graph::vertex(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw InputError("unknown vertex '" + std::string(name) + "'");
}

bool Graph::connected() const {
  if (names_.empty()) return true;
  DisjointSets sets(names_.size());
  std::size_t components = names_.size();
  for (const Edge& e : edges_) components -= sets.unite(e.u, e.v) ? 1 : 0;
  return components == 1;
}

Rational Graph::cost_of(std::span<const EdgeId> edges) const {
  Rational total;
  for (EdgeId e : edges) total += edge(e).cost;
  return total;
}

Path path_from_edges(const Graph& g, VertexId start, std::span<const EdgeId> edges) {
  require_vertex(g, start);
  Path p = Path::trivial(start);
  for (EdgeId e : edges) {
    if (e >= g.edge_count()) throw InputError("unknown edge id " + std::to_string(e));
    const Edge& edge = g.edge(e);
    const VertexId at = p.vertices.back();
    if (edge.u != at && edge.v != at) {
      throw InputError("edge " + std::to_string(e) + " does not continue the path at '" + g.name(at) + "'");
    }
    p.vertices.push_back(edge.other(at));
    p.edges.push_back(e);
  }
  return p;
}

bool is_simple_path(const Graph& g, const Path& p) {
  if (p.vertices.size() != p.edges.size() + 1) return false;
  std::vector<char> seen(g.vertex_count(), 0);
  for (std::size_t k = 0; k < p.vertices.size(); ++k) {
    const VertexId v = p.vertices[k];
    if (!g.contains(v) || seen[v]) return false;
    seen[v] = 1;
    if (k == 0) continue;
    const EdgeId e = p.edges[k - 1];
    if (e >= g.edge_count()) return false;
    const Edge& edge = g.edge(e);
    const VertexId prev = p.vertices[k - 1];
    if (!((edge.u == prev && edge.v == v) || (edge.v == prev && edge.u == v))) return false;
  }
  return true;
}

std::vector<std::optional<PathWeight>> distances_to(const Graph& g, VertexId target,
                                                    const EdgeWeights& weights) {
  require_vertex(g, target);
  const std::size_t n = g.vertex_count();
  std::vector<std::optional<PathWeight>> dist(n);
  std::vector<char> done(n, 0);
  dist[target] = PathWeight{};
  // Dense Dijkstra: the graphs this library targets have tens of vertices.
  for (;;) {
    std::optional<VertexId> best;
    for (VertexId v = 0; v < n; ++v) {
      if (!done[v] && dist[v] && (!best || *dist[v] < *dist[*best])) best = v;
    }
    if (!best) break;
    done[*best] = 1;
    for (const Incidence& inc : g.incident(*best)) {
      const auto& w = weights[inc.edge];
      if (!w || done[inc.neighbor]) continue;
      PathWeight cand = *dist[*best] + *w;
      if (!dist[inc.neighbor] || cand < *dist[inc.neighbor]) dist[inc.neighbor] = std::move(cand);
    }
  }
  return dist;
}

Path min_weight_path(const Graph& g, VertexId s, VertexId t, const EdgeWeights& weights,
                     PathWeight* total) {
  require_vertex(g, s);
  const auto dist = distances_to(g, t, weights);
  if (!dist[s]) {
    throw ConnectivityError("no path between '" + g.name(s) + "' and '" + g.name(t) + "'");
  }
  Path path = Path::trivial(s);
  std::vector<char> on_path(g.vertex_count(), 0);
  on_path[s] = 1;
  if (!tight_dfs(g, s, t, weights, dist, on_path, path)) {
    throw InternalError("tight-edge search failed to reach the target");
  }
  if (total) *total = *dist[s];
  return path;
}

ShortestPath shortest_path(const Graph& g, VertexId u, VertexId v) {
  PathWeight total;
  Path p = min_weight_path(g, u, v, cost_weights(g), &total);
  return ShortestPath{std::move(total.primary), std::move(p)};
}

std::vector<Rational> distances_from(const Graph& g, VertexId source) {
  const auto dist = distances_to(g, source, cost_weights(g));
  std::vector<Rational> out;
  out.reserve(dist.size());
  for (VertexId v = 0; v < dist.size(); ++v) {
    if (!dist[v]) {
      throw ConnectivityError("vertex '" + g.name(v) + "' unreachable from '" + g.name(source) + "'");
    }
    out.push_back(dist[v]->primary);
  }
  return out;
}

bool is_tree(const Graph& g) {
  return g.vertex_count() > 0 && g.edge_count() + 1 == g.vertex_count() && g.connected();
}

bool is_tree(const Graph& g, std::span<const EdgeId> edges) {
  DisjointSets sets(g.vertex_count());
  std::vector<char> touched(g.vertex_count(), 0);
  std::size_t vertices = 0;
  for (EdgeId e : edges) {
    if (e >= g.edge_count()) return false;
    const Edge& edge = g.edge(e);
    for (VertexId x : {edge.u, edge.v}) {
      if (!touched[x]) {
        touched[x] = 1;
        ++vertices;
      }
    }
    if (!sets.unite(edge.u, edge.v)) return false;
  }
  return edges.empty() || vertices == edges.size() + 1;
}

std::vector<EdgeId> spanning_forest(const Graph& g, std::span<const EdgeId> edges) {
  std::vector<EdgeId> order(edges.begin(), edges.end());
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());
  std::stable_sort(order.begin(), order.end(),
                   [&](EdgeId a, EdgeId b) { return g.edge(a).cost < g.edge(b).cost; });
  DisjointSets sets(g.vertex_count());
  std::vector<EdgeId> forest;
  for (EdgeId e : order) {
    if (sets.unite(g.edge(e).u, g.edge(e).v)) forest.push_back(e);
  }
  std::sort(forest.begin(), forest.end());
  return forest;
}

}  // namespace shapley
