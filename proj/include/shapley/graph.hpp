#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "shapley/rational.hpp"

namespace shapley {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  Rational cost;

  VertexId other(VertexId x) const { return x == u ? v : u; }
  bool operator==(const Edge&) const = default;
};

struct Incidence {
  VertexId neighbor = 0;
  EdgeId edge = 0;
  auto operator<=>(const Incidence&) const = default;
};

/// Undirected multigraph with nonnegative exact costs.
///
/// Vertex ids are dense indices in insertion order; that order is the vertex
/// order used by every deterministic tie-break in the library. Parallel edges
/// are allowed, self-loops are not.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::vector<std::string> vertex_names);

  VertexId add_vertex(std::string name);
  /// Throws InputError on unknown endpoints, self-loops or negative cost.
  EdgeId add_edge(VertexId u, VertexId v, Rational cost);

  std::size_t vertex_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool contains(VertexId v) const { return v < names_.size(); }

  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  std::span<const Edge> edges() const { return edges_; }
  const std::string& name(VertexId v) const { return names_.at(v); }
  std::span<const std::string> names() const { return names_; }

  std::optional<VertexId> find(std::string_view name) const;
  /// Like find(), but throws InputError for unknown names.
  VertexId vertex(std::string_view name) const;

  /// Incident edges sorted by (neighbor, edge id).
  std::span<const Incidence> incident(VertexId v) const { return adjacency_.at(v); }

  bool connected() const;
  Rational cost_of(std::span<const EdgeId> edges) const;

  bool operator==(const Graph& other) const {
    return names_ == other.names_ && edges_ == other.edges_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexId> index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
};

/// A walk recorded both as its vertex sequence and its edge sequence.
/// `vertices.size() == edges.size() + 1`; a path from v to itself is {v}, {}.
struct Path {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;

  static Path trivial(VertexId v) { return Path{{v}, {}}; }

  VertexId source() const { return vertices.front(); }
  VertexId target() const { return vertices.back(); }
  bool empty() const { return edges.empty(); }

  auto operator<=>(const Path&) const = default;
};

/// Builds a path from a start vertex and edge sequence; throws InputError if
/// consecutive edges do not chain.
Path path_from_edges(const Graph& g, VertexId start, std::span<const EdgeId> edges);

/// True iff the path chains correctly in g and repeats no vertex.
bool is_simple_path(const Graph& g, const Path& p);

/// Two-level additive weight compared lexicographically.
struct PathWeight {
  Rational primary;
  Rational secondary;

  PathWeight& operator+=(const PathWeight& rhs) {
    primary += rhs.primary;
    secondary += rhs.secondary;
    return *this;
  }
  friend PathWeight operator+(PathWeight a, const PathWeight& b) { return a += b; }
  auto operator<=>(const PathWeight&) const = default;
  bool operator==(const PathWeight&) const = default;
};

/// Per-edge weights indexed by EdgeId; nullopt marks an unusable edge.
/// Every usable weight must be lexicographically >= {0, 0}.
using EdgeWeights = std::vector<std::optional<PathWeight>>;

/// Minimum-weight distances to `target` under `weights`; nullopt where unreachable.
std::vector<std::optional<PathWeight>> distances_to(const Graph& g, VertexId target,
                                                    const EdgeWeights& weights);

/// The lexicographically smallest vertex sequence among all minimum-weight
/// simple s-t paths (parallel edges broken by lower edge id).
/// Throws ConnectivityError if t is unreachable.
Path min_weight_path(const Graph& g, VertexId s, VertexId t, const EdgeWeights& weights,
                     PathWeight* total = nullptr);

struct ShortestPath {
  Rational distance;
  Path path;
};

/// Exact shortest u-v path under edge costs.
ShortestPath shortest_path(const Graph& g, VertexId u, VertexId v);

/// Exact distances from `source` to all vertices; throws ConnectivityError if
/// some vertex is unreachable.
std::vector<Rational> distances_from(const Graph& g, VertexId source);

/// True iff g is connected and acyclic.
bool is_tree(const Graph& g);

/// True iff the edge subset forms a tree spanning exactly the vertices it
/// touches (a single isolated vertex counts when `edges` is empty).
bool is_tree(const Graph& g, std::span<const EdgeId> edges);

/// Minimum spanning forest of the given edge subset (Kruskal, ties by edge id).
std::vector<EdgeId> spanning_forest(const Graph& g, std::span<const EdgeId> edges);

}  // namespace shapley
