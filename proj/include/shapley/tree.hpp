#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "shapley/graph.hpp"

namespace shapley {

/// A rooted tree formed by a subset of a host graph's edges.
///
/// The tree borrows its host graph: the Graph must outlive it. Vertex and
/// edge ids are the host's. Children are visited in ascending vertex order,
/// which fixes the Euler tour and everything derived from it.
class Tree {
 public:
  /// Throws InputError if `edges` is not a tree containing `root`, or has
  /// parallel edges.
  static Tree build(const Graph& host, std::span<const EdgeId> edges, VertexId root);

  const Graph& host() const { return *host_; }
  VertexId root() const { return root_; }
  std::span<const EdgeId> edges() const { return edges_; }
  std::span<const VertexId> vertices() const { return vertices_; }
  bool contains(VertexId v) const { return v < depth_.size() && depth_[v] >= 0; }
  Rational cost() const { return host_->cost_of(edges_); }

  /// Edge from v to its parent; v must not be the root.
  EdgeId parent_edge(VertexId v) const { return parent_edge_.at(v); }
  VertexId parent(VertexId v) const { return parent_.at(v); }
  int depth(VertexId v) const { return depth_.at(v); }
  std::span<const VertexId> children(VertexId v) const { return children_.at(v); }

  /// Vertex sequence of the closed walk that traverses every edge twice,
  /// starting and ending at the root.
  std::span<const VertexId> euler_tour() const { return tour_; }
  std::size_t first_visit(VertexId v) const;

  /// Edges from u up to its ancestor `ancestor`, in walking order.
  std::vector<EdgeId> path_to_ancestor(VertexId u, VertexId ancestor) const;

  Tree rerooted(VertexId new_root) const { return build(*host_, edges_, new_root); }

 private:
  Tree() = default;

  const Graph* host_ = nullptr;
  VertexId root_ = 0;
  std::vector<EdgeId> edges_;
  std::vector<VertexId> vertices_;
  std::vector<int> depth_;  // -1 outside the tree
  std::vector<VertexId> parent_;
  std::vector<EdgeId> parent_edge_;
  std::vector<std::vector<VertexId>> children_;
  std::vector<VertexId> tour_;
  std::vector<std::size_t> first_;
  // sparse_[k][i]: position of the minimum-depth vertex in tour_[i, i + 2^k).
  std::vector<std::vector<std::size_t>> sparse_;

  friend VertexId lca(const Tree& t, VertexId u, VertexId v);
};

/// The unique simple u-v path in t, in walking order from u.
std::vector<EdgeId> tree_path(const Tree& t, VertexId u, VertexId v);

/// Deepest common ancestor of u and v with respect to t.root().
VertexId lca(const Tree& t, VertexId u, VertexId v);

/// Orders `marked` by first appearance on the Euler tour of t rooted at
/// `root`. Returns positions into `marked` (ties between repeated vertices
/// keep input order). `marked[0]` must be `root`.
std::vector<std::size_t> euler_first_appearance_order(const Tree& t, VertexId root,
                                                      std::span<const VertexId> marked);

}  // namespace shapley
