#include "shapley/tree.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "shapley/error.hpp"

namespace shapley {
namespace {

void require_in_tree(const Tree& t, VertexId v) {
  if (!t.contains(v)) {
    throw InputError("vertex " + (t.host().contains(v) ? "'" + t.host().name(v) + "'" : std::to_string(v)) +
                     " is not in the tree");
  }
}

}  // namespace

Tree Tree::build(const Graph& host, std::span<const EdgeId> edges, VertexId root) {
  if (!host.contains(root)) throw InputError("tree root is not a graph vertex");
  const std::size_t n = host.vertex_count();
  Tree t;
  t.host_ = &host;
  t.root_ = root;
  t.edges_.assign(edges.begin(), edges.end());
  std::sort(t.edges_.begin(), t.edges_.end());
  if (std::adjacent_find(t.edges_.begin(), t.edges_.end()) != t.edges_.end()) {
    throw InputError("tree edge list repeats an edge");
  }

  std::vector<std::vector<Incidence>> adj(n);
  for (EdgeId e : t.edges_) {
    if (e >= host.edge_count()) throw InputError("unknown edge id " + std::to_string(e));
    const Edge& edge = host.edge(e);
    adj[edge.u].push_back({edge.v, e});
    adj[edge.v].push_back({edge.u, e});
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());

  t.depth_.assign(n, -1);
  t.parent_.assign(n, root);
  t.parent_edge_.assign(n, 0);
  t.children_.assign(n, {});
  t.first_.assign(n, 0);

  // Iterative DFS producing the Euler tour.
  struct Frame {
    VertexId v;
    std::size_t next;
  };
  std::vector<Frame> stack{{root, 0}};
  t.depth_[root] = 0;
  t.vertices_.push_back(root);
  t.tour_.push_back(root);
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next == adj[f.v].size()) {
      stack.pop_back();
      if (!stack.empty()) t.tour_.push_back(stack.back().v);
      continue;
    }
    const Incidence inc = adj[f.v][f.next++];
    if (f.v != root && inc.edge == t.parent_edge_[f.v]) continue;
    if (t.depth_[inc.neighbor] >= 0) throw InputError("edge set contains a cycle");
    t.depth_[inc.neighbor] = t.depth_[f.v] + 1;
    t.parent_[inc.neighbor] = f.v;
    t.parent_edge_[inc.neighbor] = inc.edge;
    t.children_[f.v].push_back(inc.neighbor);
    t.first_[inc.neighbor] = t.tour_.size();
    t.vertices_.push_back(inc.neighbor);
    t.tour_.push_back(inc.neighbor);
    stack.push_back({inc.neighbor, 0});
  }
  if (t.vertices_.size() != t.edges_.size() + 1) {
    throw InputError("edge set is not connected to the root");
  }
  std::sort(t.vertices_.begin(), t.vertices_.end());

  const std::size_t m = t.tour_.size();
  t.sparse_.push_back(std::vector<std::size_t>(m));
  for (std::size_t i = 0; i < m; ++i) t.sparse_[0][i] = i;
  for (std::size_t k = 1; (std::size_t{1} << k) <= m; ++k) {
    const std::size_t half = std::size_t{1} << (k - 1);
    std::vector<std::size_t> level(m - (std::size_t{1} << k) + 1);
    for (std::size_t i = 0; i < level.size(); ++i) {
      const std::size_t a = t.sparse_[k - 1][i];
      const std::size_t b = t.sparse_[k - 1][i + half];
      level[i] = t.depth_[t.tour_[b]] < t.depth_[t.tour_[a]] ? b : a;
    }
    t.sparse_.push_back(std::move(level));
  }
  return t;
}

std::size_t Tree::first_visit(VertexId v) const {
  require_in_tree(*this, v);
  return first_[v];
}

std::vector<EdgeId> Tree::path_to_ancestor(VertexId u, VertexId ancestor) const {
  std::vector<EdgeId> out;
  while (u != ancestor) {
    if (u == root_) throw InputError("vertex is not an ancestor");
    out.push_back(parent_edge_[u]);
    u = parent_[u];
  }
  return out;
}

VertexId lca(const Tree& t, VertexId u, VertexId v) {
  require_in_tree(t, u);
  require_in_tree(t, v);
  std::size_t lo = t.first_[u];
  std::size_t hi = t.first_[v];
  if (lo > hi) std::swap(lo, hi);
  const std::size_t len = hi - lo + 1;
  const std::size_t k = std::bit_width(len) - 1;
  const std::size_t a = t.sparse_[k][lo];
  const std::size_t b = t.sparse_[k][hi + 1 - (std::size_t{1} << k)];
  return t.depth_[t.tour_[b]] < t.depth_[t.tour_[a]] ? t.tour_[b] : t.tour_[a];
}

std::vector<EdgeId> tree_path(const Tree& t, VertexId u, VertexId v) {
  const VertexId w = lca(t, u, v);
  std::vector<EdgeId> out = t.path_to_ancestor(u, w);
  std::vector<EdgeId> down = t.path_to_ancestor(v, w);
  out.insert(out.end(), down.rbegin(), down.rend());
  return out;
}

std::vector<std::size_t> euler_first_appearance_order(const Tree& t, VertexId root,
                                                      std::span<const VertexId> marked) {
  if (marked.empty() || marked.front() != root) {
    throw InputError("the first marked vertex must be the tour root");
  }
  if (root != t.root()) return euler_first_appearance_order(t.rerooted(root), root, marked);
  for (VertexId v : marked) require_in_tree(t, v);
  std::vector<std::size_t> order(marked.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return t.first_visit(marked[a]) < t.first_visit(marked[b]);
  });
  return order;
}

}  // namespace shapley
