#include "hardcore/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace hardcore {

void Graph::add_edge(std::size_t u, std::size_t v) {
  if (u >= adj_.size() || v >= adj_.size()) throw std::out_of_range("Graph::add_edge: vertex out of range");
  if (u == v) throw std::invalid_argument("Graph::add_edge: loops not allowed");
  if (adjacent(u, v)) return;
  adj_[u].push_back(v);
  adj_[v].push_back(u);
}

bool Graph::adjacent(std::size_t u, std::size_t v) const {
  return std::find(adj_[u].begin(), adj_[u].end(), v) != adj_[u].end();
}

std::size_t Graph::max_degree() const {
  std::size_t m = 0;
  for (const auto& a : adj_) m = std::max(m, a.size());
  return m;
}

Graph Graph::from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

Graph Graph::from_torus(const Torus& t) {
  Graph g(t.vertex_count());
  for (Vertex v = 0; v < t.vertex_count(); ++v)
    for (auto w : t.neighbors(v))
      if (v < w) g.add_edge(v, w);
  return g;
}

Graph Graph::petersen() {
  Graph g(10);
  for (std::size_t i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(i + 5, (i + 2) % 5 + 5);
  }
  return g;
}

Graph Graph::branching_tree(int branching, int depth) {
  if (branching < 1 || depth < 0) throw std::invalid_argument("branching_tree: bad shape");
  std::size_t n = 1;
  std::size_t level = 1;
  for (int k = 0; k < depth; ++k) {
    level *= static_cast<std::size_t>(branching);
    n += level;
  }
  Graph g(n);
  std::size_t next = 1;
  for (std::size_t parent = 0; next < n; ++parent)
    for (int c = 0; c < branching && next < n; ++c) g.add_edge(parent, next++);
  return g;
}

Graph Graph::path(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph Graph::star(std::size_t leaves) {
  Graph g(leaves + 1);
  for (std::size_t i = 1; i <= leaves; ++i) g.add_edge(0, i);
  return g;
}

Bigraph Bigraph::make(std::size_t left, std::size_t right,
                      const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  Bigraph b;
  b.left = left;
  b.right = right;
  b.left_adj.assign(left, {});
  b.right_adj.assign(right, {});
  for (auto [x, y] : edges) {
    if (x >= left || y >= right) throw std::out_of_range("Bigraph::make: endpoint out of range");
    if (std::find(b.left_adj[x].begin(), b.left_adj[x].end(), y) != b.left_adj[x].end()) continue;
    b.left_adj[x].push_back(y);
    b.right_adj[y].push_back(x);
  }
  for (auto& a : b.left_adj) std::sort(a.begin(), a.end());
  for (auto& a : b.right_adj) std::sort(a.begin(), a.end());
  return b;
}

std::size_t Bigraph::edge_count() const {
  std::size_t e = 0;
  for (const auto& a : left_adj) e += a.size();
  return e;
}

}  // namespace hardcore
