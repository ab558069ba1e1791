#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "hardcore/lattice.hpp"

namespace hardcore {

// Simple undirected graph with adjacency lists; used for fixtures and counting.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n) {}

  static Graph from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);
  static Graph from_torus(const Torus& t);
  static Graph petersen();
  // Complete D-ary rooted tree of the given depth; vertex 0 is the root.
  static Graph branching_tree(int branching, int depth);
  static Graph path(std::size_t n);
  static Graph star(std::size_t leaves);

  std::size_t vertex_count() const { return adj_.size(); }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_[v]; }
  std::size_t max_degree() const;
  bool adjacent(std::size_t u, std::size_t v) const;

  void add_edge(std::size_t u, std::size_t v);

 private:
  std::vector<std::vector<std::size_t>> adj_;
};

// Bigraph with parts X = {0..left-1} and Y = {0..right-1}.
struct Bigraph {
  std::size_t left = 0;
  std::size_t right = 0;
  std::vector<std::vector<std::size_t>> left_adj;
  std::vector<std::vector<std::size_t>> right_adj;

  static Bigraph make(std::size_t left, std::size_t right,
                      const std::vector<std::pair<std::size_t, std::size_t>>& edges);
  std::size_t edge_count() const;
};

}  // namespace hardcore
