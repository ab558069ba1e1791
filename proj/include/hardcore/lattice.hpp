#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardcore/vertex_set.hpp"

namespace hardcore {

enum class Parity { even, odd };

constexpr Parity opposite(Parity p) { return p == Parity::even ? Parity::odd : Parity::even; }
std::string to_string(Parity p);

// Signed axis j in {±1, …, ±d}.
class Direction {
 public:
  constexpr explicit Direction(int j) : j_(j) {
    if (j == 0) throw std::invalid_argument("Direction: j must be nonzero");
  }
  constexpr int value() const { return j_; }
  constexpr int axis() const { return (j_ > 0 ? j_ : -j_) - 1; }
  constexpr int sign() const { return j_ > 0 ? 1 : -1; }
  constexpr Direction reversed() const { return Direction(-j_); }
  // Position in the neighbor table: +e1, -e1, +e2, -e2, ...
  constexpr std::size_t slot() const { return static_cast<std::size_t>(2 * axis() + (j_ < 0 ? 1 : 0)); }
  constexpr bool operator==(const Direction&) const = default;

 private:
  int j_;
};

// Directions in tie-break order: +1, -1, +2, -2, ..., +d, -d.
std::vector<Direction> all_directions(int d);

inline constexpr std::size_t kDefaultVertexBudget = std::size_t{1} << 20;

// Discrete torus on {-(M-1), …, M}^d with opposite faces identified.
// Vertex index is row-major over coordinates offset to {0, …, 2M-1}, axis 0 most significant.
class Torus {
 public:
  static Torus make(int d, int M, std::size_t vertex_budget = kDefaultVertexBudget);

  int dim() const { return d_; }
  int half_side() const { return M_; }
  int side() const { return 2 * M_; }
  int degree() const { return 2 * d_; }
  std::size_t vertex_count() const { return n_; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {nbr_.data() + static_cast<std::size_t>(v) * static_cast<std::size_t>(2 * d_),
            static_cast<std::size_t>(2 * d_)};
  }
  Vertex shift(Vertex v, Direction j) const { return neighbors(v)[j.slot()]; }

  std::vector<int> coords(Vertex v) const;
  // Accepts any integer coordinates; reduces each modulo 2M into range.
  Vertex vertex_at(std::span<const int> coords) const;
  Vertex origin() const;
  Parity parity(Vertex v) const { return parity_[v] ? Parity::odd : Parity::even; }
  int distance(Vertex u, Vertex v) const;

  VertexSet empty_set() const { return VertexSet(n_); }
  VertexSet all() const { return VertexSet::full(n_); }
  VertexSet parity_class(Parity p) const { return p == Parity::even ? even_ : even_.complement(); }
  // Vertices with some coordinate equal to M.
  const VertexSet& delta() const { return delta_; }

  VertexSet neighbor_set(Vertex v) const;
  VertexSet neighborhood(const VertexSet& s) const;        // N(S)
  VertexSet external_boundary(const VertexSet& s) const;   // N(S) \ S
  VertexSet internal_boundary(const VertexSet& s) const;   // {v in S : N(v) not in S}
  std::size_t edge_boundary(const VertexSet& s, const VertexSet& t) const;  // |∇(S,T)|
  int degree_into(Vertex v, const VertexSet& s) const;     // d_S(v)
  VertexSet shift_set(const VertexSet& s, Direction j) const;
  bool is_independent(const VertexSet& s) const;

  // Component of Γ - excluded containing seed. Throws if seed is excluded.
  VertexSet component(const VertexSet& excluded, Vertex seed) const;
  // Connectivity of the subgraph induced by s; empty set counts as connected.
  bool is_connected(const VertexSet& s) const;

  // Pairs at torus distance <= c joined; connected iff clustered.
  bool is_c_clustered(const VertexSet& t, int c) const;
  // As above with distances measured inside the subgraph induced by region.
  bool is_c_clustered_within(const VertexSet& t, int c, const VertexSet& region) const;

  std::string format_vertex(Vertex v) const;

 private:
  Torus() = default;

  int d_ = 0;
  int M_ = 0;
  std::size_t n_ = 0;
  std::vector<Vertex> nbr_;
  std::vector<std::uint8_t> parity_;
  VertexSet even_;
  VertexSet delta_;
};

}  // namespace hardcore
