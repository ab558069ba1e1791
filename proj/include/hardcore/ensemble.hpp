#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hardcore/lattice.hpp"
#include "hardcore/rational.hpp"

namespace hardcore {

enum class Boundary { even, odd, free, custom };

std::string to_string(Boundary b);
Boundary parse_boundary(std::string_view text);

enum class Exec { serial, parallel };

inline constexpr std::size_t kDefaultEnumerationBudget = 36;

// Hard-core configurations on a torus conditioned to contain a frozen set.
class Ensemble {
 public:
  Ensemble(Torus torus, Boundary boundary);
  // Arbitrary independent frozen set; boundary() reports custom.
  static Ensemble with_frozen(Torus torus, VertexSet frozen);

  const Torus& torus() const { return torus_; }
  Boundary boundary() const { return boundary_; }
  const VertexSet& frozen() const { return frozen_; }
  // Parity of the frozen boundary class; empty for free and custom ensembles.
  std::optional<Parity> outer_parity() const;
  // Sites that are neither frozen nor adjacent to a frozen vertex.
  VertexSet free_sites() const { return free_; }

 private:
  Ensemble(Torus torus, Boundary boundary, VertexSet frozen);

  Torus torus_;
  Boundary boundary_;
  VertexSet frozen_;
  VertexSet free_;
};

// counts[k] = number of members of J with exactly k vertices.
using SizeCounts = std::vector<std::uint64_t>;

Rational evaluate(const SizeCounts& counts, const Rational& lambda);

// Every member of J as a mask, ascending. Requires vertex_count <= budget (and <= 64).
std::vector<std::uint64_t> enumerate_J(const Ensemble& e, std::size_t budget = kDefaultEnumerationBudget,
                                       Exec exec = Exec::parallel);
SizeCounts count_J(const Ensemble& e, std::size_t budget = kDefaultEnumerationBudget,
                   Exec exec = Exec::parallel);

Rational partition_function(const Ensemble& e, const Activity& lambda,
                            std::size_t budget = kDefaultEnumerationBudget);
Rational occupation_probability(const Ensemble& e, const Activity& lambda, Vertex v0,
                                std::size_t budget = kDefaultEnumerationBudget);
// μ(v0 ∉ Z(I)) where Z(I) is the component of Γ - (I ∩ inner) containing Δ; inner is
// the parity opposite the boundary. v0 must have inner parity.
Rational prob_J0(const Ensemble& e, const Activity& lambda, Vertex v0,
                 std::size_t budget = kDefaultEnumerationBudget, Exec exec = Exec::parallel);

struct IdentityReport {
  bool applicable = false;  // v0 unfrozen and not adjacent to the frozen set
  Rational conditional;     // μ(v0 ∈ I | N(v0) ∩ I = ∅)
  Rational expected;        // λ/(1+λ)
  bool holds = false;
};

IdentityReport conditional_occupation_identity_check(const Ensemble& e, const Activity& lambda, Vertex v0,
                                                     std::size_t budget = kDefaultEnumerationBudget);

// {d, M, boundary, lambda, v0, value_num, value_den}; numerator and denominator as decimal strings.
nlohmann::json exact_record(const Ensemble& e, const Activity& lambda, Vertex v0, const Rational& value,
                            std::string_view quantity);

}  // namespace hardcore
