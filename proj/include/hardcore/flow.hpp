#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hardcore/approx.hpp"
#include "hardcore/contour.hpp"
#include "hardcore/rational.hpp"

namespace hardcore {

struct ShiftData {
  Direction j{1};
  VertexSet G0j;      // G0 ∩ σ_j(inner \ A)
  VertexSet outside;  // I \ W
  VertexSet shifted;  // σ_j(I ∩ W)
  VertexSet base;     // σ_j*(I)
  bool disjoint = false;
  bool independent = false;
  std::size_t phi_size_log2() const { return G0j.size(); }
};

VertexSet g0_shift(const Torus& torus, const GAPair& pair, Direction j);
ShiftData shift_data(const Torus& torus, const GAPair& pair, const VertexSet& I, Direction j);
inline ShiftData shift_data(const Torus& torus, const ContourTrace& tr, Direction j) {
  return shift_data(torus, tr.pair(), tr.I, j);
}

inline constexpr std::size_t kPhiBudget = 24;

// Members of φ_j(I) in ascending order of the added subset of G0^j (as a mask over G0^j's sorted list).
template <class Visit>
void for_each_phi(const ShiftData& sd, Visit&& visit, std::size_t budget = kPhiBudget) {
  const auto extra = sd.G0j.to_vector();
  if (extra.size() > budget) throw std::length_error("phi: budget exceeded");
  const std::uint64_t limit = std::uint64_t{1} << extra.size();
  for (std::uint64_t m = 0; m < limit; ++m) {
    VertexSet J = sd.base;
    for (std::size_t i = 0; i < extra.size(); ++i)
      if ((m >> i) & 1U) J.insert(extra[i]);
    visit(J);
  }
}

std::vector<VertexSet> phi(const ShiftData& sd, std::size_t budget = kPhiBudget);
bool in_phi(const ShiftData& sd, const VertexSet& J);

// (J \ W) ∪ σ_j^{-1}(J ∩ (W \ G0^j)).
VertexSet recover(const Torus& torus, const VertexSet& J, Direction j, const GAPair& pair);

// Maximizes |G0^j|; ties go to the earlier direction in +1, -1, +2, -2, ... order.
Direction choose_direction_small(const Torus& torus, const GAPair& pair);

// |σ_j(S0) ∩ E0|.
std::size_t shifted_overlap(const Torus& torus, const ApproxPair& fs, Direction j);
bool admissible_large(const Torus& torus, const GAPair& pair, const ApproxPair& fs, Direction j, double psi);
// First direction satisfying |G0^j| > 0.8 t and |σ_j(S0) ∩ E0| < 10 |G0^j| ψ / ℓ; empty if none does.
std::optional<Direction> choose_direction_large(const Torus& torus, const GAPair& pair, const ApproxPair& fs,
                                                double psi);

struct FlowConstants {
  Rational lambda, alpha, beta;
  explicit FlowConstants(const Rational& lambda);
  // β = 1 - αλ, 0 < α, β < 1 and 1/(1+λ) < β (for λ > 0).
  bool valid() const;
};

struct LargeFlowSplit {
  VertexSet C, D;
  bool partition = false;  // C ∩ D = ∅ and C ∪ D = G0^j
};

LargeFlowSplit large_flow_split(const Torus& torus, const GAPair& pair, const ApproxPair& fs, Direction j);

// λ^{|J|-|I|} (1+λ)^{-|G0^j|} on φ_j(I), zero elsewhere.
Rational nu_small(const Rational& lambda, const ShiftData& sd, const VertexSet& J);
// (αλ)^{|C∩J|} β^{|C\J|} (λ/(1+λ))^{|D∩J|} (1+λ)^{-|D\J|} on φ_j(I), zero elsewhere.
Rational nu_large(const FlowConstants& k, const ShiftData& sd, const VertexSet& C, const VertexSet& D,
                  const VertexSet& J);

struct FlowPolicy {
  // I is small iff |G(I)| <= tau.
  std::size_t tau = std::numeric_limits<std::size_t>::max();
  std::optional<double> psi;

  static FlowPolicy small_only() { return {}; }
  static FlowPolicy forced_large() { return {0, std::nullopt}; }
  static FlowPolicy standard(int d) {
    return {static_cast<std::size_t>(d) * static_cast<std::size_t>(d) * static_cast<std::size_t>(d), std::nullopt};
  }
};

struct FlowChoice {
  Direction j{1};
  bool large = false;
  bool fallback = false;  // large I with no admissible direction; the small rule picks j
  std::optional<ApproxPair> approx;
  std::optional<LargeFlowSplit> split;
};

FlowChoice choose_flow(const Torus& torus, const GAPair& pair, const FlowPolicy& policy);

struct DefectReport {
  std::size_t J_count = 0;
  std::size_t J0_count = 0;
  std::size_t large_count = 0;
  std::size_t fallback_count = 0;
  std::size_t phi_members = 0;

  // Per-instance checks; each counter is the number of failing instances.
  std::map<std::string, std::size_t> failures;
  std::size_t cover_checks = 0;
  std::size_t cover_cross_checked = 0;

  Rational max_defect;
  std::uint64_t argmax_J = 0;
  Rational weight_J0;    // Σ_{I∈J0} w(I)
  Rational weight_J;     // Σ_{J∈J} w(J)
  Rational weighted_defect_sum;  // Σ_J w(J) defect(J)
  Rational prob_J0_flow;         // weight_J0 / weight_J
  Rational prob_J0_direct;
  bool identity = false;      // weight_J0 == weighted_defect_sum
  bool telescoping = false;   // weight_J0 <= max_defect * weight_J
  bool prob_agrees = false;   // prob_J0_flow == prob_J0_direct
  bool prob_below_max = false;
  bool row_sums = false;      // every Σ_J ν(I,J) == 1

  struct Row {
    std::uint64_t J = 0;
    Rational defect;
    std::uint64_t argmax_I = 0;
  };
  std::vector<Row> rows;  // J with nonzero defect, ascending

  std::vector<std::uint64_t> failing_I;
  bool ok() const;
};

// Exhaustive over J0 and J; requires at most 64 vertices within budget.
DefectReport defect_audit(const Ensemble& e, const Activity& lambda, Vertex v0, const FlowPolicy& policy,
                          std::size_t budget = kDefaultEnumerationBudget, Exec exec = Exec::parallel);

}  // namespace hardcore
