#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hardcore/ensemble.hpp"

namespace hardcore {

// Outer is the boundary parity (the frozen class), inner the opposite one; v0 has inner parity.
struct Sides {
  Parity outer;
  Parity inner;
};

Sides sides_of(const Ensemble& e);

// v0 ∉ Z(I), Z(I) the component of Γ - (I ∩ inner) containing Δ.
bool in_J0(const Ensemble& e, const VertexSet& I, Vertex v0);

// Pair (G, A) with G on g_parity and A on the opposite parity.
struct GAPair {
  Parity g_parity = Parity::even;
  VertexSet G;
  VertexSet A;
  VertexSet W;   // G ∪ A
  VertexSet G0;  // internal boundary of W
  std::size_t g = 0;
  std::size_t a = 0;
  long t = 0;    // g - a

  static GAPair make(const Torus& torus, Parity g_parity, VertexSet G, VertexSet A);
  // G = N(A).
  static GAPair from_A(const Torus& torus, Parity g_parity, VertexSet A);

  Parity a_parity() const { return opposite(g_parity); }
  double delta() const { return g == 0 ? 0.0 : static_cast<double>(t) / static_cast<double>(g); }
  // (inner \ A, outer \ G) with the parities exchanged.
  GAPair dual(const Torus& torus) const;
  bool operator==(const GAPair& o) const { return g_parity == o.g_parity && A == o.A && G == o.G; }
};

// G = N(A) and A = {x of A's parity : N(x) ⊆ G}.
bool satisfies_GA3(const Torus& torus, Parity g_parity, const VertexSet& G, const VertexSet& A);

struct ContourTrace {
  Vertex v0 = 0;
  Sides sides{Parity::even, Parity::odd};
  VertexSet I, Z, Z0, W1, W2, C, W, G, A, G0, H, B, B0;
  std::size_t g = 0;
  std::size_t a = 0;
  long t = 0;

  double delta() const { return g == 0 ? 0.0 : static_cast<double>(t) / static_cast<double>(g); }
  GAPair pair() const;
};

// Throws std::invalid_argument unless in_J0(e, I, v0).
ContourTrace build_contour(const Ensemble& e, const VertexSet& I, Vertex v0);

struct ContourProperties {
  bool GA0 = false;
  bool GA1 = false;
  bool GA2 = false;
  bool GA3 = false;
  bool GA5 = false;
  bool GA6 = false;
  bool GA7 = false;
  bool G0_clustered = false;
  bool G0_clustered_in_W = false;
  bool G0_clustered_in_C = false;  // within Γ \ (W \ G0)
  bool nabla = false;              // |∇(W, Γ\W)| = |∇(G0, inner\A)| = tℓ
  bool delta_in_Z = false;         // every Δ vertex lies in Z, so the seed choice is immaterial

  bool all() const;
  nlohmann::json to_json() const;
};

ContourProperties check_contour(const Ensemble& e, const ContourTrace& tr);

nlohmann::json contour_record(const ContourTrace& tr, const ContourProperties& p);

// For every component T of Γ - (S \ ∂S), ∂T ⊆ ∂S.
bool internal_boundary_lemma_holds(const Torus& torus, const VertexSet& S);

struct GAEnumOptions {
  std::optional<Vertex> v0;       // require v0 ∈ A
  std::optional<std::size_t> g;   // require |G| = g
  std::optional<std::size_t> a;   // require |A| = a
  bool inside = true;             // require W ∩ Δ = ∅
  std::size_t budget = 24;        // max number of candidate A vertices
};

// Visits every (G, A) satisfying (GA3) with G on g_parity and the filters in opts, in ascending A order.
void for_each_GA_pair(const Torus& torus, Parity g_parity, const GAEnumOptions& opts,
                      const std::function<void(const GAPair&)>& visit);
std::vector<GAPair> enumerate_GA_pairs(const Torus& torus, Parity g_parity, const GAEnumOptions& opts);

struct ContourAuditReport {
  std::size_t audited = 0;
  std::size_t failures = 0;
  std::map<std::string, std::size_t> property_failures;
  std::vector<nlohmann::json> records;
  std::vector<VertexSet> failing;
  // Number of audited configurations mapping to each pair, keyed by hex of A.
  std::map<std::string, std::size_t> multiplicity;
};

ContourAuditReport contour_audit(const Ensemble& e, Vertex v0, const std::vector<VertexSet>& configs,
                                 Exec exec = Exec::parallel);

// All members of J0 in ascending mask order (exhaustive, at most 64 vertices).
std::vector<VertexSet> enumerate_J0(const Ensemble& e, Vertex v0, std::size_t budget = kDefaultEnumerationBudget,
                                    Exec exec = Exec::parallel);

}  // namespace hardcore
