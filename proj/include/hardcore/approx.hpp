#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hardcore/contour.hpp"
#include "hardcore/graph.hpp"

namespace hardcore {

// |N(w) ∩ N(L)| ≥ |L| for every edge v~w and every L ⊆ N(v). Exhaustive over subsets.
bool check_quad(const Graph& g);
bool check_quad(const Torus& torus);

// (F, S) with F on the outer (G) parity and S on the inner (A) parity, plus derived sets.
struct ApproxPair {
  Parity f_parity = Parity::even;
  VertexSet F, S;
  VertexSet E, T, S0, E0, Q;

  static ApproxPair make(const Torus& torus, Parity f_parity, VertexSet F, VertexSet S);
  bool operator==(const ApproxPair& o) const { return F == o.F && S == o.S; }
};

// F ⊆ G and A ⊆ S.
bool app11_holds(const ApproxPair& fs, const GAPair& pair);
// v ∈ S ⇒ d_F(v) > ℓ - ψ and v ∈ E ⇒ d_T(v) > ℓ - ψ.
bool app22_holds(const Torus& torus, const ApproxPair& fs, double psi);

struct BoundarySplit {
  VertexSet G0p, G0pp, B0p, B0pp;
  bool gobo = false;        // no edges between G0'' and B0''
  bool sep = false;         // G0' ∪ B0' separates W and Γ \ W
  bool sep_v0_delta = true; // the v0-component avoiding G0' ∪ B0' misses Δ (when v0 given)
};

BoundarySplit boundary_split(const Torus& torus, const GAPair& pair, std::optional<Vertex> v0 = std::nullopt);

// Greedy cover of the left part X by right vertices; most uncovered neighbors first, ties by index.
// Throws std::invalid_argument if some x has degree < a or some y has degree > b.
std::vector<std::size_t> lovasz_stein_cover(const Bigraph& g, std::size_t a, std::size_t b);
double lovasz_stein_bound(std::size_t right_size, std::size_t a, std::size_t b);

// round-half-up of sqrt(ℓ ln ℓ).
int cover_threshold(int degree);

// One side of the cover construction, for pair (G, A).
struct SideCover {
  int r = 0;
  VertexSet Q, K, P, P1, P2, Q1, Q2, R, X, T;  // P1 = P', P2 = P'', X = G0' \ Q''
  VertexSet G0p;
  VertexSet S;                 // P'' ∪ T
  std::size_t fallback = 0;    // X vertices with no R neighbor, covered by their smallest neighbor
  bool q_is_all = false;       // Q = G0, so K is empty
};

SideCover side_cover(const Torus& torus, const GAPair& pair);

struct UReport {
  SideCover primal;
  SideCover dual;
  VertexSet U;
  bool U1 = false;       // N(U) ⊇ G0' ∪ B0'
  bool U4 = false;       // U is 6-clustered
  bool in_NG0B0 = false; // U ⊆ N(G0' ∪ B0')
  double U2_ratio = 0.0; // |U| / (t sqrt(ln ℓ / ℓ))
  std::vector<std::string> degeneracies;
};

UReport build_U(const Torus& torus, const GAPair& pair);

struct FirstApprox {
  ApproxPair fs;
  VertexSet L, P, Qsmall;
  bool app11 = false;
  std::size_t S_minus_A = 0;
  std::size_t G_minus_F = 0;
  double app12_ratio = 0.0;  // max(|S\A|, |G\F|) / (t sqrt(d ln d))
};

// Throws std::domain_error if N(U) does not separate W and Γ \ W.
FirstApprox first_approximation(const Torus& torus, const VertexSet& U, const GAPair& pair);

struct RefineTrace {
  ApproxPair after_stage1;
  ApproxPair out;
  std::vector<Vertex> chosen_1A, chosen_1B, chosen_2A, chosen_2B;
  bool stage1_bounds = false;  // |G\F| < 2t and |S\A| < 2t after Stage 1
  bool loop_variant = true;    // each (A.1) step removes ≥ threshold from S and keeps A ⊆ S
  bool app11 = false;
  bool app22 = false;
};

// Throws std::invalid_argument unless F* ⊆ G and A ⊆ S*.
RefineTrace stage_refine(const Torus& torus, const ApproxPair& fs_star, const GAPair& pair, double xi, double psi);

struct PiParams {
  std::optional<double> psi;  // default sqrt(d)
};

struct PiTrace {
  BoundarySplit split;
  UReport u;
  FirstApprox first;
  RefineTrace refine;
  const ApproxPair& out() const { return refine.out; }
};

PiTrace pi(const Torus& torus, const GAPair& pair, const PiParams& params = {});

// Cover K ∪ L ∪ M of a bigraph (left P, right R) relative to U ⊆ R; masks over part indices.
struct LegalCover {
  std::uint64_t K = 0;
  std::uint64_t L = 0;
  std::uint64_t M = 0;
  bool property_a = false;
  bool property_b = false;
  std::size_t legal_count = 0;
  std::size_t size() const;  // |K| + |L|
};

bool is_cover(const Bigraph& g, std::uint64_t left, std::uint64_t right);
bool is_minimal_cover(const Bigraph& g, std::uint64_t left, std::uint64_t right);
std::uint64_t left_neighbors(const Bigraph& g, std::uint64_t right);
std::uint64_t right_neighbors(const Bigraph& g, std::uint64_t left);

inline constexpr std::size_t kLegalCoverBudget = 20;

// Minimizes |K ∪ L| over legal covers; ties by K mask then L mask. Throws std::length_error if a
// part exceeds `budget`.
LegalCover legal_cover_search(const Bigraph& g, std::uint64_t U, std::size_t budget = kLegalCoverBudget);

struct CoverStructure {
  VertexSet K, L, M, U;
  bool is_cover = false;
  bool minimal = false;
  bool knq = false;
  bool cross_checked = false;  // legal_cover_search was run on Γ_Q
  bool lk = true;              // |L| ≥ |K'| + |L0 \ L'| and |K| ≥ |L'| + |K0 \ K'|
  bool know_k = true;          // K = (K0 \ K') ∪ N(L')
  bool ok() const { return is_cover && minimal && knq && lk && know_k; }
};

CoverStructure cover_structure(const Torus& torus, const GAPair& pair, const ApproxPair& fs, const VertexSet& J,
                               Direction j, std::size_t budget = kLegalCoverBudget);

struct ApproxAuditReport {
  std::size_t audited = 0;
  std::size_t failures = 0;
  std::map<std::string, std::size_t> property_failures;
  std::map<std::string, std::size_t> degeneracies;
  std::size_t distinct_outputs = 0;
  double max_U2_ratio = 0.0;
  double max_app12_ratio = 0.0;
  std::vector<nlohmann::json> records;
  std::vector<GAPair> failing;
};

ApproxAuditReport approx_audit(const Torus& torus, const std::vector<GAPair>& pairs, const PiParams& params = {},
                               std::optional<Vertex> v0 = std::nullopt, Exec exec = Exec::parallel);

}  // namespace hardcore
