#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hardcore/contour.hpp"
#include "hardcore/graph.hpp"
#include "hardcore/rational.hpp"

namespace hardcore {

// Sphere and ball sizes in Z^d under the l1 norm, stratified by support size.
struct BallCounts {
  int d = 0;
  int r_max = 0;
  std::vector<BigInt> s;                // s[q] = |S(q)|
  std::vector<BigInt> b;                // b[r] = |B(r)|
  std::vector<std::vector<BigInt>> sqt; // sqt[q][t] = |S(q,t)|, t = 0..d
  std::vector<std::vector<BigInt>> brt; // brt[r][t] = |B(r,t)|

  // Average support size over S(q).
  Rational t_of(int q) const;
};

BigInt sphere_count(int d, int q, int t);  // 2^t C(d,t) C(q-1,t-1); s(0,0) = 1
BigInt ball_count(int d, int r, int t);    // 2^t C(d,t) C(r,t)
BallCounts ball_counts(int d, int r_max);

// s(q,t+1)/s(q,t), checked against 2(d-t)(q-t)/((t+1)t). Throws std::out_of_range unless 1 ≤ t < min(q,d).
Rational f_ratio(int q, int t, int d);

// ⌈(1-α) s(r+1) + α s(r+2)⌉ where size = b(r) + α s(r+1), 0 ≤ α < 1.
BigInt bl_lower_bound(const BigInt& size, int d);

struct DeltaReport {
  bool inside = false;
  std::size_t g0 = 0;
  bool g0_le_tl = false;       // |G0| ≤ |∇(G0, inner \ A)| = tℓ
  bool g0_le_td = false;       // |G0| ≤ t d, the sharper form used in the lower-bound argument
  bool small_boundary = false; // |G0| ≤ |A|
  bool boundary_identity = true;  // ∂((G\G0) ∪ A) = G0
  bool boundary_avoids_delta = true;
  BigInt bl_bound = 0;
  bool bl_ok = true;           // |G0| ≥ bl_lower_bound(|(G\G0) ∪ A|)
  bool large_case_ok = true;     // |G0| > |A| ⇒ δ > 1/(ℓ+1), from |G0| ≤ tℓ
  bool large_case_sharp = true;  // |G0| > |A| ⇒ δ > 1/(d+1), from |G0| ≤ t d
  double ratio = 0.0;          // δ / (g^{-1/d} / d)
  bool ok() const { return inside && g0_le_tl && boundary_identity && boundary_avoids_delta && bl_ok && large_case_ok; }
};

// Throws std::invalid_argument unless W ∩ Δ = ∅.
DeltaReport delta_lower_check(const Torus& torus, const GAPair& pair);

// Connected induced subgraphs with n vertices containing x0, by include/ban branching.
BigInt count_connected_induced(const Graph& g, std::size_t x0, std::size_t n, std::uint64_t budget = 100000000);
// C(Dn, n) / ((D-1)n + 1).
BigInt rooted_subtree_count(int D, int n);
double tree_bound(int D, int n);  // (eD)^n

struct TqReport {
  int d = 0;
  int q = 0;
  Rational beta;
  Rational tq;
  Rational bound;   // (1 - 1/(20β)) d
  bool tq_ok = false;
  int t0 = 0;
  bool f_ok = true;  // f(q,t) < 1/2 for t0 ≤ t < min(q,d)
  bool large_beta = false;  // β > d/15
  bool ok() const { return tq_ok && f_ok; }
};

// Throws std::invalid_argument if q/d ≤ 0.9.
TqReport tq_bound_check(int d, int q);

// Lattice sets in Z^d as coordinate vectors.
using Point = std::vector<int>;

// Connected set grown from the origin by attaching random lattice neighbors.
std::vector<Point> random_connected_set(int d, std::size_t size, std::mt19937_64& rng);
std::vector<Point> lattice_ball(int d, int r);
std::size_t lattice_boundary_size(const std::vector<Point>& set);

std::string sqt_csv(const BallCounts& bc);
std::string ball_csv(const BallCounts& bc);  // d, r, b_r, s_r, bl_ratio = s(r)/b(r)^{1-1/d}

}  // namespace hardcore
