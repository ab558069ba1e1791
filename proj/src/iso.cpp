#include "hardcore/iso.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hardcore {

BigInt sphere_count(int d, int q, int t) {
  if (q == 0) return t == 0 ? 1 : 0;
  if (t <= 0 || t > d || t > q) return 0;
  BigInt two_t;
  mpz_ui_pow_ui(two_t.get_mpz_t(), 2, static_cast<unsigned long>(t));
  return two_t * binomial(d, t) * binomial(q - 1, t - 1);
}

BigInt ball_count(int d, int r, int t) {
  if (t < 0 || t > d || t > r) return 0;
  BigInt two_t;
  mpz_ui_pow_ui(two_t.get_mpz_t(), 2, static_cast<unsigned long>(t));
  return two_t * binomial(d, t) * binomial(r, t);
}

namespace {

BigInt sphere_total(int d, int q) {
  BigInt s = 0;
  for (int t = 0; t <= std::min(q, d); ++t) s += sphere_count(d, q, t);
  return s;
}

}  // namespace

BallCounts ball_counts(int d, int r_max) {
  if (d < 1 || r_max < 0) throw std::invalid_argument("ball_counts: need d ≥ 1 and r_max ≥ 0");
  BallCounts bc;
  bc.d = d;
  bc.r_max = r_max;
  BigInt running = 0;
  for (int q = 0; q <= r_max; ++q) {
    std::vector<BigInt> row(static_cast<std::size_t>(d) + 1), brow(static_cast<std::size_t>(d) + 1);
    BigInt total = 0;
    for (int t = 0; t <= d; ++t) {
      row[static_cast<std::size_t>(t)] = sphere_count(d, q, t);
      brow[static_cast<std::size_t>(t)] = ball_count(d, q, t);
      total += row[static_cast<std::size_t>(t)];
    }
    running += total;
    bc.s.push_back(total);
    bc.b.push_back(running);
    bc.sqt.push_back(std::move(row));
    bc.brt.push_back(std::move(brow));
  }
  return bc;
}

Rational BallCounts::t_of(int q) const {
  const auto& row = sqt.at(static_cast<std::size_t>(q));
  BigInt weighted = 0;
  for (std::size_t t = 0; t < row.size(); ++t) weighted += static_cast<unsigned long>(t) * row[t];
  Rational r(weighted, s[static_cast<std::size_t>(q)]);
  r.canonicalize();
  return r;
}

Rational f_ratio(int q, int t, int d) {
  if (t < 1 || t >= std::min(q, d)) throw std::out_of_range("f_ratio: need 1 ≤ t < min(q, d)");
  Rational lhs(sphere_count(d, q, t + 1), sphere_count(d, q, t));
  lhs.canonicalize();
  Rational rhs(BigInt(2 * (d - t)) * (q - t), BigInt(t + 1) * t);
  rhs.canonicalize();
  if (lhs != rhs) throw std::logic_error("f_ratio: table and closed form disagree");
  return lhs;
}

BigInt bl_lower_bound(const BigInt& size, int d) {
  if (size < 1) throw std::invalid_argument("bl_lower_bound: size must be positive");
  int r = 0;
  BigInt b = 1;  // b(0)
  for (;;) {
    const BigInt next = sphere_total(d, r + 1);
    if (size < b + next) break;
    b += next;
    ++r;
  }
  const BigInt s1 = sphere_total(d, r + 1);
  const BigInt s2 = sphere_total(d, r + 2);
  Rational alpha(size - b, s1);
  alpha.canonicalize();
  return ceil((1 - alpha) * Rational(s1) + alpha * Rational(s2));
}

DeltaReport delta_lower_check(const Torus& torus, const GAPair& pair) {
  DeltaReport rep;
  rep.inside = !pair.W.intersects(torus.delta());
  if (!rep.inside) throw std::invalid_argument("delta_lower_check: W meets Δ");
  const long d = torus.dim();
  rep.g0 = pair.G0.size();
  const long g0 = static_cast<long>(rep.g0);
  rep.g0_le_tl = g0 <= pair.t * torus.degree();
  rep.g0_le_td = g0 <= pair.t * d;
  rep.small_boundary = rep.g0 <= pair.a;

  const VertexSet X = (pair.G - pair.G0) | pair.A;
  const VertexSet dX = torus.external_boundary(X);
  rep.boundary_identity = dX == pair.G0;
  rep.boundary_avoids_delta = !(X | dX).intersects(torus.delta());
  if (!X.empty()) {
    rep.bl_bound = bl_lower_bound(BigInt(static_cast<unsigned long>(X.size())), static_cast<int>(d));
    rep.bl_ok = BigInt(static_cast<unsigned long>(dX.size())) >= rep.bl_bound;
  }
  if (!rep.small_boundary) {
    // δ > 1/(c+1) ⇔ t (c+1) > g.
    rep.large_case_ok = pair.t * (torus.degree() + 1) > static_cast<long>(pair.g);
    rep.large_case_sharp = pair.t * (d + 1) > static_cast<long>(pair.g);
  }
  if (pair.g > 0)
    rep.ratio = pair.delta() * static_cast<double>(d) * std::pow(static_cast<double>(pair.g), 1.0 / static_cast<double>(d));
  return rep;
}

namespace {

struct Counter {
  const Graph& g;
  std::size_t n;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  BigInt count = 0;
  std::vector<char> in, banned, queued;

  void run(std::size_t size, std::vector<std::size_t> ext) {
    if (++nodes > budget) throw std::length_error("count_connected_induced: budget exceeded");
    if (size == n) {
      ++count;
      return;
    }
    if (ext.empty()) return;
    const std::size_t v = ext.back();
    ext.pop_back();
    // Include v.
    std::vector<std::size_t> grown = ext;
    std::vector<std::size_t> added;
    in[v] = 1;
    for (auto w : g.neighbors(v))
      if (!in[w] && !banned[w] && !queued[w]) {
        queued[w] = 1;
        grown.push_back(w);
        added.push_back(w);
      }
    run(size + 1, std::move(grown));
    for (auto w : added) queued[w] = 0;
    in[v] = 0;
    // Ban v.
    queued[v] = 0;
    banned[v] = 1;
    run(size, std::move(ext));
    banned[v] = 0;
    queued[v] = 1;
  }
};

}  // namespace

BigInt count_connected_induced(const Graph& g, std::size_t x0, std::size_t n, std::uint64_t budget) {
  if (x0 >= g.vertex_count()) throw std::out_of_range("count_connected_induced: x0 outside graph");
  if (n == 0) return 0;
  const std::vector<char> none(g.vertex_count(), 0);
  Counter c{g, n, budget, 0, 0, none, none, none};
  c.in[x0] = 1;
  std::vector<std::size_t> ext;
  for (auto w : g.neighbors(x0))
    if (!c.queued[w] && w != x0) {
      c.queued[w] = 1;
      ext.push_back(w);
    }
  c.run(1, std::move(ext));
  return c.count;
}

BigInt rooted_subtree_count(int D, int n) {
  if (D < 1 || n < 1) throw std::invalid_argument("rooted_subtree_count: need D ≥ 1 and n ≥ 1");
  const BigInt num = binomial(static_cast<long>(D) * n, n);
  const BigInt den = BigInt((D - 1) * n + 1);
  if (num % den != 0) throw std::logic_error("rooted_subtree_count: non-integral count");
  return num / den;
}

double tree_bound(int D, int n) { return std::pow(std::exp(1.0) * D, n); }

TqReport tq_bound_check(int d, int q) {
  if (d < 1 || q < 1) throw std::invalid_argument("tq_bound_check: need d, q ≥ 1");
  TqReport rep;
  rep.d = d;
  rep.q = q;
  rep.beta = Rational(q, d);
  rep.beta.canonicalize();
  if (rep.beta <= Rational(9, 10)) throw std::invalid_argument("tq_bound_check: requires q/d > 0.9");
  BigInt total = 0, weighted = 0;
  for (int t = 0; t <= std::min(q, d); ++t) {
    const BigInt s = sphere_count(d, q, t);
    total += s;
    weighted += BigInt(t) * s;
  }
  rep.tq = Rational(weighted, total);
  rep.tq.canonicalize();
  rep.bound = (1 - 1 / (20 * rep.beta)) * d;
  rep.tq_ok = rep.tq < rep.bound;
  rep.t0 = static_cast<int>(ceil((1 - 1 / (4 * rep.beta)) * d).get_si());
  for (int t = std::max(rep.t0, 1); t < std::min(q, d); ++t)
    if (!(f_ratio(q, t, d) < Rational(1, 2))) rep.f_ok = false;
  rep.large_beta = rep.beta > Rational(d, 15);
  return rep;
}

std::vector<Point> random_connected_set(int d, std::size_t size, std::mt19937_64& rng) {
  if (d < 1 || size == 0) throw std::invalid_argument("random_connected_set: need d ≥ 1 and size ≥ 1");
  std::vector<Point> pts{Point(static_cast<std::size_t>(d), 0)};
  std::set<Point> seen(pts.begin(), pts.end());
  while (pts.size() < size) {
    std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
    std::uniform_int_distribution<int> dir(0, 2 * d - 1);
    Point p = pts[pick(rng)];
    const int k = dir(rng);
    p[static_cast<std::size_t>(k / 2)] += (k % 2 == 0) ? 1 : -1;
    if (seen.insert(p).second) pts.push_back(std::move(p));
  }
  return pts;
}

namespace {

void ball_rec(int d, int left, Point& cur, std::vector<Point>& out) {
  if (static_cast<int>(cur.size()) == d) {
    out.push_back(cur);
    return;
  }
  for (int x = -left; x <= left; ++x) {
    cur.push_back(x);
    ball_rec(d, left - std::abs(x), cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Point> lattice_ball(int d, int r) {
  std::vector<Point> out;
  Point cur;
  ball_rec(d, r, cur, out);
  return out;
}

std::size_t lattice_boundary_size(const std::vector<Point>& set) {
  const std::set<Point> in(set.begin(), set.end());
  std::set<Point> boundary;
  for (const auto& p : set)
    for (std::size_t i = 0; i < p.size(); ++i)
      for (int s : {1, -1}) {
        Point q = p;
        q[i] += s;
        if (!in.count(q)) boundary.insert(std::move(q));
      }
  return boundary.size();
}

std::string sqt_csv(const BallCounts& bc) {
  std::ostringstream os;
  os << "d,q,t,s_qt\n";
  for (int q = 0; q <= bc.r_max; ++q)
    for (int t = 0; t <= std::min(q, bc.d); ++t)
      os << bc.d << ',' << q << ',' << t << ',' << bc.sqt[static_cast<std::size_t>(q)][static_cast<std::size_t>(t)]
         << '\n';
  return os.str();
}

std::string ball_csv(const BallCounts& bc) {
  std::ostringstream os;
  os << "d,r,b_r,s_r,bl_ratio\n" << std::setprecision(12);
  const double e = 1.0 - 1.0 / static_cast<double>(bc.d);
  for (int r = 0; r <= bc.r_max; ++r) {
    const auto i = static_cast<std::size_t>(r);
    const double ratio = bc.s[i].get_d() / std::pow(bc.b[i].get_d(), e);
    os << bc.d << ',' << r << ',' << bc.b[i] << ',' << bc.s[i] << ',' << ratio << '\n';
  }
  return os.str();
}

}  // namespace hardcore
