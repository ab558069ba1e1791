#include "hardcore/approx.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>
#include <tuple>

namespace hardcore {

bool check_quad(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<char> mark(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    const auto& nv = g.neighbors(v);
    if (nv.size() > 20) throw std::length_error("check_quad: degree too large for exhaustive check");
    const std::uint64_t subsets = std::uint64_t{1} << nv.size();
    for (auto w : nv) {
      for (std::uint64_t m = 1; m < subsets; ++m) {
        std::fill(mark.begin(), mark.end(), 0);
        for (std::size_t i = 0; i < nv.size(); ++i)
          if ((m >> i) & 1U)
            for (auto x : g.neighbors(nv[i])) mark[x] = 1;
        std::size_t common = 0;
        for (auto x : g.neighbors(w)) common += mark[x] ? 1 : 0;
        if (common < static_cast<std::size_t>(std::popcount(m))) return false;
      }
    }
  }
  return true;
}

bool check_quad(const Torus& torus) { return check_quad(Graph::from_torus(torus)); }

ApproxPair ApproxPair::make(const Torus& torus, Parity f_parity, VertexSet F, VertexSet S) {
  ApproxPair p;
  p.f_parity = f_parity;
  p.F = std::move(F);
  p.S = std::move(S);
  p.E = torus.parity_class(f_parity) - p.F;
  p.T = torus.parity_class(opposite(f_parity)) - p.S;
  p.S0 = p.S & torus.neighborhood(p.E);
  p.E0 = p.E & torus.neighborhood(p.S);
  p.Q = p.S0 | p.E0;
  return p;
}

bool app11_holds(const ApproxPair& fs, const GAPair& pair) {
  return fs.F.subset_of(pair.G) && pair.A.subset_of(fs.S);
}

bool app22_holds(const Torus& torus, const ApproxPair& fs, double psi) {
  const double bar = static_cast<double>(torus.degree()) - psi;
  bool ok = true;
  fs.S.for_each([&](Vertex v) {
    if (!(torus.degree_into(v, fs.F) > bar)) ok = false;
  });
  fs.E.for_each([&](Vertex v) {
    if (!(torus.degree_into(v, fs.T) > bar)) ok = false;
  });
  return ok;
}

BoundarySplit boundary_split(const Torus& torus, const GAPair& pair, std::optional<Vertex> v0) {
  const int l = torus.degree();
  const VertexSet H = torus.parity_class(pair.g_parity) - pair.G;
  const VertexSet B = torus.parity_class(pair.a_parity()) - pair.A;
  const VertexSet B0 = B & torus.neighborhood(pair.G);
  BoundarySplit s;
  s.G0p = torus.empty_set();
  s.B0p = torus.empty_set();
  pair.G.for_each([&](Vertex v) {
    if (2 * torus.degree_into(v, pair.A) <= l) s.G0p.insert(v);
  });
  B.for_each([&](Vertex v) {
    if (2 * torus.degree_into(v, H) <= l) s.B0p.insert(v);
  });
  s.G0pp = pair.G0 - s.G0p;
  s.B0pp = B0 - s.B0p;
  s.gobo = torus.edge_boundary(s.G0pp, s.B0pp) == 0;

  // Everything reachable from W without touching the separator must stay inside W.
  const VertexSet X = s.G0p | s.B0p;
  VertexSet reach = torus.empty_set();
  (pair.W - X).for_each([&](Vertex v) {
    if (!reach.contains(v)) reach |= torus.component(X, v);
  });
  s.sep = reach.subset_of(pair.W);
  if (v0 && !X.contains(*v0)) s.sep_v0_delta = !torus.component(X, *v0).intersects(torus.delta());
  return s;
}

std::vector<std::size_t> lovasz_stein_cover(const Bigraph& g, std::size_t a, std::size_t b) {
  for (std::size_t x = 0; x < g.left; ++x)
    if (g.left_adj[x].size() < a) throw std::invalid_argument("lovasz_stein_cover: left degree below a");
  for (std::size_t y = 0; y < g.right; ++y)
    if (g.right_adj[y].size() > b) throw std::invalid_argument("lovasz_stein_cover: right degree above b");
  std::vector<char> covered(g.left, 0);
  std::vector<char> used(g.right, 0);
  std::size_t remaining = g.left;
  std::vector<std::size_t> out;
  while (remaining > 0) {
    std::size_t best = g.right;
    std::size_t best_gain = 0;
    for (std::size_t y = 0; y < g.right; ++y) {
      if (used[y]) continue;
      std::size_t gain = 0;
      for (auto x : g.right_adj[y]) gain += covered[x] ? 0 : 1;
      if (gain > best_gain) {
        best_gain = gain;
        best = y;
      }
    }
    if (best == g.right) throw std::invalid_argument("lovasz_stein_cover: some left vertex has no neighbor");
    used[best] = 1;
    out.push_back(best);
    for (auto x : g.right_adj[best])
      if (!covered[x]) {
        covered[x] = 1;
        --remaining;
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double lovasz_stein_bound(std::size_t right_size, std::size_t a, std::size_t b) {
  if (a == 0) throw std::invalid_argument("lovasz_stein_bound: a must be positive");
  const double lb = b == 0 ? 0.0 : std::log(static_cast<double>(b));
  return static_cast<double>(right_size) / static_cast<double>(a) * (1.0 + lb);
}

int cover_threshold(int degree) {
  const double l = static_cast<double>(degree);
  return static_cast<int>(std::floor(std::sqrt(l * std::log(l)) + 0.5));
}

SideCover side_cover(const Torus& torus, const GAPair& pair) {
  const int l = torus.degree();
  SideCover sc;
  sc.r = cover_threshold(l);
  const VertexSet B = torus.parity_class(pair.a_parity()) - pair.A;
  const VertexSet B0 = B & torus.neighborhood(pair.G);
  sc.G0p = torus.empty_set();
  pair.G.for_each([&](Vertex v) {
    if (2 * torus.degree_into(v, pair.A) <= l) sc.G0p.insert(v);
  });
  sc.Q = torus.empty_set();
  pair.G0.for_each([&](Vertex v) {
    if (torus.degree_into(v, pair.A) <= sc.r) sc.Q.insert(v);
  });
  sc.K = pair.G0 - sc.Q;
  sc.q_is_all = sc.K.empty();
  sc.P = torus.neighborhood(sc.Q) & pair.A;
  sc.P1 = torus.empty_set();
  sc.P.for_each([&](Vertex v) {
    if (2 * torus.degree_into(v, sc.K) >= l) sc.P1.insert(v);
  });
  sc.P2 = sc.P - sc.P1;
  sc.Q1 = sc.Q & torus.neighborhood(sc.P1);
  sc.Q2 = sc.Q - sc.Q1;
  sc.R = torus.empty_set();
  (B0 & torus.neighborhood(sc.G0p)).for_each([&](Vertex v) {
    if (torus.degree_into(v, pair.G0) > sc.r) sc.R.insert(v);
  });
  sc.X = sc.G0p - sc.Q2;

  // Cover X by R; vertices of X without an R neighbor take their smallest neighbor outside W.
  const auto rv = sc.R.to_vector();
  std::vector<Vertex> xs;
  VertexSet extra = torus.empty_set();
  sc.X.for_each([&](Vertex x) {
    if (torus.degree_into(x, sc.R) > 0) {
      xs.push_back(x);
      return;
    }
    ++sc.fallback;
    Vertex best = static_cast<Vertex>(torus.vertex_count());
    for (auto w : torus.neighbors(x))
      if (B.contains(w)) best = std::min(best, w);
    if (best == torus.vertex_count()) throw std::logic_error("side_cover: G0' vertex with no outside neighbor");
    extra.insert(best);
  });
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t k = 0; k < rv.size(); ++k)
      for (auto w : torus.neighbors(xs[i]))
        if (w == rv[k]) edges.emplace_back(i, k);
  const auto bg = Bigraph::make(xs.size(), rv.size(), edges);
  std::size_t a = xs.empty() ? 1 : torus.vertex_count();
  std::size_t b = 0;
  for (const auto& adj : bg.left_adj) a = std::min(a, adj.size());
  for (const auto& adj : bg.right_adj) b = std::max(b, adj.size());
  sc.T = torus.empty_set();
  for (auto k : lovasz_stein_cover(bg, a, b)) sc.T.insert(rv[k]);
  sc.S = sc.P2 | sc.T | extra;
  return sc;
}

UReport build_U(const Torus& torus, const GAPair& pair) {
  UReport u;
  u.primal = side_cover(torus, pair);
  u.dual = side_cover(torus, pair.dual(torus));
  u.U = u.primal.S | u.dual.S;
  const VertexSet target = u.primal.G0p | u.dual.G0p;
  u.U1 = target.subset_of(torus.neighborhood(u.U));
  u.U4 = torus.is_c_clustered(u.U, 6);
  u.in_NG0B0 = u.U.subset_of(torus.neighborhood(target));
  const double l = static_cast<double>(torus.degree());
  const double scale = static_cast<double>(pair.t) * std::sqrt(std::log(l) / l);
  u.U2_ratio = scale > 0 ? static_cast<double>(u.U.size()) / scale : 0.0;
  if (u.primal.q_is_all) u.degeneracies.emplace_back("Q_equals_G0");
  if (u.dual.q_is_all) u.degeneracies.emplace_back("dual_Q_equals_B0");
  if (u.primal.fallback) u.degeneracies.emplace_back("uncovered_fallback");
  if (u.dual.fallback) u.degeneracies.emplace_back("dual_uncovered_fallback");
  return u;
}

FirstApprox first_approximation(const Torus& torus, const VertexSet& U, const GAPair& pair) {
  FirstApprox fa;
  fa.L = torus.neighborhood(U);
  fa.P = torus.empty_set();
  fa.Qsmall = torus.empty_set();
  VertexSet seen = fa.L;
  const auto d = static_cast<std::size_t>(torus.dim());
  for (Vertex v = 0; v < torus.vertex_count(); ++v) {
    if (seen.contains(v)) continue;
    const VertexSet comp = torus.component(fa.L, v);
    seen |= comp;
    const bool meets = comp.intersects(pair.W);
    if (meets && !comp.subset_of(pair.W))
      throw std::domain_error("first_approximation: N(U) does not separate W from its complement");
    if (comp.size() > d) {
      if (meets) fa.P |= comp;
    } else {
      fa.Qsmall |= comp;
    }
  }
  const VertexSet F = fa.P & torus.parity_class(pair.g_parity);
  const VertexSet S = (fa.P | fa.Qsmall | fa.L) & torus.parity_class(pair.a_parity());
  fa.fs = ApproxPair::make(torus, pair.g_parity, F, S);
  fa.app11 = app11_holds(fa.fs, pair);
  fa.S_minus_A = (fa.fs.S - pair.A).size();
  fa.G_minus_F = (pair.G - fa.fs.F).size();
  const double dd = static_cast<double>(torus.dim());
  const double scale = static_cast<double>(pair.t) * std::sqrt(dd * std::log(dd));
  fa.app12_ratio = scale > 0 ? static_cast<double>(std::max(fa.S_minus_A, fa.G_minus_F)) / scale : 0.0;
  return fa;
}

namespace {

struct Refiner {
  const Torus& torus;
  const GAPair& pair;
  VertexSet F, S;
  bool variant = true;

  VertexSet E() const { return torus.parity_class(pair.g_parity) - F; }

  void stage(double thr, std::vector<Vertex>& chosen_a, std::vector<Vertex>& chosen_b) {
    const VertexSet H = torus.parity_class(pair.g_parity) - pair.G;
    // (A.1)
    for (bool again = true; again;) {
      again = false;
      for (Vertex w : H.to_vector()) {
        if (torus.degree_into(w, S) < thr) continue;
        const std::size_t before = S.size();
        S -= torus.neighbor_set(w);
        if (static_cast<double>(before - S.size()) < thr || !pair.A.subset_of(S)) variant = false;
        chosen_a.push_back(w);
        again = true;
        break;
      }
    }
    // (A.2)
    torus.parity_class(pair.g_parity).for_each([&](Vertex w) {
      if (torus.degree_into(w, S) >= thr) F.insert(w);
    });
    // (B.1)
    for (bool again = true; again;) {
      again = false;
      for (Vertex w : pair.A.to_vector()) {
        if (torus.degree_into(w, E()) < thr) continue;
        F |= torus.neighbor_set(w);
        chosen_b.push_back(w);
        again = true;
        break;
      }
    }
    // (B.2)
    const VertexSet e = E();
    VertexSet drop = torus.empty_set();
    torus.parity_class(pair.a_parity()).for_each([&](Vertex w) {
      if (torus.degree_into(w, e) >= thr) drop.insert(w);
    });
    S -= drop;
  }
};

}  // namespace

RefineTrace stage_refine(const Torus& torus, const ApproxPair& fs_star, const GAPair& pair, double xi, double psi) {
  if (!app11_holds(fs_star, pair)) throw std::invalid_argument("stage_refine: input must satisfy F ⊆ G and A ⊆ S");
  RefineTrace rt;
  Refiner rf{torus, pair, fs_star.F, fs_star.S};
  rf.stage(xi, rt.chosen_1A, rt.chosen_1B);
  rt.after_stage1 = ApproxPair::make(torus, pair.g_parity, rf.F, rf.S);
  const auto two_t = static_cast<std::size_t>(2 * std::max<long>(pair.t, 0));
  rt.stage1_bounds = (pair.G - rf.F).size() < two_t && (rf.S - pair.A).size() < two_t;
  rf.stage(psi, rt.chosen_2A, rt.chosen_2B);
  rt.out = ApproxPair::make(torus, pair.g_parity, rf.F, rf.S);
  rt.loop_variant = rf.variant;
  rt.app11 = app11_holds(rt.out, pair);
  rt.app22 = app22_holds(torus, rt.out, psi);
  return rt;
}

PiTrace pi(const Torus& torus, const GAPair& pair, const PiParams& params) {
  PiTrace tr;
  const double psi = params.psi.value_or(std::sqrt(static_cast<double>(torus.dim())));
  tr.split = boundary_split(torus, pair);
  tr.u = build_U(torus, pair);
  tr.first = first_approximation(torus, tr.u.U, pair);
  tr.refine = stage_refine(torus, tr.first.fs, pair, static_cast<double>(torus.degree()) / 2.0, psi);
  return tr;
}

std::size_t LegalCover::size() const { return static_cast<std::size_t>(std::popcount(K) + std::popcount(L)); }

namespace {

std::uint64_t adj_mask(const std::vector<std::size_t>& adj) {
  std::uint64_t m = 0;
  for (auto x : adj) m |= std::uint64_t{1} << x;
  return m;
}

}  // namespace

std::uint64_t left_neighbors(const Bigraph& g, std::uint64_t right) {
  std::uint64_t out = 0;
  for (std::size_t y = 0; y < g.right; ++y)
    if ((right >> y) & 1U) out |= adj_mask(g.right_adj[y]);
  return out;
}

std::uint64_t right_neighbors(const Bigraph& g, std::uint64_t left) {
  std::uint64_t out = 0;
  for (std::size_t x = 0; x < g.left; ++x)
    if ((left >> x) & 1U) out |= adj_mask(g.left_adj[x]);
  return out;
}

bool is_cover(const Bigraph& g, std::uint64_t left, std::uint64_t right) {
  for (std::size_t x = 0; x < g.left; ++x) {
    if ((left >> x) & 1U) continue;
    if (adj_mask(g.left_adj[x]) & ~right) return false;
  }
  return true;
}

bool is_minimal_cover(const Bigraph& g, std::uint64_t left, std::uint64_t right) {
  if (!is_cover(g, left, right)) return false;
  for (std::size_t x = 0; x < g.left; ++x)
    if (((left >> x) & 1U) && (adj_mask(g.left_adj[x]) & ~right) == 0) return false;
  for (std::size_t y = 0; y < g.right; ++y)
    if (((right >> y) & 1U) && (adj_mask(g.right_adj[y]) & ~left) == 0) return false;
  return true;
}

LegalCover legal_cover_search(const Bigraph& g, std::uint64_t U, std::size_t budget) {
  if (g.left > 64 || g.right > 64) throw std::length_error("legal_cover_search: parts limited to 64 vertices");
  const std::uint64_t right_all = g.right == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.right) - 1;
  const std::uint64_t left_all = g.left == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.left) - 1;
  if (U & ~right_all) throw std::invalid_argument("legal_cover_search: U outside the right part");
  if (static_cast<std::size_t>(std::popcount(U)) > budget) throw std::length_error("legal_cover_search: budget exceeded");

  LegalCover best;
  bool have = false;
  // Given L, legality forces K = N(U \ L) and M = N(P \ K) \ U.
  std::uint64_t L = 0;
  do {
    const std::uint64_t K = left_neighbors(g, U & ~L);
    const std::uint64_t M = right_neighbors(g, left_all & ~K) & ~U;
    if (is_minimal_cover(g, K, L | M)) {
      ++best.legal_count;
      const auto key = std::make_tuple(std::popcount(K) + std::popcount(L), K, L);
      if (!have || key < std::make_tuple(std::popcount(best.K) + std::popcount(best.L), best.K, best.L)) {
        best.K = K;
        best.L = L;
        best.M = M;
        have = true;
      }
    }
    L = (L - U) & U;  // next submask of U in increasing order
  } while (L != 0);
  if (!have) throw std::logic_error("legal_cover_search: no legal cover");

  if (static_cast<std::size_t>(std::popcount(best.K)) > budget)
    throw std::length_error("legal_cover_search: budget exceeded");
  best.property_a = true;
  const std::uint64_t free_u = U & ~best.L;
  for (std::uint64_t k = best.K;; k = (k - 1) & best.K) {
    if (std::popcount(right_neighbors(g, k) & free_u) < std::popcount(k)) best.property_a = false;
    if (k == 0) break;
  }
  best.property_b = true;
  for (std::uint64_t l = best.L;; l = (l - 1) & best.L) {
    if (std::popcount(left_neighbors(g, l) & ~best.K) < std::popcount(l)) best.property_b = false;
    if (l == 0) break;
  }
  return best;
}

CoverStructure cover_structure(const Torus& torus, const GAPair& pair, const ApproxPair& fs, const VertexSet& J,
                               Direction j, std::size_t budget) {
  CoverStructure cs;
  cs.U = torus.shift_set(J, j.reversed()) & fs.S0;
  cs.K = pair.G & fs.E0;
  cs.L = cs.U - pair.A;
  cs.M = (fs.S0 - cs.U) - pair.A;

  const auto left = fs.E0.to_vector();
  const auto right = fs.S0.to_vector();
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < left.size(); ++i)
    for (auto w : torus.neighbors(left[i]))
      if (fs.S0.contains(w))
        edges.emplace_back(i, static_cast<std::size_t>(std::lower_bound(right.begin(), right.end(), w) - right.begin()));

  const VertexSet cover = cs.K | cs.L | cs.M;
  cs.is_cover = true;
  cs.minimal = true;
  for (const auto& [i, k] : edges)
    if (!cover.contains(left[i]) && !cover.contains(right[k])) cs.is_cover = false;
  auto has_outside = [&](Vertex v, const VertexSet& other) {
    for (auto w : torus.neighbors(v))
      if (other.contains(w) && !cover.contains(w)) return true;
    return false;
  };
  (cover & fs.E0).for_each([&](Vertex v) {
    if (!has_outside(v, fs.S0)) cs.minimal = false;
  });
  (cover & fs.S0).for_each([&](Vertex v) {
    if (!has_outside(v, fs.E0)) cs.minimal = false;
  });
  if (!cover.subset_of(fs.Q)) cs.minimal = false;
  cs.knq = cs.K == (torus.neighborhood(cs.U - cs.L) & fs.E0);

  if (left.size() > 64 || right.size() > 64) return cs;
  const auto bg = Bigraph::make(left.size(), right.size(), edges);
  auto to_mask = [](const VertexSet& s, const std::vector<Vertex>& part) {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < part.size(); ++i)
      if (s.contains(part[i])) m |= std::uint64_t{1} << i;
    return m;
  };
  LegalCover best;
  try {
    best = legal_cover_search(bg, to_mask(cs.U, right), budget);
  } catch (const std::length_error&) {
    return cs;
  }
  cs.cross_checked = true;
  const std::uint64_t K = to_mask(cs.K, left);
  const std::uint64_t L = to_mask(cs.L, right);
  const std::uint64_t Kp = best.K & ~K;
  const std::uint64_t Lp = best.L & ~L;
  cs.lk = std::popcount(L) >= std::popcount(Kp) + std::popcount(best.L & ~Lp) &&
          std::popcount(K) >= std::popcount(Lp) + std::popcount(best.K & ~Kp);
  cs.know_k = K == ((best.K & ~Kp) | left_neighbors(bg, Lp));
  return cs;
}

ApproxAuditReport approx_audit(const Torus& torus, const std::vector<GAPair>& pairs, const PiParams& params,
                               std::optional<Vertex> v0, Exec exec) {
  struct Row {
    std::map<std::string, bool> checks;
    std::vector<std::string> degeneracies;
    std::string key;
    nlohmann::json record;
    double u2 = 0.0;
    double app12 = 0.0;
  };
  std::vector<Row> rows(pairs.size());
  const double psi = params.psi.value_or(std::sqrt(static_cast<double>(torus.dim())));
  auto work = [&](std::size_t i) {
    const GAPair& p = pairs[i];
    Row& r = rows[i];
    const auto split = boundary_split(torus, p, v0);
    r.checks["GOBO"] = split.gobo;
    r.checks["sep"] = split.sep && split.sep_v0_delta;
    r.record = {{"g", p.g}, {"a", p.a}, {"t", p.t}};
    UReport u;
    try {
      u = build_U(torus, p);
    } catch (const std::exception& ex) {
      r.checks["build_U"] = false;
      r.record["error"] = ex.what();
      return;
    }
    r.checks["U1"] = u.U1;
    r.checks["U4"] = u.U4;
    r.checks["U_in_N"] = u.in_NG0B0;
    r.degeneracies = u.degeneracies;
    r.u2 = u.U2_ratio;
    r.record["U_size"] = u.U.size();
    r.record["U2_ratio"] = u.U2_ratio;
    FirstApprox fa;
    try {
      fa = first_approximation(torus, u.U, p);
    } catch (const std::domain_error& ex) {
      r.checks["separation"] = false;
      r.record["error"] = ex.what();
      return;
    }
    r.checks["App1.1_first"] = fa.app11;
    r.app12 = fa.app12_ratio;
    const auto rt = stage_refine(torus, fa.fs, p, static_cast<double>(torus.degree()) / 2.0, psi);
    r.checks["stage1_bounds"] = rt.stage1_bounds;
    r.checks["loop_variant"] = rt.loop_variant;
    r.checks["App1.1"] = rt.app11;
    r.checks["App2.2"] = rt.app22;
    r.record["FS_sizes"] = {rt.out.F.size(), rt.out.S.size()};
    r.record["App2_ok"] = rt.app11 && rt.app22;
    r.key = rt.out.F.to_hex() + ":" + rt.out.S.to_hex();
  };
  const auto n = static_cast<std::int64_t>(pairs.size());
  if (exec == Exec::serial) {
    for (std::int64_t i = 0; i < n; ++i) work(static_cast<std::size_t>(i));
  } else {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < n; ++i) work(static_cast<std::size_t>(i));
  }

  ApproxAuditReport rep;
  std::set<std::string> outputs;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Row& r = rows[i];
    ++rep.audited;
    bool ok = true;
    for (const auto& [name, value] : r.checks)
      if (!value) {
        ok = false;
        ++rep.property_failures[name];
      }
    for (const auto& dg : r.degeneracies) ++rep.degeneracies[dg];
    if (!r.key.empty()) outputs.insert(r.key);
    r.record["distinct_pi_outputs_running"] = outputs.size();
    rep.max_U2_ratio = std::max(rep.max_U2_ratio, r.u2);
    rep.max_app12_ratio = std::max(rep.max_app12_ratio, r.app12);
    if (!ok) {
      ++rep.failures;
      rep.failing.push_back(pairs[i]);
    }
    rep.records.push_back(std::move(r.record));
  }
  rep.distinct_outputs = outputs.size();
  return rep;
}

}  // namespace hardcore
