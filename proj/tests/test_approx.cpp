#include <algorithm>
#include <bit>
#include <random>
#include <set>

#include "doctest.h"
#include "hardcore/approx.hpp"
#include "hardcore/flow.hpp"
#include "oracle.hpp"

using namespace hardcore;

namespace {

using Edges = std::vector<std::pair<std::size_t, std::size_t>>;

GAPair singleton(const Torus& t, Vertex v) {
  VertexSet A = t.empty_set();
  A.insert(v);
  return GAPair::from_A(t, opposite(t.parity(v)), A);
}

Edges random_edges(std::mt19937_64& rng, std::size_t left, std::size_t right, double p) {
  std::bernoulli_distribution coin(p);
  Edges e;
  for (std::size_t x = 0; x < left; ++x)
    for (std::size_t y = 0; y < right; ++y)
      if (coin(rng)) e.emplace_back(x, y);
  return e;
}

std::vector<GAPair> inside_pairs(const Torus& t, Vertex v0) {
  GAEnumOptions opts;
  opts.v0 = v0;
  return enumerate_GA_pairs(t, opposite(t.parity(v0)), opts);
}

}  // namespace

TEST_CASE("quadrilateral property") {
  CHECK(check_quad(Torus::make(2, 2)));
  CHECK(check_quad(Torus::make(2, 3)));
  CHECK(check_quad(Torus::make(1, 3)));
  CHECK(check_quad(Graph::from_torus(Torus::make(1, 2))));
  CHECK_FALSE(check_quad(Graph::star(2)));
  CHECK_FALSE(check_quad(Graph::path(3)));
}

TEST_CASE("boundary split of a singleton") {
  const Torus t = Torus::make(2, 3);
  const GAPair p = singleton(t, t.origin());
  const BoundarySplit s = boundary_split(t, p, t.origin());
  CHECK(s.G0p == p.G0);
  CHECK(s.G0pp.empty());
  CHECK(s.gobo);
  CHECK(s.sep);
  CHECK(s.sep_v0_delta);
}

TEST_CASE("Lovasz-Stein examples") {
  // Perfect matching: every x needs its own y.
  const Bigraph m = Bigraph::make(3, 3, {{0, 0}, {1, 1}, {2, 2}});
  CHECK(lovasz_stein_cover(m, 1, 1).size() == 3);
  CHECK(lovasz_stein_bound(3, 1, 1) == doctest::Approx(3.0));
  // One y sees everything.
  const Bigraph star = Bigraph::make(3, 2, {{0, 0}, {1, 0}, {2, 0}, {0, 1}});
  CHECK(lovasz_stein_cover(star, 1, 3) == std::vector<std::size_t>{0});
  CHECK_THROWS_AS(lovasz_stein_cover(m, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(lovasz_stein_cover(star, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(lovasz_stein_bound(3, 0, 1), std::invalid_argument);
}

TEST_CASE("property: Lovasz-Stein covers meet the bound") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t left = 1 + rng() % 12, right = 1 + rng() % 12;
    Edges e = random_edges(rng, left, right, 0.35);
    for (std::size_t x = 0; x < left; ++x) e.emplace_back(x, rng() % right);
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    const Bigraph g = Bigraph::make(left, right, e);
    std::size_t a = right, b = 0;
    for (const auto& n : g.left_adj) a = std::min(a, n.size());
    for (const auto& n : g.right_adj) b = std::max(b, n.size());
    const auto cover = lovasz_stein_cover(g, a, b);
    std::set<std::size_t> covered;
    for (auto y : cover)
      for (auto x : g.right_adj[y]) covered.insert(x);
    CHECK(covered.size() == left);
    CHECK(static_cast<double>(cover.size()) <= lovasz_stein_bound(right, a, b) + 1e-9);
  }
}

TEST_CASE("cover threshold") {
  CHECK(cover_threshold(4) == 2);
  CHECK(cover_threshold(6) == 3);
  CHECK(cover_threshold(8) == 4);
}

TEST_CASE("U for a singleton") {
  const Torus t = Torus::make(2, 3);
  const GAPair p = singleton(t, t.origin());
  const UReport u = build_U(t, p);
  CHECK(u.U1);
  CHECK(u.U4);
  CHECK(u.in_NG0B0);
  CHECK(u.U2_ratio > 0.0);
  CHECK(u.primal.r == 2);
}

TEST_CASE("first approximation from the full vertex set") {
  const Torus t = Torus::make(2, 3);
  for (const auto& p : inside_pairs(t, t.origin())) {
    const FirstApprox fa = first_approximation(t, t.all(), p);
    CHECK(fa.fs.F.empty());
    CHECK(p.A.subset_of(fa.fs.S));
    CHECK(fa.app11);
  }
}

TEST_CASE("stage refinement") {
  const Torus t = Torus::make(2, 3);
  const GAPair p = singleton(t, t.origin());
  const ApproxPair exact = ApproxPair::make(t, Parity::odd, p.G, p.A);
  const RefineTrace r = stage_refine(t, exact, p, 1.0, std::sqrt(2.0));
  CHECK(r.out == exact);
  CHECK(r.app11);
  CHECK(r.app22);
  CHECK(r.stage1_bounds);
  const ApproxPair bad = ApproxPair::make(t, Parity::odd, t.parity_class(Parity::odd), p.A);
  CHECK_THROWS_AS(stage_refine(t, bad, p, 1.0, 1.0), std::invalid_argument);
  const ApproxPair missing = ApproxPair::make(t, Parity::odd, p.G, t.empty_set());
  CHECK_THROWS_AS(stage_refine(t, missing, p, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("approximation pipeline over inside pairs") {
  for (auto [M, parity] : {std::pair{2, Parity::even}, {3, Parity::even}, {3, Parity::odd}}) {
    const Torus t = Torus::make(2, M);
    Vertex v0 = t.origin();
    if (parity == Parity::odd) v0 = t.vertex_at(std::vector<int>{1, 0});
    const auto pairs = inside_pairs(t, v0);
    REQUIRE_FALSE(pairs.empty());
    const double psi = std::sqrt(2.0);
    for (const auto& p : pairs) {
      const PiTrace tr = pi(t, p);
      CHECK(tr.out() == pi(t, p).out());
      CHECK(app11_holds(tr.out(), p));
      CHECK(app22_holds(t, tr.out(), psi));
      CHECK(tr.refine.stage1_bounds);
      CHECK(tr.refine.loop_variant);
      CHECK(tr.u.U1);
      CHECK(tr.u.U4);
    }
    const auto rep = approx_audit(t, pairs, {}, v0);
    CHECK(rep.audited == pairs.size());
    CHECK(rep.failures == 0);
    CHECK(rep.failing.empty());
    CHECK(rep.distinct_outputs >= 1);
  }
}

TEST_CASE("approx audit records degeneracies without failing") {
  const Torus t = Torus::make(2, 3);
  const auto rep = approx_audit(t, inside_pairs(t, t.origin()), {}, t.origin());
  CHECK(rep.failures == 0);
  CHECK(rep.degeneracies.count("Q_equals_G0") == 1);
  std::size_t total = 0;
  for (const auto& [name, n] : rep.degeneracies) total += n;
  CHECK(total > 0);
}

TEST_CASE("approx audit serial and parallel agree") {
  const Torus t = Torus::make(2, 3);
  const auto pairs = inside_pairs(t, t.origin());
  const auto s = approx_audit(t, pairs, {}, t.origin(), Exec::serial);
  const auto p = approx_audit(t, pairs, {}, t.origin(), Exec::parallel);
  CHECK(s.records == p.records);
  CHECK(s.degeneracies == p.degeneracies);
  CHECK(s.distinct_outputs == p.distinct_outputs);
}

TEST_CASE("cover helpers") {
  const Bigraph g = Bigraph::make(2, 2, {{0, 0}, {1, 0}, {1, 1}});
  CHECK(is_cover(g, 0b00, 0b11));
  CHECK(is_cover(g, 0b10, 0b01));
  CHECK_FALSE(is_cover(g, 0b01, 0b01));
  CHECK(is_minimal_cover(g, 0b10, 0b01));
  CHECK_FALSE(is_minimal_cover(g, 0b11, 0b01));
  CHECK(left_neighbors(g, 0b10) == 0b10);
  CHECK(right_neighbors(g, 0b10) == 0b11);
}

TEST_CASE("legal cover examples") {
  // Star centred on the left: U = all leaves.
  const Bigraph star = Bigraph::make(1, 3, {{0, 0}, {0, 1}, {0, 2}});
  const LegalCover s = legal_cover_search(star, 0b111);
  CHECK(s.size() == 1);
  CHECK(s.K == 0b1);
  CHECK(s.L == 0);
  CHECK(s.property_a);
  CHECK(s.property_b);
  const Bigraph matching = Bigraph::make(2, 2, {{0, 0}, {1, 1}});
  const LegalCover m = legal_cover_search(matching, 0b11);
  CHECK(m.size() == 2);
  CHECK(m.legal_count == 4);
  const Bigraph empty = Bigraph::make(2, 2, {});
  const LegalCover e = legal_cover_search(empty, 0b11);
  CHECK(e.size() == 0);
  CHECK(e.M == 0);
  CHECK_THROWS_AS(legal_cover_search(star, 0b1000), std::invalid_argument);
}

TEST_CASE("property: legal cover search agrees with brute force") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t left = 1 + rng() % 8, right = 1 + rng() % 8;
    const Edges e = random_edges(rng, left, right, 0.3 + 0.1 * static_cast<double>(trial % 4));
    const Bigraph g = Bigraph::make(left, right, e);
    const std::uint64_t U = rng() & ((std::uint64_t{1} << right) - 1);
    const auto ref = oracle::legal_covers(left, right, e, U);
    const LegalCover got = legal_cover_search(g, U);
    CHECK(got.legal_count == ref.legal);
    CHECK(got.size() == ref.min_size);
    CHECK(got.K == ref.best_K);
    CHECK(got.L == ref.best_L);
    CHECK(is_minimal_cover(g, got.K, got.L | got.M));
    CHECK(got.property_a);
    CHECK(got.property_b);
  }
}

TEST_CASE("cover structure with no E0") {
  const Torus t = Torus::make(2, 2);
  const GAPair p = singleton(t, t.origin());
  const ApproxPair exact = ApproxPair::make(t, Parity::odd, p.G, p.A);
  REQUIRE(exact.E0.empty());
  const ShiftData sd = shift_data(t, p, VertexSet::from_mask(16, 0x5828), Direction(1));
  for (const auto& J : phi(sd)) CHECK(cover_structure(t, p, exact, J, Direction(1)).ok());
}

TEST_CASE("property: cover structure on forced-large contours") {
  for (int M : {2, 3}) {
    const Torus t = Torus::make(2, M);
    const Ensemble e(t, Boundary::odd);
    std::size_t checked = 0;
    for (const auto& I : enumerate_J0(e, t.origin())) {
      const GAPair p = build_contour(e, I, t.origin()).pair();
      const FlowChoice c = choose_flow(t, p, FlowPolicy::forced_large());
      REQUIRE(c.approx.has_value());
      const ShiftData sd = shift_data(t, p, I, c.j);
      for_each_phi(sd, [&](const VertexSet& J) {
        const CoverStructure cs = cover_structure(t, p, *c.approx, J, c.j);
        CHECK(cs.ok());
        CHECK(cs.cross_checked);
        ++checked;
      });
    }
    CHECK(checked > 0);
  }
}
