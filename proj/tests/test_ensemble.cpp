#include <bit>

#include "doctest.h"
#include "hardcore/ensemble.hpp"
#include "hardcore/rational.hpp"
#include "oracle.hpp"

using namespace hardcore;

namespace {

Rational q(long p, long r = 1) {
  Rational x(p, r);
  x.canonicalize();
  return x;
}

Activity act(long p, long r = 1) { return Activity(q(p, r)); }

Vertex at(const Torus& t, std::vector<int> c) { return t.vertex_at(c); }

struct OracleMeasure {
  mpq_class Z = 0, occ = 0, bad = 0;
};

// Exact quantities from the coordinate oracle; boundary parity -1 means free.
OracleMeasure oracle_measure(int d, int M, int boundary, const std::vector<int>& v0c, const mpq_class& lam) {
  const oracle::Box box(d, M);
  const auto frozen = boundary < 0 ? std::vector<char>(box.pts.size(), 0) : box.frozen(boundary);
  const int v0 = box.at(v0c);
  OracleMeasure m;
  for (const auto& I : oracle::independent_sets(box, frozen)) {
    const mpq_class w = oracle::power(lam, oracle::count(I));
    m.Z += w;
    if (I[static_cast<std::size_t>(v0)]) m.occ += w;
    if (boundary >= 0 && oracle::bad_event(box, I, boundary, v0)) m.bad += w;
  }
  m.occ /= m.Z;
  m.bad /= m.Z;
  return m;
}

}  // namespace

TEST_CASE("enumeration counts on the 4x4 torus") {
  const Torus t = Torus::make(2, 2);
  const Ensemble free(t, Boundary::free), even(t, Boundary::even), odd(t, Boundary::odd);
  const oracle::Box box(2, 2);
  const auto n_free = oracle::independent_sets(box, std::vector<char>(16, 0)).size();
  CHECK(enumerate_J(free).size() == n_free);
  CHECK(enumerate_J(even).size() == 32);
  CHECK(enumerate_J(odd).size() == 17);
  CHECK(enumerate_J(even).size() < n_free);
  const auto js = enumerate_J(even);
  CHECK(std::is_sorted(js.begin(), js.end()));
  CHECK(std::find(js.begin(), js.end(), even.frozen().to_mask()) != js.end());
  for (auto m : js) {
    const VertexSet I = VertexSet::from_mask(16, m);
    CHECK(t.is_independent(I));
    CHECK(even.frozen().subset_of(I));
  }
}

TEST_CASE("enumeration counts on the 6x6 torus") {
  const Torus t = Torus::make(2, 3);
  SizeCounts ce = count_J(Ensemble(t, Boundary::even));
  SizeCounts co = count_J(Ensemble(t, Boundary::odd));
  std::uint64_t ne = 0, no = 0;
  for (auto c : ce) ne += c;
  for (auto c : co) no += c;
  CHECK(ne == 11024);
  CHECK(no == 5922);
}

TEST_CASE("serial and parallel enumeration agree") {
  const Ensemble e(Torus::make(2, 3), Boundary::even);
  CHECK(enumerate_J(e, 36, Exec::serial) == enumerate_J(e, 36, Exec::parallel));
  CHECK(count_J(e, 36, Exec::serial) == count_J(e, 36, Exec::parallel));
  const Vertex v0 = at(e.torus(), {1, 0});
  CHECK(prob_J0(e, act(2), v0, 36, Exec::serial) == prob_J0(e, act(2), v0, 36, Exec::parallel));
}

TEST_CASE("budget") {
  const Ensemble e(Torus::make(2, 3), Boundary::even);
  CHECK_THROWS_AS(enumerate_J(e, 20), std::length_error);
  CHECK_THROWS_AS(partition_function(e, act(1), 20), std::length_error);
  const Ensemble big(Torus::make(2, 4), Boundary::even);
  CHECK_THROWS_AS(count_J(big, 63), std::length_error);
  const Ensemble huge(Torus::make(3, 3), Boundary::even);
  CHECK_THROWS_AS(count_J(huge, 1000), std::length_error);
}

TEST_CASE("partition function") {
  const Torus t = Torus::make(2, 2);
  const Ensemble even(t, Boundary::even), free(t, Boundary::free);
  CHECK(partition_function(even, act(1)) == 32);
  CHECK(partition_function(even, act(0)) == 0);
  CHECK(partition_function(free, act(0)) == 1);
  // One edge: 1 + λ + λ at λ = 1/2.
  CHECK(evaluate({1, 2}, q(1, 2)) == 2);
  for (auto lam : {q(1, 2), q(1), q(2), q(5)}) {
    CHECK(partition_function(even, Activity(lam)) == oracle_measure(2, 2, 0, {0, 0}, lam).Z);
    CHECK(partition_function(free, Activity(lam)) == oracle_measure(2, 2, -1, {0, 0}, lam).Z);
  }
}

TEST_CASE("occupation probabilities, frozen values") {
  const Torus t = Torus::make(2, 2);
  const Ensemble even(t, Boundary::even), odd(t, Boundary::odd);
  const Vertex o = at(t, {0, 0}), x = at(t, {1, 0});
  CHECK(occupation_probability(even, act(1), o) == q(1, 2));
  CHECK(occupation_probability(even, act(1, 2), o) == q(1, 3));
  CHECK(occupation_probability(even, act(2), o) == q(2, 3));
  CHECK(occupation_probability(even, act(5), o) == q(5, 6));
  CHECK(occupation_probability(odd, act(1), o) == q(1, 17));
  CHECK(occupation_probability(odd, act(1), x) == q(8, 17));
  CHECK(occupation_probability(odd, act(1, 2), o) == q(8, 89));
  CHECK(occupation_probability(odd, act(1, 2), x) == q(27, 89));
  CHECK(occupation_probability(odd, act(2), o) == q(2, 83));
  CHECK(occupation_probability(odd, act(2), x) == q(54, 83));
  CHECK(occupation_probability(odd, act(5), o) == q(5, 1301));
  CHECK(occupation_probability(odd, act(5), x) == q(1080, 1301));
}

TEST_CASE("occupation probabilities match the oracle everywhere") {
  for (int boundary : {0, 1, -1}) {
    const Torus t = Torus::make(2, 2);
    const Ensemble e(t, boundary == 0 ? Boundary::even : boundary == 1 ? Boundary::odd : Boundary::free);
    for (Vertex v = 0; v < t.vertex_count(); ++v)
      for (auto lam : {q(1, 3), q(3)})
        CHECK(occupation_probability(e, Activity(lam), v) == oracle_measure(2, 2, boundary, t.coords(v), lam).occ);
  }
}

TEST_CASE("occupation at frozen and blocked sites") {
  const Torus t = Torus::make(2, 3);
  const Ensemble e(t, Boundary::even);
  const Vertex frozen = e.frozen().first();
  CHECK(occupation_probability(e, act(1), frozen) == 1);
  Vertex blocked = t.vertex_count();
  for (auto w : t.neighbors(frozen))
    if (!e.frozen().contains(w)) blocked = w;
  REQUIRE(blocked < t.vertex_count());
  CHECK(occupation_probability(e, act(3), blocked) == 0);
}

TEST_CASE("prob_J0 frozen values") {
  const Torus t = Torus::make(2, 2);
  const Ensemble odd(t, Boundary::odd), even(t, Boundary::even);
  const Vertex o = at(t, {0, 0});
  CHECK(prob_J0(odd, act(1), o) == q(1, 17));
  CHECK(prob_J0(odd, act(2), o) == q(2, 83));
  CHECK(prob_J0(odd, act(5), o) == q(5, 1301));
  CHECK(prob_J0(even, act(1), at(t, {1, 0})) == 0);
  CHECK_THROWS_AS(prob_J0(even, act(1), o), std::invalid_argument);
  CHECK_THROWS_AS(prob_J0(Ensemble(t, Boundary::free), act(1), o), std::invalid_argument);
}

TEST_CASE("prob_J0 matches the oracle on 4x4") {
  const Torus t = Torus::make(2, 2);
  for (int boundary : {0, 1}) {
    const Ensemble e(t, boundary == 0 ? Boundary::even : Boundary::odd);
    const Parity inner = boundary == 0 ? Parity::odd : Parity::even;
    t.parity_class(inner).for_each([&](Vertex v) {
      for (auto lam : {q(1, 2), q(4)})
        CHECK(prob_J0(e, Activity(lam), v) == oracle_measure(2, 2, boundary, t.coords(v), lam).bad);
    });
  }
}

TEST_CASE("prob_J0 at zero activity") {
  // Only the frozen configuration survives, and it leaves Z = Γ.
  const Torus t = Torus::make(2, 3);
  const Ensemble e(t, Boundary::even);
  CHECK(prob_J0(e, act(0), at(t, {1, 0})) == 0);
  CHECK(occupation_probability(e, act(0), e.frozen().first()) == 1);
}

TEST_CASE("prob_J0 dominates the occupied part of J0") {
  const Torus t = Torus::make(2, 3);
  const Ensemble e(t, Boundary::odd);
  const Vertex v0 = at(t, {0, 0});
  for (auto lam : {q(1), q(3)}) {
    const Rational p = prob_J0(e, Activity(lam), v0);
    CHECK(p >= occupation_probability(e, Activity(lam), v0));
    CHECK(p == prob_J0(e, Activity(lam), v0));
  }
}

TEST_CASE("conditional occupation identity") {
  const Torus t = Torus::make(2, 2);
  const Ensemble free(t, Boundary::free);
  auto r1 = conditional_occupation_identity_check(free, act(1), t.origin());
  CHECK(r1.applicable);
  CHECK(r1.conditional == q(1, 2));
  CHECK(r1.holds);
  auto r3 = conditional_occupation_identity_check(free, act(3), t.origin());
  CHECK(r3.conditional == q(3, 4));
  for (auto b : {Boundary::even, Boundary::odd, Boundary::free}) {
    const Ensemble e(t, b);
    for (Vertex v = 0; v < t.vertex_count(); ++v) {
      const auto r = conditional_occupation_identity_check(e, act(2, 3), v);
      if (r.applicable) CHECK(r.holds);
    }
  }
  const Ensemble even(t, Boundary::even);
  CHECK_FALSE(conditional_occupation_identity_check(even, act(1), even.frozen().first()).applicable);
}

TEST_CASE("property: probabilities sum to one") {
  const Torus t = Torus::make(2, 2);
  for (auto b : {Boundary::even, Boundary::odd, Boundary::free}) {
    const Ensemble e(t, b);
    for (auto lam : {q(1, 7), q(5, 2)}) {
      Rational total = 0;
      for (auto m : enumerate_J(e)) total += pow(lam, std::popcount(m));
      CHECK(total / partition_function(e, Activity(lam)) == 1);
    }
  }
}

TEST_CASE("property: freezing more vertices never increases Z") {
  const Torus t = Torus::make(2, 3);
  const Ensemble base(t, Boundary::even);
  const Rational lam = q(3, 2);
  const Rational z0 = partition_function(base, Activity(lam));
  std::size_t tried = 0;
  for (Vertex u = 0; u < t.vertex_count(); ++u) {
    VertexSet f = base.frozen();
    f.insert(u);
    if (!t.is_independent(f) || f == base.frozen()) continue;
    CHECK(partition_function(Ensemble::with_frozen(t, f), Activity(lam)) <= z0);
    ++tried;
  }
  CHECK(tried > 0);
}

TEST_CASE("property: translating the frozen set translates the measure") {
  // The shift by e_1 maps Δ∩E onto an odd frozen set; marginals follow the map.
  const Torus t = Torus::make(2, 2);
  const Ensemble even(t, Boundary::even);
  const Direction j(1);
  const Ensemble moved = Ensemble::with_frozen(t, t.shift_set(even.frozen(), j));
  CHECK(moved.frozen().subset_of(t.parity_class(Parity::odd)));
  for (Vertex v = 0; v < t.vertex_count(); ++v)
    CHECK(occupation_probability(even, act(2), v) == occupation_probability(moved, act(2), t.shift(v, j)));
}

TEST_CASE("exact record") {
  const Torus t = Torus::make(2, 2);
  const Ensemble e(t, Boundary::even);
  const auto j = exact_record(e, act(1), t.origin(), q(1, 2), "occupation");
  CHECK(j["d"] == 2);
  CHECK(j["M"] == 2);
  CHECK(j["boundary"] == "even");
  CHECK(j["lambda"] == "1");
  CHECK(j["value_num"] == "1");
  CHECK(j["value_den"] == "2");
}

TEST_CASE("rationals") {
  CHECK(parse_rational("6/4") == q(3, 2));
  CHECK(parse_rational("7") == 7);
  CHECK_THROWS_AS(parse_rational("0.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS(Activity(q(-1)));
  CHECK(binomial(6, 2) == 15);
  CHECK(ceil(q(7, 2)) == 4);
  CHECK(ceil(q(-7, 2)) == -3);
  CHECK(pow(q(2, 3), -2) == q(9, 4));
  CHECK(to_string(q(-3, 6)) == "-1/2");
}
