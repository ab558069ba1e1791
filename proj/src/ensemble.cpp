#include "hardcore/ensemble.hpp"

#include <stdexcept>

#include "hardcore/ensemble_kernels.hpp"

namespace hardcore {

std::string to_string(Boundary b) {
  switch (b) {
    case Boundary::even: return "even";
    case Boundary::odd: return "odd";
    case Boundary::free: return "free";
    case Boundary::custom: return "custom";
  }
  return "?";
}

Boundary parse_boundary(std::string_view text) {
  if (text == "even") return Boundary::even;
  if (text == "odd") return Boundary::odd;
  if (text == "free") return Boundary::free;
  throw std::invalid_argument("boundary must be even, odd or free");
}

namespace {

VertexSet frozen_for(const Torus& t, Boundary b) {
  switch (b) {
    case Boundary::even: return t.delta() & t.parity_class(Parity::even);
    case Boundary::odd: return t.delta() & t.parity_class(Parity::odd);
    case Boundary::free: return t.empty_set();
    case Boundary::custom: break;
  }
  throw std::invalid_argument("frozen_for: custom boundary needs an explicit frozen set");
}

}  // namespace

Ensemble::Ensemble(Torus torus, Boundary boundary, VertexSet frozen)
    : torus_(std::move(torus)), boundary_(boundary), frozen_(std::move(frozen)) {
  if (frozen_.universe() != torus_.vertex_count()) throw std::invalid_argument("Ensemble: frozen set universe mismatch");
  if (!torus_.is_independent(frozen_)) throw std::invalid_argument("Ensemble: frozen set is not independent");
  free_ = (frozen_ | torus_.neighborhood(frozen_)).complement();
}

Ensemble::Ensemble(Torus torus, Boundary boundary)
    : Ensemble(torus, boundary, frozen_for(torus, boundary)) {}

Ensemble Ensemble::with_frozen(Torus torus, VertexSet frozen) {
  return Ensemble(std::move(torus), Boundary::custom, std::move(frozen));
}

std::optional<Parity> Ensemble::outer_parity() const {
  if (boundary_ == Boundary::even) return Parity::even;
  if (boundary_ == Boundary::odd) return Parity::odd;
  return std::nullopt;
}

Rational evaluate(const SizeCounts& counts, const Rational& lambda) {
  // Horner from the top coefficient.
  Rational acc = 0;
  for (std::size_t k = counts.size(); k-- > 0;) {
    acc *= lambda;
    acc += Rational(mpz_class(std::to_string(counts[k]), 10));
  }
  return acc;
}

namespace kernels {

MaskModel make_mask_model(const Ensemble& e, std::size_t budget) {
  const Torus& t = e.torus();
  if (t.vertex_count() > budget) throw std::length_error("enumeration budget exceeded");
  if (t.vertex_count() > 64) throw std::length_error("mask enumeration supports at most 64 vertices");
  MaskModel m;
  m.n = t.vertex_count();
  m.frozen = e.frozen().to_mask();
  m.nbr.resize(m.n);
  for (Vertex v = 0; v < m.n; ++v)
    for (auto w : t.neighbors(v)) m.nbr[v] |= std::uint64_t{1} << w;
  const auto free = e.free_sites().to_vector();
  m.free_desc.assign(free.rbegin(), free.rend());
  return m;
}

}  // namespace kernels

namespace {

// hit(λ)/all(λ); at λ = 0 the λ→0⁺ limit, i.e. the ratio of the lowest-order coefficients.
Rational ratio(const SizeCounts& hit, const SizeCounts& all, const Rational& lambda) {
  if (lambda != 0) return evaluate(hit, lambda) / evaluate(all, lambda);
  for (std::size_t k = 0; k < all.size(); ++k) {
    if (all[k] == 0) continue;
    Rational r(mpz_class(std::to_string(hit[k]), 10), mpz_class(std::to_string(all[k]), 10));
    r.canonicalize();
    return r;
  }
  throw std::domain_error("ensemble has no configurations");
}

}  // namespace

std::vector<std::uint64_t> enumerate_J(const Ensemble& e, std::size_t budget, Exec exec) {
  const auto m = kernels::make_mask_model(e, budget);
  return exec == Exec::serial ? kernels::collect_serial(m) : kernels::collect_parallel(m);
}

SizeCounts count_J(const Ensemble& e, std::size_t budget, Exec exec) {
  const auto m = kernels::make_mask_model(e, budget);
  return kernels::count_if(m, exec, [](std::uint64_t) { return true; });
}

Rational partition_function(const Ensemble& e, const Activity& lambda, std::size_t budget) {
  return evaluate(count_J(e, budget), lambda.value());
}

Rational occupation_probability(const Ensemble& e, const Activity& lambda, Vertex v0, std::size_t budget) {
  if (v0 >= e.torus().vertex_count()) throw std::out_of_range("occupation_probability: v0 outside torus");
  const auto m = kernels::make_mask_model(e, budget);
  const std::uint64_t bit = std::uint64_t{1} << v0;
  const auto all = kernels::count_if(m, Exec::parallel, [](std::uint64_t) { return true; });
  const auto hit = kernels::count_if(m, Exec::parallel, [bit](std::uint64_t s) { return (s & bit) != 0; });
  return ratio(hit, all, lambda.value());
}

Rational prob_J0(const Ensemble& e, const Activity& lambda, Vertex v0, std::size_t budget, Exec exec) {
  const auto outer = e.outer_parity();
  if (!outer) throw std::invalid_argument("prob_J0: needs an even or odd boundary");
  const Torus& t = e.torus();
  if (v0 >= t.vertex_count()) throw std::out_of_range("prob_J0: v0 outside torus");
  const Parity inner = opposite(*outer);
  if (t.parity(v0) != inner) throw std::invalid_argument("prob_J0: v0 must have the parity opposite the boundary");
  const auto m = kernels::make_mask_model(e, budget);
  const std::uint64_t inner_mask = t.parity_class(inner).to_mask();
  const Vertex seed = t.delta().first();
  const std::uint64_t full = m.n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m.n) - 1;
  const std::uint64_t bit = std::uint64_t{1} << v0;
  auto in_j0 = [&](std::uint64_t s) {
    const std::uint64_t allowed = full & ~(s & inner_mask);
    return (kernels::reach(m, allowed, seed) & bit) == 0;
  };
  const auto all = kernels::count_if(m, exec, [](std::uint64_t) { return true; });
  const auto hit = kernels::count_if(m, exec, in_j0);
  return ratio(hit, all, lambda.value());
}

IdentityReport conditional_occupation_identity_check(const Ensemble& e, const Activity& lambda, Vertex v0,
                                                     std::size_t budget) {
  IdentityReport r;
  const Rational& lam = lambda.value();
  r.expected = lam / (1 + lam);
  r.applicable = e.free_sites().contains(v0);
  if (!r.applicable) return r;
  const auto m = kernels::make_mask_model(e, budget);
  const std::uint64_t bit = std::uint64_t{1} << v0;
  const std::uint64_t nbr = m.nbr[v0];
  const auto occupied = kernels::count_if(m, Exec::parallel, [bit](std::uint64_t s) { return (s & bit) != 0; });
  const auto clear = kernels::count_if(m, Exec::parallel, [nbr](std::uint64_t s) { return (s & nbr) == 0; });
  r.conditional = ratio(occupied, clear, lam);
  r.holds = r.conditional == r.expected;
  return r;
}

nlohmann::json exact_record(const Ensemble& e, const Activity& lambda, Vertex v0, const Rational& value,
                            std::string_view quantity) {
  return {
      {"d", e.torus().dim()},
      {"M", e.torus().half_side()},
      {"boundary", to_string(e.boundary())},
      {"lambda", to_string(lambda.value())},
      {"v0", e.torus().coords(v0)},
      {"quantity", std::string(quantity)},
      {"value_num", value.get_num().get_str()},
      {"value_den", value.get_den().get_str()},
  };
}

}  // namespace hardcore
