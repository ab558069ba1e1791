#include "hardcore/flow.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace hardcore {

VertexSet g0_shift(const Torus& torus, const GAPair& pair, Direction j) {
  const VertexSet outside_A = torus.parity_class(pair.a_parity()) - pair.A;
  return pair.G0 & torus.shift_set(outside_A, j);
}

ShiftData shift_data(const Torus& torus, const GAPair& pair, const VertexSet& I, Direction j) {
  ShiftData sd;
  sd.j = j;
  sd.G0j = g0_shift(torus, pair, j);
  sd.outside = I - pair.W;
  sd.shifted = torus.shift_set(I & pair.W, j);
  sd.base = sd.outside | sd.shifted;
  sd.disjoint = !sd.outside.intersects(sd.shifted) && !sd.outside.intersects(sd.G0j) && !sd.shifted.intersects(sd.G0j);
  sd.independent = torus.is_independent(sd.base | sd.G0j);
  return sd;
}

std::vector<VertexSet> phi(const ShiftData& sd, std::size_t budget) {
  std::vector<VertexSet> out;
  for_each_phi(sd, [&](const VertexSet& J) { out.push_back(J); }, budget);
  return out;
}

bool in_phi(const ShiftData& sd, const VertexSet& J) {
  return sd.base.subset_of(J) && J.subset_of(sd.base | sd.G0j);
}

VertexSet recover(const Torus& torus, const VertexSet& J, Direction j, const GAPair& pair) {
  const VertexSet G0j = g0_shift(torus, pair, j);
  return (J - pair.W) | torus.shift_set(J & (pair.W - G0j), j.reversed());
}

Direction choose_direction_small(const Torus& torus, const GAPair& pair) {
  Direction best(1);
  std::size_t best_size = 0;
  bool first = true;
  for (auto j : all_directions(torus.dim())) {
    const std::size_t s = g0_shift(torus, pair, j).size();
    if (first || s > best_size) {
      best = j;
      best_size = s;
      first = false;
    }
  }
  return best;
}

std::size_t shifted_overlap(const Torus& torus, const ApproxPair& fs, Direction j) {
  return (torus.shift_set(fs.S0, j) & fs.E0).size();
}

bool admissible_large(const Torus& torus, const GAPair& pair, const ApproxPair& fs, Direction j, double psi) {
  const std::size_t gj = g0_shift(torus, pair, j).size();
  const bool j1 = 5 * static_cast<long>(gj) > 4 * pair.t;
  const bool j2 = static_cast<double>(shifted_overlap(torus, fs, j)) * static_cast<double>(torus.degree()) <
                  10.0 * static_cast<double>(gj) * psi;
  return j1 && j2;
}

std::optional<Direction> choose_direction_large(const Torus& torus, const GAPair& pair, const ApproxPair& fs,
                                                double psi) {
  if (!(psi > 0)) throw std::invalid_argument("choose_direction_large: psi must be positive");
  for (auto j : all_directions(torus.dim()))
    if (admissible_large(torus, pair, fs, j, psi)) return j;
  return std::nullopt;
}

FlowConstants::FlowConstants(const Rational& lam) : lambda(lam) {
  const Rational one_plus = 1 + lam;
  alpha = lam / (one_plus * one_plus);
  beta = (1 + 2 * lam) / (one_plus * one_plus);
}

bool FlowConstants::valid() const {
  if (beta != 1 - alpha * lambda) return false;
  if (lambda <= 0) return true;
  return alpha > 0 && alpha < 1 && beta > 0 && beta < 1 && Rational(1) / (1 + lambda) < beta;
}

LargeFlowSplit large_flow_split(const Torus& torus, const GAPair& pair, const ApproxPair& fs, Direction j) {
  LargeFlowSplit s;
  const VertexSet G0j = g0_shift(torus, pair, j);
  const VertexSet sS0 = torus.shift_set(fs.S0, j);
  s.C = G0j & fs.F & sS0;
  s.D = G0j & (torus.shift_set(fs.T, j) | (sS0 & fs.E0));
  s.partition = !s.C.intersects(s.D) && (s.C | s.D) == G0j;
  return s;
}

Rational nu_small(const Rational& lambda, const ShiftData& sd, const VertexSet& J) {
  if (!in_phi(sd, J)) return 0;
  const long added = static_cast<long>(J.size()) - static_cast<long>(sd.base.size());
  return pow(lambda, added) * pow(1 + lambda, -static_cast<long>(sd.G0j.size()));
}

Rational nu_large(const FlowConstants& k, const ShiftData& sd, const VertexSet& C, const VertexSet& D,
                  const VertexSet& J) {
  if (!in_phi(sd, J)) return 0;
  const auto c_in = static_cast<long>((C & J).size());
  const auto c_out = static_cast<long>((C - J).size());
  const auto d_in = static_cast<long>((D & J).size());
  const auto d_out = static_cast<long>((D - J).size());
  const Rational one_plus = 1 + k.lambda;
  return pow(k.alpha * k.lambda, c_in) * pow(k.beta, c_out) * pow(k.lambda / one_plus, d_in) *
         pow(one_plus, -d_out);
}

FlowChoice choose_flow(const Torus& torus, const GAPair& pair, const FlowPolicy& policy) {
  FlowChoice c;
  if (pair.g <= policy.tau) {
    c.j = choose_direction_small(torus, pair);
    return c;
  }
  c.large = true;
  const double psi = policy.psi.value_or(std::sqrt(static_cast<double>(torus.dim())));
  const auto tr = pi(torus, pair, PiParams{psi});
  c.approx = tr.out();
  const auto j = choose_direction_large(torus, pair, *c.approx, psi);
  if (j) {
    c.j = *j;
  } else {
    c.fallback = true;
    c.j = choose_direction_small(torus, pair);
  }
  c.split = large_flow_split(torus, pair, *c.approx, c.j);
  return c;
}

bool DefectReport::ok() const {
  for (const auto& [name, n] : failures)
    if (n) return false;
  return identity && telescoping && prob_agrees && prob_below_max && row_sums;
}

DefectReport defect_audit(const Ensemble& e, const Activity& lambda, Vertex v0, const FlowPolicy& policy,
                          std::size_t budget, Exec exec) {
  const Rational& lam = lambda.value();
  if (lam <= 0) throw std::invalid_argument("defect_audit: lambda must be positive");
  const Torus& t = e.torus();
  const auto J0 = enumerate_J0(e, v0, budget, exec);
  const FlowConstants k(lam);

  struct Contribution {
    std::uint64_t J;
    Rational value;
  };
  struct Row {
    std::vector<Contribution> contributions;
    std::map<std::string, bool> checks;
    bool large = false;
    bool fallback = false;
    std::size_t covers = 0;
    std::size_t crossed = 0;
  };
  std::vector<Row> rows(J0.size());
  static const char* const kChecks[] = {"disjoint", "independent", "Gsum", "gojbig", "partition", "phi_in_J",
                                        "phi_size", "recover", "row_sum", "cover_structure"};

  auto work = [&](std::size_t i) {
    Row& r = rows[i];
    for (const char* name : kChecks) r.checks[name] = true;
    const VertexSet& I = J0[i];
    const auto tr = build_contour(e, I, v0);
    const GAPair pair = tr.pair();
    const auto choice = choose_flow(t, pair, policy);
    r.large = choice.large;
    r.fallback = choice.fallback;
    const auto sd = shift_data(t, pair, I, choice.j);
    r.checks["disjoint"] = sd.disjoint;
    r.checks["independent"] = sd.independent;
    r.checks["phi_size"] = !sd.base.intersects(sd.G0j);
    std::size_t gsum = 0;
    for (auto j : all_directions(t.dim())) gsum += g0_shift(t, pair, j).size();
    r.checks["Gsum"] = static_cast<long>(gsum) == pair.t * t.degree();
    if (!choice.large || choice.fallback) r.checks["gojbig"] = static_cast<long>(sd.G0j.size()) >= pair.t;
    if (choice.split) r.checks["partition"] = choice.split->partition;

    Rational row_sum = 0;
    const long isize = static_cast<long>(I.size());
    for_each_phi(sd, [&](const VertexSet& J) {
      if (!t.is_independent(J) || !e.frozen().subset_of(J)) r.checks["phi_in_J"] = false;
      if (recover(t, J, choice.j, pair) != I) r.checks["recover"] = false;
      const Rational nu =
          choice.large ? nu_large(k, sd, choice.split->C, choice.split->D, J) : nu_small(lam, sd, J);
      row_sum += nu;
      r.contributions.push_back({J.to_mask(), pow(lam, isize - static_cast<long>(J.size())) * nu});
      if (choice.large) {
        const auto cs = cover_structure(t, pair, *choice.approx, J, choice.j);
        ++r.covers;
        if (cs.cross_checked) ++r.crossed;
        if (!cs.ok()) r.checks["cover_structure"] = false;
      }
    });
    r.checks["row_sum"] = row_sum == 1;
  };
  const auto count = static_cast<std::int64_t>(J0.size());
  if (exec == Exec::serial) {
    for (std::int64_t i = 0; i < count; ++i) work(static_cast<std::size_t>(i));
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < count; ++i) work(static_cast<std::size_t>(i));
  }

  DefectReport rep;
  rep.J0_count = J0.size();
  for (const char* name : kChecks) rep.failures[name] = 0;
  struct Acc {
    Rational defect = 0;
    Rational best = 0;
    std::uint64_t argmax = 0;
  };
  std::map<std::uint64_t, Acc> acc;
  rep.weight_J0 = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    bool bad = false;
    for (const auto& [name, pass] : r.checks)
      if (!pass) {
        ++rep.failures[name];
        bad = true;
      }
    if (bad) rep.failing_I.push_back(J0[i].to_mask());
    rep.large_count += r.large ? 1 : 0;
    rep.fallback_count += r.fallback ? 1 : 0;
    rep.cover_checks += r.covers;
    rep.cover_cross_checked += r.crossed;
    rep.phi_members += r.contributions.size();
    rep.weight_J0 += pow(lam, static_cast<long>(J0[i].size()));
    for (const auto& c : r.contributions) {
      Acc& a = acc[c.J];
      a.defect += c.value;
      if (c.value > a.best) {
        a.best = c.value;
        a.argmax = J0[i].to_mask();
      }
    }
  }
  rep.row_sums = rep.failures["row_sum"] == 0;

  const auto counts = count_J(e, budget, exec);
  for (auto c : counts) rep.J_count += c;
  rep.weight_J = evaluate(counts, lam);
  rep.max_defect = 0;
  rep.weighted_defect_sum = 0;
  for (const auto& [J, a] : acc) {
    rep.rows.push_back({J, a.defect, a.argmax});
    rep.weighted_defect_sum += pow(lam, std::popcount(J)) * a.defect;
    if (a.defect > rep.max_defect) {
      rep.max_defect = a.defect;
      rep.argmax_J = J;
    }
  }
  rep.identity = rep.weight_J0 == rep.weighted_defect_sum;
  rep.telescoping = rep.weight_J0 <= rep.max_defect * rep.weight_J;
  rep.prob_J0_flow = rep.weight_J0 / rep.weight_J;
  rep.prob_J0_direct = prob_J0(e, lambda, v0, budget, exec);
  rep.prob_agrees = rep.prob_J0_flow == rep.prob_J0_direct;
  rep.prob_below_max = rep.prob_J0_flow <= rep.max_defect;
  return rep;
}

}  // namespace hardcore
