#include "hardcore/sampler.hpp"

#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hardcore {

namespace {

std::mt19937_64 keyed_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

StreamRng::StreamRng(std::uint64_t seed, std::uint64_t stream) : engine_(keyed_engine(seed, stream)) {}

std::uint64_t StreamRng::below(std::uint64_t n) {
  using u128 = unsigned __int128;
  u128 m = static_cast<u128>(next()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<u128>(next()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

ChainState::ChainState(const Ensemble& e, std::uint64_t seed, std::uint64_t stream)
    : ChainState(e, seed, stream, (e.frozen().complement()).to_vector()) {}

ChainState::ChainState(const Ensemble& e, std::uint64_t seed, std::uint64_t stream, std::vector<Vertex> site_order)
    : torus_(e.torus()),
      frozen_(e.frozen()),
      sites_(std::move(site_order)),
      occ_(e.torus().vertex_count(), 0),
      blocked_(e.torus().vertex_count(), 0),
      rng_(seed, stream) {
  if (VertexSet::from_vertices(torus_.vertex_count(), sites_) != frozen_.complement() ||
      sites_.size() != torus_.vertex_count() - frozen_.size())
    throw std::invalid_argument("ChainState: site order must list each unfrozen vertex once");
  frozen_.for_each([&](Vertex v) { place(v); });
}

void ChainState::place(Vertex v) {
  occ_[v] = 1;
  for (auto w : torus_.neighbors(v)) ++blocked_[w];
}

void ChainState::remove(Vertex v) {
  occ_[v] = 0;
  for (auto w : torus_.neighbors(v)) --blocked_[w];
}

void ChainState::update(double occupy_probability) {
  ++steps_;
  if (sites_.empty()) return;
  const Vertex v = sites_[rng_.below(sites_.size())];
  if (blocked_[v] != 0) return;  // a neighbor is occupied, so v is already vacant
  const bool want = rng_.uniform() < occupy_probability;
  if (want && !occ_[v]) place(v);
  else if (!want && occ_[v]) remove(v);
}

void ChainState::sweep(double occupy_probability) {
  for (std::size_t i = 0; i < sites_.size(); ++i) update(occupy_probability);
  ++sweeps_;
}

VertexSet ChainState::occupancy() const {
  VertexSet s(torus_.vertex_count());
  for (Vertex v = 0; v < occ_.size(); ++v)
    if (occ_[v]) s.insert(v);
  return s;
}

bool ChainState::check_invariants() const {
  const auto occ = occupancy();
  return torus_.is_independent(occ) && frozen_.subset_of(occ);
}

void glauber_step(ChainState& s, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("glauber_step: lambda must be positive");
  s.update(lambda / (1.0 + lambda));
}

EstimateReport batch_means(const std::vector<double>& series, std::size_t batches) {
  EstimateReport r;
  if (series.empty()) return r;
  r.estimate = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(series.size());
  const std::size_t per = series.size() / batches;
  if (per == 0) return r;
  std::vector<double> means(batches, 0.0);
  for (std::size_t b = 0; b < batches; ++b) {
    double acc = 0.0;
    for (std::size_t i = b * per; i < (b + 1) * per; ++i) acc += series[i];
    means[b] = acc / static_cast<double>(per);
  }
  const double grand = std::accumulate(means.begin(), means.end(), 0.0) / static_cast<double>(batches);
  double var = 0.0;
  for (double m : means) var += (m - grand) * (m - grand);
  var /= static_cast<double>(batches - 1);
  r.std_error = std::sqrt(var / static_cast<double>(batches));
  r.batches = batches;

  const std::size_t half = batches / 2;
  const double first = std::accumulate(means.begin(), means.begin() + static_cast<std::ptrdiff_t>(half), 0.0) /
                       static_cast<double>(half);
  const double second = std::accumulate(means.begin() + static_cast<std::ptrdiff_t>(half), means.end(), 0.0) /
                        static_cast<double>(batches - half);
  const double half_se = std::sqrt(2.0 * var / static_cast<double>(half));
  r.burn_in_suspect = std::abs(first - second) > 4.0 * half_se && half_se > 0.0;
  return r;
}

EstimateReport estimate_occupation(const Ensemble& e, double lambda, Vertex v0, std::uint64_t sweeps,
                                   std::uint64_t burn_in, std::uint64_t seed, std::uint64_t stream) {
  if (sweeps <= burn_in) throw std::invalid_argument("estimate_occupation: sweeps must exceed burn_in");
  if (!(lambda > 0.0)) throw std::invalid_argument("estimate_occupation: lambda must be positive");
  if (v0 >= e.torus().vertex_count()) throw std::out_of_range("estimate_occupation: v0 outside torus");
  ChainState chain(e, seed, stream);
  const double p = lambda / (1.0 + lambda);
  for (std::uint64_t s = 0; s < burn_in; ++s) chain.sweep(p);
  std::vector<double> series;
  series.reserve(static_cast<std::size_t>(sweeps - burn_in));
  for (std::uint64_t s = burn_in; s < sweeps; ++s) {
    chain.sweep(p);
    series.push_back(chain.occupied(v0) ? 1.0 : 0.0);
  }
  EstimateReport r = batch_means(series);
  r.sweeps = sweeps;
  r.burn_in = burn_in;
  r.seed = seed;
  r.stream = stream;
  return r;
}

double GapRow::gap_std_error() const { return std::hypot(even.std_error, odd.std_error); }

std::vector<GapRow> gap_scan(const Torus& torus, const std::vector<double>& lambdas, Vertex v0,
                             std::uint64_t sweeps, std::uint64_t burn_in, std::uint64_t seed, Exec exec) {
  if (torus.parity(v0) != Parity::even) throw std::invalid_argument("gap_scan: v0 must be even");
  const Ensemble even(torus, Boundary::even);
  const Ensemble odd(torus, Boundary::odd);
  std::vector<GapRow> rows(lambdas.size());
  const auto tasks = static_cast<std::int64_t>(2 * lambdas.size());
  auto run = [&](std::int64_t task) {
    const auto i = static_cast<std::size_t>(task / 2);
    const bool is_even = task % 2 == 0;
    auto r = estimate_occupation(is_even ? even : odd, lambdas[i], v0, sweeps, burn_in, seed,
                                 static_cast<std::uint64_t>(task));
    rows[i].lambda = lambdas[i];
    (is_even ? rows[i].even : rows[i].odd) = r;
  };
  if (exec == Exec::serial) {
    for (std::int64_t task = 0; task < tasks; ++task) run(task);
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t task = 0; task < tasks; ++task) run(task);
  }
  return rows;
}

std::string estimate_csv_header() { return "d,M,lambda,boundary,v0,estimate,stderr,sweeps,burn_in,seed"; }

std::string estimate_csv_row(const Ensemble& e, double lambda, Vertex v0, const EstimateReport& r) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << e.torus().dim() << ',' << e.torus().half_side() << ',' << lambda << ',' << to_string(e.boundary()) << ",\""
     << e.torus().format_vertex(v0) << "\"," << r.estimate << ',' << r.std_error << ',' << r.sweeps << ','
     << r.burn_in << ',' << r.seed;
  return os.str();
}

}  // namespace hardcore
