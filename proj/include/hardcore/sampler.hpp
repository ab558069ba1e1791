#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hardcore/ensemble.hpp"

namespace hardcore {

// Reproducible random stream keyed by (seed, replica).
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t stream);
  std::uint64_t next() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  // Uniform in [0, n), n > 0 (Lemire's multiply-shift with rejection).
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

// Heat-bath chain for the conditioned hard-core measure. Starts from the frozen set.
class ChainState {
 public:
  ChainState(const Ensemble& e, std::uint64_t seed, std::uint64_t stream = 0);
  // site_order lists the non-frozen vertices in the order used for uniform selection.
  ChainState(const Ensemble& e, std::uint64_t seed, std::uint64_t stream, std::vector<Vertex> site_order);

  const Torus& torus() const { return torus_; }
  const VertexSet& frozen() const { return frozen_; }
  bool occupied(Vertex v) const { return occ_[v] != 0; }
  VertexSet occupancy() const;
  const std::vector<Vertex>& sites() const { return sites_; }
  std::uint64_t steps() const { return steps_; }
  std::uint64_t sweeps() const { return sweeps_; }

  // One heat-bath update at a uniformly chosen unfrozen vertex; p = λ/(1+λ).
  void update(double occupy_probability);
  // (vertex_count - |frozen|) updates.
  void sweep(double occupy_probability);

  bool check_invariants() const;

 private:
  void place(Vertex v);
  void remove(Vertex v);

  Torus torus_;
  VertexSet frozen_;
  std::vector<Vertex> sites_;
  std::vector<std::uint8_t> occ_;
  std::vector<std::uint16_t> blocked_;  // occupied-neighbor counts
  StreamRng rng_;
  std::uint64_t steps_ = 0;
  std::uint64_t sweeps_ = 0;
};

void glauber_step(ChainState& s, double lambda);

struct EstimateReport {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t sweeps = 0;
  std::uint64_t burn_in = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::size_t batches = 0;
  // First and second halves of the batch means disagree by more than 4 standard errors.
  bool burn_in_suspect = false;
};

inline constexpr std::size_t kBatchCount = 100;

// Batch-means summary of a 0/1 series (or any real series).
EstimateReport batch_means(const std::vector<double>& series, std::size_t batches = kBatchCount);

// `sweeps` counts every sweep including burn-in; one sample of [v0 ∈ I] per post-burn-in sweep.
EstimateReport estimate_occupation(const Ensemble& e, double lambda, Vertex v0, std::uint64_t sweeps,
                                   std::uint64_t burn_in, std::uint64_t seed, std::uint64_t stream = 0);

struct GapRow {
  double lambda = 0.0;
  EstimateReport even;
  EstimateReport odd;
  double gap() const { return even.estimate - odd.estimate; }
  double gap_std_error() const;
};

// Paired even/odd boundary estimates at an even v0; replica 2i is even, 2i+1 odd.
std::vector<GapRow> gap_scan(const Torus& torus, const std::vector<double>& lambdas, Vertex v0,
                             std::uint64_t sweeps, std::uint64_t burn_in, std::uint64_t seed,
                             Exec exec = Exec::parallel);

// Runs a chain and keeps configurations accepted by `keep`, one look per `thin` sweeps.
template <class Keep>
std::vector<VertexSet> collect_samples(ChainState& chain, double lambda, std::uint64_t burn_in,
                                       std::uint64_t thin, std::size_t count, std::uint64_t max_sweeps,
                                       Keep&& keep) {
  const double p = lambda / (1.0 + lambda);
  for (std::uint64_t s = 0; s < burn_in; ++s) chain.sweep(p);
  std::vector<VertexSet> out;
  std::uint64_t used = 0;
  while (out.size() < count && used < max_sweeps) {
    for (std::uint64_t s = 0; s < thin; ++s) chain.sweep(p);
    used += thin;
    auto occ = chain.occupancy();
    if (keep(occ)) out.push_back(std::move(occ));
  }
  return out;
}

std::string estimate_csv_header();
std::string estimate_csv_row(const Ensemble& e, double lambda, Vertex v0, const EstimateReport& r);

}  // namespace hardcore
