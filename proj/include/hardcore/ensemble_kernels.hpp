#pragma once

// Mask-level enumeration kernels for tori with at most 64 vertices. Each kernel has a
// serial reference and an OpenMP version that splits the search tree into prefix
// subcubes over the highest-index free sites; both visit the same masks.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "hardcore/ensemble.hpp"

namespace hardcore::kernels {

struct MaskModel {
  std::size_t n = 0;
  std::uint64_t frozen = 0;
  std::vector<std::uint64_t> nbr;    // neighbor mask per vertex
  std::vector<Vertex> free_desc;     // free sites, descending index
};

MaskModel make_mask_model(const Ensemble& e, std::size_t budget);

// Component of the graph restricted to `allowed` containing seed (seed must be allowed).
inline std::uint64_t reach(const MaskModel& m, std::uint64_t allowed, Vertex seed) {
  std::uint64_t seen = std::uint64_t{1} << seed;
  std::uint64_t frontier = seen;
  while (frontier) {
    std::uint64_t next = 0;
    while (frontier) {
      const int b = std::countr_zero(frontier);
      next |= m.nbr[static_cast<std::size_t>(b)];
      frontier &= frontier - 1;
    }
    next &= allowed & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen;
}

namespace detail {

template <class Visit>
void descend(const MaskModel& m, std::size_t pos, std::uint64_t set, Visit& visit) {
  if (pos == m.free_desc.size()) {
    visit(set);
    return;
  }
  const Vertex v = m.free_desc[pos];
  descend(m, pos + 1, set, visit);
  if ((m.nbr[v] & set) == 0) descend(m, pos + 1, set | (std::uint64_t{1} << v), visit);
}

// Prefix p assigns free_desc[i] for i < depth from bit depth-1-i of p; returns false
// if the prefix is not independent.
inline bool prefix_set(const MaskModel& m, std::size_t depth, std::uint64_t p, std::uint64_t& set) {
  set = m.frozen;
  for (std::size_t i = 0; i < depth; ++i) {
    if (!((p >> (depth - 1 - i)) & 1U)) continue;
    const Vertex v = m.free_desc[i];
    if (m.nbr[v] & set) return false;
    set |= std::uint64_t{1} << v;
  }
  return true;
}

inline std::size_t prefix_depth(const MaskModel& m) {
  return m.free_desc.size() < 12 ? m.free_desc.size() : 12;
}

}  // namespace detail

// Visits every member of J in ascending mask order.
template <class Visit>
void visit_serial(const MaskModel& m, Visit&& visit) {
  detail::descend(m, 0, m.frozen, visit);
}

// counts[k] += 1 for every visited mask of size k with pred(mask) true.
template <class Pred>
SizeCounts count_if_serial(const MaskModel& m, Pred&& pred) {
  SizeCounts counts(m.n + 1, 0);
  visit_serial(m, [&](std::uint64_t s) {
    if (pred(s)) ++counts[static_cast<std::size_t>(std::popcount(s))];
  });
  return counts;
}

template <class Pred>
SizeCounts count_if_parallel(const MaskModel& m, Pred&& pred) {
  const std::size_t depth = detail::prefix_depth(m);
  const auto prefixes = static_cast<std::int64_t>(std::uint64_t{1} << depth);
  SizeCounts total(m.n + 1, 0);
#pragma omp parallel
  {
    SizeCounts local(m.n + 1, 0);
#pragma omp for schedule(dynamic, 16) nowait
    for (std::int64_t p = 0; p < prefixes; ++p) {
      std::uint64_t set;
      if (!detail::prefix_set(m, depth, static_cast<std::uint64_t>(p), set)) continue;
      auto visit = [&](std::uint64_t s) {
        if (pred(s)) ++local[static_cast<std::size_t>(std::popcount(s))];
      };
      detail::descend(m, depth, set, visit);
    }
#pragma omp critical
    for (std::size_t k = 0; k < total.size(); ++k) total[k] += local[k];
  }
  return total;
}

inline std::vector<std::uint64_t> collect_serial(const MaskModel& m) {
  std::vector<std::uint64_t> out;
  visit_serial(m, [&](std::uint64_t s) { out.push_back(s); });
  return out;
}

inline std::vector<std::uint64_t> collect_parallel(const MaskModel& m) {
  const std::size_t depth = detail::prefix_depth(m);
  const auto prefixes = static_cast<std::int64_t>(std::uint64_t{1} << depth);
  std::vector<std::vector<std::uint64_t>> parts(static_cast<std::size_t>(prefixes));
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t p = 0; p < prefixes; ++p) {
    std::uint64_t set;
    if (!detail::prefix_set(m, depth, static_cast<std::uint64_t>(p), set)) continue;
    auto& part = parts[static_cast<std::size_t>(p)];
    auto visit = [&](std::uint64_t s) { part.push_back(s); };
    detail::descend(m, depth, set, visit);
  }
  std::size_t total = 0;
  for (const auto& part : parts) total += part.size();
  std::vector<std::uint64_t> out;
  out.reserve(total);
  for (const auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

template <class Pred>
SizeCounts count_if(const MaskModel& m, Exec exec, Pred&& pred) {
  return exec == Exec::serial ? count_if_serial(m, pred) : count_if_parallel(m, pred);
}

}  // namespace hardcore::kernels
