#include "hardcore/contour.hpp"

#include <stdexcept>

namespace hardcore {

Sides sides_of(const Ensemble& e) {
  const auto outer = e.outer_parity();
  if (!outer) throw std::invalid_argument("contour: needs an even or odd boundary");
  return {*outer, opposite(*outer)};
}

namespace {

Vertex delta_seed(const Torus& t, const VertexSet& excluded) {
  const VertexSet avail = t.delta() - excluded;
  if (avail.empty()) throw std::invalid_argument("contour: no usable vertex in Δ");
  return avail.first();
}

VertexSet z_of(const Ensemble& e, const VertexSet& I, Parity inner) {
  const Torus& t = e.torus();
  const VertexSet removed = I & t.parity_class(inner);
  return t.component(removed, delta_seed(t, removed));
}

}  // namespace

bool in_J0(const Ensemble& e, const VertexSet& I, Vertex v0) {
  const auto s = sides_of(e);
  if (e.torus().parity(v0) != s.inner) throw std::invalid_argument("in_J0: v0 must have inner parity");
  return !z_of(e, I, s.inner).contains(v0);
}

bool satisfies_GA3(const Torus& torus, Parity g_parity, const VertexSet& G, const VertexSet& A) {
  if (!G.subset_of(torus.parity_class(g_parity))) return false;
  if (!A.subset_of(torus.parity_class(opposite(g_parity)))) return false;
  if (torus.neighborhood(A) != G) return false;
  VertexSet closure = torus.empty_set();
  torus.parity_class(opposite(g_parity)).for_each([&](Vertex x) {
    bool inside = true;
    for (auto w : torus.neighbors(x))
      if (!G.contains(w)) {
        inside = false;
        break;
      }
    if (inside) closure.insert(x);
  });
  return closure == A;
}

GAPair GAPair::make(const Torus& torus, Parity g_parity, VertexSet G, VertexSet A) {
  GAPair p;
  p.g_parity = g_parity;
  p.G = std::move(G);
  p.A = std::move(A);
  p.W = p.G | p.A;
  p.G0 = torus.internal_boundary(p.W);
  p.g = p.G.size();
  p.a = p.A.size();
  p.t = static_cast<long>(p.g) - static_cast<long>(p.a);
  return p;
}

GAPair GAPair::from_A(const Torus& torus, Parity g_parity, VertexSet A) {
  VertexSet G = torus.neighborhood(A);
  return make(torus, g_parity, std::move(G), std::move(A));
}

GAPair GAPair::dual(const Torus& torus) const {
  return make(torus, a_parity(), torus.parity_class(a_parity()) - A, torus.parity_class(g_parity) - G);
}

GAPair ContourTrace::pair() const {
  GAPair p;
  p.g_parity = sides.outer;
  p.G = G;
  p.A = A;
  p.W = W;
  p.G0 = G0;
  p.g = g;
  p.a = a;
  p.t = t;
  return p;
}

ContourTrace build_contour(const Ensemble& e, const VertexSet& I, Vertex v0) {
  const Torus& t = e.torus();
  const auto s = sides_of(e);
  if (t.parity(v0) != s.inner) throw std::invalid_argument("build_contour: v0 must have inner parity");
  ContourTrace tr;
  tr.v0 = v0;
  tr.sides = s;
  tr.I = I;
  tr.Z = z_of(e, I, s.inner);
  if (tr.Z.contains(v0)) throw std::invalid_argument("build_contour: configuration is not in J0");
  tr.Z0 = t.internal_boundary(tr.Z);
  tr.W1 = t.component(tr.Z - tr.Z0, v0);
  tr.W2 = tr.W1;
  t.parity_class(s.inner).for_each([&](Vertex x) {
    for (auto w : t.neighbors(x))
      if (!tr.W1.contains(w)) return;
    tr.W2.insert(x);
  });
  const VertexSet core = tr.W2 - t.internal_boundary(tr.W2);
  tr.C = t.component(core, delta_seed(t, core));
  tr.W = t.all() - (tr.C - t.internal_boundary(tr.C));
  tr.G = tr.W & t.parity_class(s.outer);
  tr.A = tr.W & t.parity_class(s.inner);
  tr.G0 = t.internal_boundary(tr.W);
  tr.H = t.parity_class(s.outer) - tr.G;
  tr.B = t.parity_class(s.inner) - tr.A;
  tr.B0 = tr.B & t.neighborhood(tr.G);
  tr.g = tr.G.size();
  tr.a = tr.A.size();
  tr.t = static_cast<long>(tr.g) - static_cast<long>(tr.a);
  return tr;
}

bool ContourProperties::all() const {
  return GA0 && GA1 && GA2 && GA3 && GA5 && GA6 && GA7 && G0_clustered && G0_clustered_in_W && G0_clustered_in_C &&
         nabla && delta_in_Z;
}

nlohmann::json ContourProperties::to_json() const {
  return {{"GA0", GA0},
          {"GA1", GA1},
          {"GA2", GA2},
          {"GA3", GA3},
          {"GA5", GA5},
          {"GA6", GA6},
          {"GA7", GA7},
          {"G0_clustered", G0_clustered},
          {"G0_clustered_in_W", G0_clustered_in_W},
          {"G0_clustered_in_C", G0_clustered_in_C},
          {"nabla", nabla},
          {"delta_in_Z", delta_in_Z}};
}

ContourProperties check_contour(const Ensemble& e, const ContourTrace& tr) {
  const Torus& t = e.torus();
  ContourProperties p;
  p.GA0 = tr.A.contains(tr.v0) && !tr.W.intersects(t.delta());
  p.GA1 = t.is_connected(tr.C) && t.is_connected(tr.W);
  p.GA2 = tr.G0 == t.internal_boundary(tr.C);
  p.GA3 = satisfies_GA3(t, tr.sides.outer, tr.G, tr.A);
  p.GA5 = !tr.G0.intersects(tr.I);
  p.GA6 = (t.neighborhood(tr.G0) & tr.I).subset_of(tr.A);
  p.GA7 = tr.G0.subset_of(t.neighborhood(tr.A & tr.I));
  p.G0_clustered = t.is_c_clustered(tr.G0, 2);
  p.G0_clustered_in_W = t.is_c_clustered_within(tr.G0, 2, tr.W);
  p.G0_clustered_in_C = t.is_c_clustered_within(tr.G0, 2, t.all() - (tr.W - tr.G0));
  const auto expected = static_cast<std::size_t>(tr.t) * static_cast<std::size_t>(t.degree());
  p.nabla = tr.t >= 0 && t.edge_boundary(tr.W, t.all() - tr.W) == expected &&
            t.edge_boundary(tr.G0, t.parity_class(tr.sides.inner) - tr.A) == expected;
  p.delta_in_Z = t.delta().subset_of(tr.Z);
  return p;
}

nlohmann::json contour_record(const ContourTrace& tr, const ContourProperties& p) {
  return {{"I_mask", tr.I.to_hex()}, {"g", tr.g}, {"a", tr.a}, {"t", tr.t}, {"properties", p.to_json()}};
}

bool internal_boundary_lemma_holds(const Torus& torus, const VertexSet& S) {
  const VertexSet bS = torus.internal_boundary(S);
  const VertexSet removed = S - bS;
  VertexSet seen = removed;
  for (Vertex v = 0; v < torus.vertex_count(); ++v) {
    if (seen.contains(v)) continue;
    const VertexSet T = torus.component(removed, v);
    seen |= T;
    if (!torus.internal_boundary(T).subset_of(bS)) return false;
  }
  return true;
}

void for_each_GA_pair(const Torus& torus, Parity g_parity, const GAEnumOptions& opts,
                      const std::function<void(const GAPair&)>& visit) {
  const Parity ap = opposite(g_parity);
  VertexSet pool = torus.parity_class(ap);
  if (opts.inside) pool -= torus.delta();
  VertexSet base = torus.empty_set();
  if (opts.v0) {
    if (!pool.contains(*opts.v0)) return;
    base.insert(*opts.v0);
    pool.erase(*opts.v0);
  }
  const auto cand = pool.to_vector();
  if (cand.size() > opts.budget || cand.size() >= 63) throw std::length_error("enumerate_GA_pairs: budget exceeded");
  const std::uint64_t limit = std::uint64_t{1} << cand.size();
  for (std::uint64_t m = 0; m < limit; ++m) {
    const std::size_t extra = static_cast<std::size_t>(std::popcount(m));
    if (opts.a && extra + base.size() != *opts.a) continue;
    VertexSet A = base;
    for (std::size_t i = 0; i < cand.size(); ++i)
      if ((m >> i) & 1U) A.insert(cand[i]);
    VertexSet G = torus.neighborhood(A);
    if (opts.g && G.size() != *opts.g) continue;
    if (opts.inside && G.intersects(torus.delta())) continue;
    if (!satisfies_GA3(torus, g_parity, G, A)) continue;
    visit(GAPair::make(torus, g_parity, std::move(G), std::move(A)));
  }
}

std::vector<GAPair> enumerate_GA_pairs(const Torus& torus, Parity g_parity, const GAEnumOptions& opts) {
  std::vector<GAPair> out;
  for_each_GA_pair(torus, g_parity, opts, [&](const GAPair& p) { out.push_back(p); });
  return out;
}

ContourAuditReport contour_audit(const Ensemble& e, Vertex v0, const std::vector<VertexSet>& configs, Exec exec) {
  struct Row {
    bool in_j0 = false;
    ContourProperties props;
    nlohmann::json record;
    std::string key;
  };
  std::vector<Row> rows(configs.size());
  auto work = [&](std::size_t i) {
    Row& r = rows[i];
    r.in_j0 = in_J0(e, configs[i], v0);
    if (!r.in_j0) {
      r.record = {{"I_mask", configs[i].to_hex()}, {"error", "not in J0"}};
      return;
    }
    const auto tr = build_contour(e, configs[i], v0);
    r.props = check_contour(e, tr);
    r.record = contour_record(tr, r.props);
    r.key = tr.A.to_hex();
  };
  const auto n = static_cast<std::int64_t>(configs.size());
  if (exec == Exec::serial) {
    for (std::int64_t i = 0; i < n; ++i) work(static_cast<std::size_t>(i));
  } else {
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < n; ++i) work(static_cast<std::size_t>(i));
  }

  ContourAuditReport rep;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Row& r = rows[i];
    ++rep.audited;
    bool ok = r.in_j0 && r.props.all();
    if (!r.in_j0) {
      ++rep.property_failures["in_J0"];
    } else {
      const auto props = r.props.to_json();
      for (const auto& [name, value] : props.items())
        if (!value.get<bool>()) ++rep.property_failures[name];
      ++rep.multiplicity[r.key];
    }
    if (!ok) {
      ++rep.failures;
      rep.failing.push_back(configs[i]);
    }
    rep.records.push_back(std::move(r.record));
  }
  return rep;
}

std::vector<VertexSet> enumerate_J0(const Ensemble& e, Vertex v0, std::size_t budget, Exec exec) {
  const auto masks = enumerate_J(e, budget, exec);
  const std::size_t n = e.torus().vertex_count();
  std::vector<char> keep(masks.size(), 0);
  const auto count = static_cast<std::int64_t>(masks.size());
  auto test = [&](std::int64_t i) {
    keep[static_cast<std::size_t>(i)] = in_J0(e, VertexSet::from_mask(n, masks[static_cast<std::size_t>(i)]), v0);
  };
  if (exec == Exec::serial) {
    for (std::int64_t i = 0; i < count; ++i) test(i);
  } else {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) test(i);
  }
  std::vector<VertexSet> out;
  for (std::size_t i = 0; i < masks.size(); ++i)
    if (keep[i]) out.push_back(VertexSet::from_mask(n, masks[i]));
  return out;
}

}  // namespace hardcore
