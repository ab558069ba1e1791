#include "hardcore/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace hardcore {

std::string to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

std::vector<Direction> all_directions(int d) {
  std::vector<Direction> out;
  out.reserve(static_cast<std::size_t>(2 * d));
  for (int a = 1; a <= d; ++a) {
    out.emplace_back(a);
    out.emplace_back(-a);
  }
  return out;
}

Torus Torus::make(int d, int M, std::size_t vertex_budget) {
  if (d < 1) throw std::invalid_argument("Torus: dimension must be >= 1");
  if (M < 2) throw std::invalid_argument("Torus: half-side M must be >= 2");
  std::size_t n = 1;
  for (int i = 0; i < d; ++i) {
    n *= static_cast<std::size_t>(2 * M);
    if (n > vertex_budget) throw std::invalid_argument("Torus: vertex count exceeds budget");
  }

  Torus t;
  t.d_ = d;
  t.M_ = M;
  t.n_ = n;
  const auto side = static_cast<std::size_t>(2 * M);
  const auto deg = static_cast<std::size_t>(2 * d);
  t.nbr_.resize(n * deg);
  t.parity_.resize(n);
  t.even_ = VertexSet(n);
  t.delta_ = VertexSet(n);

  std::vector<std::size_t> stride(static_cast<std::size_t>(d));
  {
    std::size_t s = 1;
    for (int a = d - 1; a >= 0; --a) {
      stride[static_cast<std::size_t>(a)] = s;
      s *= side;
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    int sum = 0;
    bool on_face = false;
    for (int a = 0; a < d; ++a) {
      const auto ua = static_cast<std::size_t>(a);
      const std::size_t off = (v / stride[ua]) % side;
      const int c = static_cast<int>(off) - (M - 1);
      sum += c;
      on_face = on_face || c == M;
      const std::size_t up = (off + 1) % side;
      const std::size_t down = (off + side - 1) % side;
      t.nbr_[v * deg + 2 * ua] = static_cast<Vertex>(v - off * stride[ua] + up * stride[ua]);
      t.nbr_[v * deg + 2 * ua + 1] = static_cast<Vertex>(v - off * stride[ua] + down * stride[ua]);
    }
    const bool odd = (sum % 2) != 0;
    t.parity_[v] = odd ? 1 : 0;
    if (!odd) t.even_.insert(static_cast<Vertex>(v));
    if (on_face) t.delta_.insert(static_cast<Vertex>(v));
  }
  return t;
}

std::vector<int> Torus::coords(Vertex v) const {
  std::vector<int> c(static_cast<std::size_t>(d_));
  std::size_t rest = v;
  const auto side = static_cast<std::size_t>(2 * M_);
  for (int a = d_ - 1; a >= 0; --a) {
    c[static_cast<std::size_t>(a)] = static_cast<int>(rest % side) - (M_ - 1);
    rest /= side;
  }
  return c;
}

Vertex Torus::vertex_at(std::span<const int> coords) const {
  if (coords.size() != static_cast<std::size_t>(d_))
    throw std::invalid_argument("vertex_at: coordinate count must equal dimension");
  const int side = 2 * M_;
  std::size_t v = 0;
  for (int c : coords) {
    const int off = (((c + (M_ - 1)) % side) + side) % side;
    v = v * static_cast<std::size_t>(side) + static_cast<std::size_t>(off);
  }
  return static_cast<Vertex>(v);
}

Vertex Torus::origin() const {
  std::vector<int> zero(static_cast<std::size_t>(d_), 0);
  return vertex_at(zero);
}

int Torus::distance(Vertex u, Vertex v) const {
  const auto cu = coords(u);
  const auto cv = coords(v);
  int dist = 0;
  for (std::size_t a = 0; a < cu.size(); ++a) {
    const int diff = std::abs(cu[a] - cv[a]);
    dist += std::min(diff, 2 * M_ - diff);
  }
  return dist;
}

VertexSet Torus::neighbor_set(Vertex v) const {
  VertexSet s(n_);
  for (auto w : neighbors(v)) s.insert(w);
  return s;
}

VertexSet Torus::neighborhood(const VertexSet& s) const {
  VertexSet out(n_);
  s.for_each([&](Vertex v) {
    for (auto w : neighbors(v)) out.insert(w);
  });
  return out;
}

VertexSet Torus::external_boundary(const VertexSet& s) const { return neighborhood(s) - s; }

VertexSet Torus::internal_boundary(const VertexSet& s) const {
  VertexSet out(n_);
  s.for_each([&](Vertex v) {
    for (auto w : neighbors(v)) {
      if (!s.contains(w)) {
        out.insert(v);
        return;
      }
    }
  });
  return out;
}

std::size_t Torus::edge_boundary(const VertexSet& s, const VertexSet& t) const {
  std::size_t n = 0;
  s.for_each([&](Vertex v) {
    for (auto w : neighbors(v)) n += t.contains(w) ? 1 : 0;
  });
  return n;
}

int Torus::degree_into(Vertex v, const VertexSet& s) const {
  int n = 0;
  for (auto w : neighbors(v)) n += s.contains(w) ? 1 : 0;
  return n;
}

VertexSet Torus::shift_set(const VertexSet& s, Direction j) const {
  VertexSet out(n_);
  s.for_each([&](Vertex v) { out.insert(shift(v, j)); });
  return out;
}

bool Torus::is_independent(const VertexSet& s) const {
  bool ok = true;
  s.for_each([&](Vertex v) {
    for (auto w : neighbors(v)) ok = ok && !s.contains(w);
  });
  return ok;
}

VertexSet Torus::component(const VertexSet& excluded, Vertex seed) const {
  if (seed >= n_) throw std::out_of_range("component: seed outside torus");
  if (excluded.contains(seed)) throw std::invalid_argument("component: seed is excluded");
  VertexSet seen(n_);
  std::vector<Vertex> queue{seed};
  seen.insert(seed);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (auto w : neighbors(queue[head])) {
      if (excluded.contains(w) || seen.contains(w)) continue;
      seen.insert(w);
      queue.push_back(w);
    }
  }
  return seen;
}

bool Torus::is_connected(const VertexSet& s) const {
  if (s.empty()) return true;
  return component(s.complement(), s.first()) == s;
}

namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
  std::vector<std::size_t> parent;
};

}  // namespace

bool Torus::is_c_clustered(const VertexSet& t, int c) const {
  if (c < 1) throw std::invalid_argument("is_c_clustered: c must be >= 1");
  const auto members = t.to_vector();
  if (members.size() <= 1) return true;
  DisjointSets ds(members.size());
  std::size_t merges = 0;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t k = i + 1; k < members.size(); ++k)
      if (distance(members[i], members[k]) <= c && ds.unite(i, k)) ++merges;
  return merges + 1 == members.size();
}

bool Torus::is_c_clustered_within(const VertexSet& t, int c, const VertexSet& region) const {
  if (c < 1) throw std::invalid_argument("is_c_clustered_within: c must be >= 1");
  if (!t.subset_of(region)) return false;
  const auto members = t.to_vector();
  if (members.size() <= 1) return true;
  std::vector<int> index(n_, -1);
  for (std::size_t i = 0; i < members.size(); ++i) index[members[i]] = static_cast<int>(i);

  DisjointSets ds(members.size());
  std::vector<int> depth(n_, -1);
  std::vector<Vertex> queue;
  for (std::size_t i = 0; i < members.size(); ++i) {
    queue.assign(1, members[i]);
    std::fill(depth.begin(), depth.end(), -1);
    depth[members[i]] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex u = queue[head];
      if (index[u] >= 0) ds.unite(i, static_cast<std::size_t>(index[u]));
      if (depth[u] == c) continue;
      for (auto w : neighbors(u)) {
        if (!region.contains(w) || depth[w] >= 0) continue;
        depth[w] = depth[u] + 1;
        queue.push_back(w);
      }
    }
  }
  const std::size_t root = ds.find(0);
  for (std::size_t i = 1; i < members.size(); ++i)
    if (ds.find(i) != root) return false;
  return true;
}

std::string Torus::format_vertex(Vertex v) const {
  std::ostringstream os;
  os << '(';
  const auto c = coords(v);
  for (std::size_t a = 0; a < c.size(); ++a) os << (a ? "," : "") << c[a];
  os << ')';
  return os.str();
}

}  // namespace hardcore
