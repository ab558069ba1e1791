#include <random>

#include "doctest.h"
#include "hardcore/graph.hpp"
#include "hardcore/lattice.hpp"
#include "oracle.hpp"

using namespace hardcore;

namespace {

Vertex at(const Torus& t, std::vector<int> c) { return t.vertex_at(c); }

VertexSet random_set(const Torus& t, std::mt19937_64& rng, double p) {
  std::bernoulli_distribution coin(p);
  VertexSet s = t.empty_set();
  for (Vertex v = 0; v < t.vertex_count(); ++v)
    if (coin(rng)) s.insert(v);
  return s;
}

}  // namespace

TEST_CASE("torus construction") {
  const Torus t = Torus::make(2, 2);
  CHECK(t.vertex_count() == 16);
  for (Vertex v = 0; v < 16; ++v) CHECK(t.neighbor_set(v).size() == 4);
  const Torus t3 = Torus::make(3, 2);
  CHECK(t3.vertex_count() == 64);
  for (Vertex v = 0; v < 64; ++v) CHECK(t3.neighbor_set(v).size() == 6);
  CHECK_THROWS_AS(Torus::make(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(Torus::make(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(Torus::make(3, 4, 100), std::invalid_argument);
}

TEST_CASE("parity") {
  const Torus t = Torus::make(2, 2);
  CHECK(t.parity(at(t, {0, 0})) == Parity::even);
  CHECK(t.parity(at(t, {1, 0})) == Parity::odd);
  CHECK(t.parity(at(t, {1, 1})) == Parity::even);
  CHECK(t.parity_class(Parity::even).size() == 8);
  CHECK(t.parity_class(Parity::odd).size() == 8);
}

TEST_CASE("shift") {
  const Torus t = Torus::make(2, 2);
  CHECK(t.shift(at(t, {1, 1}), Direction(-2)) == at(t, {1, 0}));
  CHECK(t.shift(at(t, {0, 2}), Direction(2)) == at(t, {0, -1}));
  for (Vertex v = 0; v < t.vertex_count(); ++v)
    for (auto j : all_directions(2)) CHECK(t.shift(t.shift(v, j), j.reversed()) == v);
}

TEST_CASE("coordinates and indexing") {
  const Torus t = Torus::make(3, 2);
  for (Vertex v = 0; v < t.vertex_count(); ++v) CHECK(t.vertex_at(t.coords(v)) == v);
  CHECK(t.coords(t.origin()) == std::vector<int>{0, 0, 0});
  CHECK(t.format_vertex(at(t, {1, 0, 2})) == "(1,0,2)");
}

TEST_CASE("delta set") {
  CHECK(Torus::make(2, 2).delta().size() == 7);
  CHECK(Torus::make(1, 2).delta().size() == 1);
  CHECK(Torus::make(3, 2).delta().size() == 37);
  const Torus t = Torus::make(2, 3);
  t.delta().for_each([&](Vertex v) {
    const auto c = t.coords(v);
    CHECK((c[0] == 3 || c[1] == 3));
  });
}

TEST_CASE("neighborhood operations") {
  const Torus t = Torus::make(2, 2);
  CHECK(t.internal_boundary(t.all()).empty());
  const Vertex v = at(t, {0, 0});
  VertexSet single = t.empty_set();
  single.insert(v);
  CHECK(t.external_boundary(single) == t.neighbor_set(v));
  CHECK(t.edge_boundary(single, t.all() - single) == 4);
  CHECK(t.neighborhood(single) == t.neighbor_set(v));
  CHECK(t.internal_boundary(single) == single);
  CHECK(t.degree_into(v, t.parity_class(Parity::odd)) == 4);
}

TEST_CASE("components") {
  const Torus t = Torus::make(2, 2);
  const Vertex v = at(t, {0, 0});
  CHECK(t.component(t.empty_set(), v) == t.all());
  VertexSet only = t.empty_set();
  only.insert(v);
  CHECK(t.component(t.neighbor_set(v), v) == only);
  CHECK(t.component(t.parity_class(Parity::odd), v) == only);
  CHECK_THROWS(t.component(only, v));
}

TEST_CASE("clusteredness") {
  const Torus t = Torus::make(2, 3);
  const Vertex v = at(t, {0, 0});
  VertexSet pair = t.empty_set();
  pair.insert(v);
  pair.insert(at(t, {2, 0}));
  CHECK(t.is_c_clustered(pair, 2));
  CHECK_FALSE(t.is_c_clustered(pair, 1));
  CHECK(t.is_c_clustered(t.empty_set(), 1));
  const Torus t4 = Torus::make(2, 2);
  CHECK(t4.is_c_clustered(t4.neighbor_set(t4.origin()), 2));
}

TEST_CASE("property: degrees and parity alternate across edges") {
  for (auto [d, M] : {std::pair{1, 2}, {2, 2}, {2, 3}, {3, 2}}) {
    const Torus t = Torus::make(d, M);
    for (Vertex v = 0; v < t.vertex_count(); ++v) {
      CHECK(t.neighbor_set(v).size() == static_cast<std::size_t>(2 * d));
      for (auto w : t.neighbors(v)) CHECK(t.parity(w) != t.parity(v));
    }
  }
}

TEST_CASE("property: shifts are automorphisms") {
  const Torus t = Torus::make(2, 3);
  for (auto j : all_directions(2))
    for (Vertex u = 0; u < t.vertex_count(); ++u)
      for (Vertex v = 0; v < t.vertex_count(); ++v) {
        const bool adj = t.neighbor_set(u).contains(v);
        CHECK(adj == t.neighbor_set(t.shift(u, j)).contains(t.shift(v, j)));
      }
}

TEST_CASE("property: components are closed in the remaining graph") {
  const Torus t = Torus::make(2, 3);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const VertexSet ex = random_set(t, rng, 0.4);
    const VertexSet rest = t.all() - ex;
    if (rest.empty()) continue;
    const Vertex seed = rest.first();
    const VertexSet c = t.component(ex, seed);
    CHECK(c.contains(seed));
    CHECK_FALSE(c.intersects(ex));
    CHECK((t.neighborhood(c) - ex).subset_of(c));
    CHECK(t.is_connected(c));
  }
}

TEST_CASE("property: distances match the coordinate oracle") {
  const Torus t = Torus::make(2, 3);
  const oracle::Box box(2, 3);
  for (Vertex u = 0; u < t.vertex_count(); ++u)
    for (Vertex v = 0; v < t.vertex_count(); ++v) {
      const auto cu = t.coords(u), cv = t.coords(v);
      int dist = 0;
      for (std::size_t i = 0; i < cu.size(); ++i) {
        const int diff = std::abs(cu[i] - cv[i]);
        dist += std::min(diff, 6 - diff);
      }
      CHECK(t.distance(u, v) == dist);
    }
  CHECK(box.n() == static_cast<int>(t.vertex_count()));
}

TEST_CASE("property: clustered sets stay clustered under bounded relocation") {
  // S a-clustered and S, T within distance b of each other force T to be (a+2b)-clustered.
  const Torus t = Torus::make(2, 4);
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(t.vertex_count() - 1));
  for (int trial = 0; trial < 300; ++trial) {
    const int a = 1 + static_cast<int>(rng() % 3);
    const int b = static_cast<int>(rng() % 3);
    VertexSet S = t.empty_set();
    S.insert(pick(rng));
    const std::size_t target = 1 + rng() % 8;
    while (S.size() < target) {
      const Vertex v = pick(rng);
      bool close = false;
      S.for_each([&](Vertex s) { close = close || t.distance(s, v) <= a; });
      if (close) S.insert(v);
    }
    REQUIRE(t.is_c_clustered(S, a));
    VertexSet T = t.empty_set();
    S.for_each([&](Vertex s) {
      std::vector<Vertex> near;
      for (Vertex v = 0; v < t.vertex_count(); ++v)
        if (t.distance(s, v) <= b) near.push_back(v);
      T.insert(near[rng() % near.size()]);
    });
    CHECK(t.is_c_clustered(T, a + 2 * b));
  }
}

TEST_CASE("vertex sets") {
  std::mt19937_64 rng(5);
  const Torus t = Torus::make(2, 5);  // 100 vertices, two words
  for (int trial = 0; trial < 50; ++trial) {
    const VertexSet s = random_set(t, rng, 0.3);
    std::size_t n = 0;
    s.for_each([&](Vertex) { ++n; });
    CHECK(s.size() == n);
    CHECK(VertexSet::from_hex(t.vertex_count(), s.to_hex()) == s);
    CHECK(VertexSet::from_vertices(t.vertex_count(), s.to_vector()) == s);
    CHECK((s | s.complement()) == t.all());
  }
  CHECK_THROWS_AS(VertexSet::from_hex(16, "zz"), std::invalid_argument);
  const VertexSet m = VertexSet::from_mask(16, 0x5828);
  CHECK(m.to_mask() == 0x5828);
  CHECK(m.to_hex() == "5828");
}

TEST_CASE("directions") {
  const auto dirs = all_directions(3);
  REQUIRE(dirs.size() == 6);
  CHECK(dirs[0].value() == 1);
  CHECK(dirs[1].value() == -1);
  CHECK(dirs[2].value() == 2);
  CHECK(dirs[5].value() == -3);
  CHECK(Direction(-2).reversed() == Direction(2));
  CHECK_THROWS(Direction(0));
}

TEST_CASE("graph fixtures") {
  const Graph p = Graph::petersen();
  CHECK(p.vertex_count() == 10);
  for (std::size_t v = 0; v < 10; ++v) CHECK(p.neighbors(v).size() == 3);
  const Graph tree = Graph::branching_tree(2, 3);
  CHECK(tree.vertex_count() == 15);
  CHECK(tree.neighbors(0).size() == 2);
  const Graph g = Graph::from_torus(Torus::make(2, 2));
  CHECK(g.vertex_count() == 16);
  CHECK(g.max_degree() == 4);
  const Bigraph b = Bigraph::make(2, 3, {{0, 0}, {0, 1}, {1, 2}});
  CHECK(b.edge_count() == 3);
  CHECK(b.right_adj[2] == std::vector<std::size_t>{1});
}
