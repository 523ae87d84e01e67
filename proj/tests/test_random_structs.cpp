#include <cmath>
#include <map>
#include <random>

#include "doctest.h"
#include "efd/canonical.hpp"
#include "efd/metrics.hpp"
#include "efd/random_structs.hpp"
#include "efd/rng.hpp"

using namespace efd;

namespace {

ColoredGraph theta(int middle) {
  // Two poles joined by three paths with `middle` internal vertices each.
  ColoredGraph g(2);
  for (int p = 0; p < 3; ++p) {
    Vertex prev = 0;
    for (int i = 0; i < middle; ++i) {
      Vertex v = g.add_vertex();
      g.add_edge(prev, v);
      prev = v;
    }
    g.add_edge(prev, 1);
  }
  return g;
}

std::vector<std::pair<Vertex, Vertex>> sorted_edges(const ColoredGraph& g) {
  auto e = g.edges();
  for (auto& [u, v] : e)
    if (u > v) std::swap(u, v);
  std::sort(e.begin(), e.end());
  return e;
}

// Brute force: v has two length-r paths meeting only at v.
bool yuppie_oracle(const ColoredGraph& t, Vertex v, int r) {
  std::vector<std::vector<Vertex>> ends;  // vertex sets of length-r paths from v
  std::vector<Vertex> path{v};
  auto dfs = [&](auto&& self, Vertex at, Vertex from) -> void {
    if (static_cast<int>(path.size()) == r + 1) {
      ends.push_back(path);
      return;
    }
    for (Vertex w : t.neighbors(at))
      if (w != from) {
        path.push_back(w);
        self(self, w, at);
        path.pop_back();
      }
  };
  dfs(dfs, v, -1);
  for (std::size_t i = 0; i < ends.size(); ++i)
    for (std::size_t j = i + 1; j < ends.size(); ++j) {
      int shared = 0;
      for (Vertex a : ends[i])
        for (Vertex b : ends[j]) shared += a == b;
      if (shared == 1) return true;
    }
  return false;
}

}  // namespace

TEST_CASE("Prüfer codes") {
  auto two = prufer_decode(std::vector<Vertex>{}, 2);
  CHECK(two.size() == 1);
  CHECK(two.adjacent(0, 1));
  auto star = prufer_decode(std::vector<Vertex>{1, 1}, 4);
  CHECK(star.degree(1) == 3);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 2 + static_cast<int>(rng() % 49);
    std::vector<Vertex> seq(n - 2);
    for (auto& x : seq) x = static_cast<Vertex>(rng() % n);
    auto tree = prufer_decode(seq, n);
    REQUIRE(is_tree(tree));
    CHECK(prufer_encode(tree) == seq);
  }
  CHECK_THROWS_AS(prufer_decode(std::vector<Vertex>{0}, 4), ArgumentError);
  CHECK_THROWS_AS(prufer_decode(std::vector<Vertex>{0, 7}, 4), ArgumentError);
  CHECK_THROWS_AS(prufer_encode(cycle_graph(4)), ArgumentError);
}

TEST_CASE("uniform trees on three and four vertices") {
  auto rng = make_rng(11);
  std::map<std::vector<std::pair<Vertex, Vertex>>, int> counts;
  const int samples = 30000;
  for (int i = 0; i < samples; ++i) ++counts[sorted_edges(sample_tree(3, rng))];
  REQUIRE(counts.size() == 3);
  double sigma = std::sqrt(samples * (1.0 / 3) * (2.0 / 3));
  for (auto& [e, c] : counts) CHECK(std::abs(c - samples / 3.0) <= 3 * sigma);

  counts.clear();
  for (int i = 0; i < 32000; ++i) ++counts[sorted_edges(sample_tree(4, rng))];
  CHECK(counts.size() == 16);
  for (auto& [e, c] : counts) CHECK(std::abs(c - 2000.0) <= 4 * std::sqrt(2000.0));
  CHECK(sample_tree(1, 5ULL).order() == 1);
  CHECK(sorted_edges(sample_tree(50, 9ULL)) == sorted_edges(sample_tree(50, 9ULL)));
}

TEST_CASE("G(n, p)") {
  CHECK(sample_gnp(10, 0.0, 1ULL).size() == 0);
  CHECK(sample_gnp(10, 1.0, 1ULL).size() == 45);
  auto rng = make_rng(5);
  double total = 0;
  const int samples = 1000;
  for (int i = 0; i < samples; ++i) total += static_cast<double>(sample_gnp(100, 0.05, rng).size());
  double sigma = std::sqrt(4950 * 0.05 * 0.95 / samples);
  CHECK(std::abs(total / samples - 247.5) <= 5 * sigma);
  CHECK_THROWS_AS(sample_gnp(5, 1.5, 1ULL), ArgumentError);
}

TEST_CASE("rooted forests") {
  auto one = sample_forest(2, 1, 4ULL);
  CHECK(one.adjacent(0, 1));
  auto rng = make_rng(8);
  int under_zero = 0;
  const int samples = 10000;
  for (int i = 0; i < samples; ++i) {
    auto f = sample_forest(3, 2, rng);
    REQUIRE(f.size() == 1);
    REQUIRE(f.degree(2) == 1);
    under_zero += f.adjacent(0, 2);
  }
  CHECK(std::abs(under_zero - samples / 2.0) <= 3 * std::sqrt(samples * 0.25));
  for (int i = 0; i < 50; ++i) {
    auto f = sample_forest(40, 5, rng);
    auto comps = connected_components(f);
    CHECK(comps.count() == 5);
    for (Vertex r = 0; r < 5; ++r)
      for (Vertex s = r + 1; s < 5; ++s) CHECK(comps.id[r] != comps.id[s]);
  }
  // All 5 * 6^... forests on 4 vertices with 2 roots: |F_{4,2}| = 2 * 4 = 8.
  std::map<std::vector<std::pair<Vertex, Vertex>>, int> counts;
  for (int i = 0; i < 16000; ++i) ++counts[sorted_edges(sample_forest(4, 2, rng))];
  CHECK(counts.size() == 8);
  for (auto& [e, c] : counts) CHECK(std::abs(c - 2000.0) <= 4 * std::sqrt(2000.0));
}

TEST_CASE("giant component and core") {
  CHECK(giant_component(cycle_graph(5)).order() == 5);
  auto g = disjoint_union(complete_graph(3), path_graph(2));
  std::vector<Vertex> original;
  auto giant = giant_component(g, &original);
  CHECK(giant.order() == 3);
  CHECK(original == std::vector<Vertex>{0, 1, 2});
  CHECK(giant_component(ColoredGraph()).order() == 0);
  CHECK(std::abs(giant_fraction_limit(2.0) - 0.7968) < 1e-3);
  CHECK(giant_fraction_limit(0.5) == 0);

  CHECK(two_core(path_graph(7)).order() == 0);
  auto c5 = cycle_graph(5);
  Vertex prev = 0;
  for (int i = 0; i < 3; ++i) {
    Vertex v = c5.add_vertex();
    c5.add_edge(prev, v);
    prev = v;
  }
  CHECK(two_core(c5).order() == 5);
  CHECK(two_core(complete_graph(4)).size() == 6);
  auto once = two_core(c5);
  CHECK(sorted_edges(two_core(once)) == sorted_edges(once));
}

TEST_CASE("kernelization") {
  auto th = kernelize(theta(1));
  CHECK(th.graph.order() == 2);
  CHECK(th.graph.size() == 3);
  for (auto& e : th.graph.edges()) CHECK(e.path.size() == 3);

  auto ring = kernelize(cycle_graph(6));
  CHECK(ring.graph.order() == 1);
  REQUIRE(ring.graph.size() == 1);
  CHECK(ring.graph.edge(0).u == ring.graph.edge(0).v);
  CHECK(ring.graph.edge(0).path.size() == 7);
  CHECK(ring.graph.degree(0) == 2);

  auto k4 = kernelize(complete_graph(4));
  CHECK(k4.graph.order() == 4);
  CHECK(k4.graph.size() == 6);
  CHECK(k4.graph.min_degree() == 3);

  CHECK_THROWS_AS(kernelize(path_graph(3)), StructuralError);
}

TEST_CASE("decomposition rebuilds the component") {
  auto rng = make_rng(21);
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    auto g = giant_component(sample_gnp(400, 2.0 / 400, rng));
    if (g.order() < 10) continue;
    auto dec = decompose(g);
    std::vector<std::pair<Vertex, Vertex>> rebuilt;
    for (auto& e : dec.kernel.graph.edges())
      for (std::size_t i = 0; i + 1 < e.path.size(); ++i)
        rebuilt.emplace_back(dec.core_to_host[e.path[i]], dec.core_to_host[e.path[i + 1]]);
    std::vector<char> in_tree(g.order(), 0);
    for (auto& tree : dec.pendant)
      for (Vertex v : tree) {
        CHECK_FALSE(in_tree[v]);
        in_tree[v] = 1;
      }
    for (auto [u, v] : g.edges())
      if (dec.host_to_core[u] < 0 || dec.host_to_core[v] < 0) rebuilt.emplace_back(u, v);
    for (auto& [u, v] : rebuilt)
      if (u > v) std::swap(u, v);
    std::sort(rebuilt.begin(), rebuilt.end());
    CHECK(rebuilt == sorted_edges(g));
    if (dec.kernel.graph.order() > 0) {
      bool bare = dec.kernel.graph.order() == 1 && dec.kernel.graph.size() == 1;
      if (!bare) CHECK(dec.kernel.graph.min_degree() >= 3);
      CHECK(std::all_of(in_tree.begin(), in_tree.end(), [](char c) { return c; }));
    }
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("kernel parameters") {
  // Triangle with a pendant path of length 7: u = 3, d = 8.
  auto g = cycle_graph(3);
  Vertex prev = 0;
  for (int i = 0; i < 7; ++i) {
    Vertex v = g.add_vertex();
    g.add_edge(prev, v);
    prev = v;
  }
  auto p = kernel_params(decompose(g), 4, 1000);
  CHECK(p.u == 3);
  CHECK(p.d == 8);
  CHECK(p.k == 4);
  CHECK(p.b0 == doctest::Approx(29.2876).epsilon(1e-4));
  CHECK(p.b - p.b0 == doctest::Approx(p.t + p.u + 2 * 3.0));
  CHECK(p.t >= 1);
  CHECK_THROWS_AS(kernel_params(decompose(g), 2, 1000), ArgumentError);
}

TEST_CASE("kernel neighborhoods") {
  // y carries an isolated loop once x is removed.
  Multigraph k(2);
  k.add_edge(0, 1);
  k.add_edge(1, 1);
  auto dies = neighborhood_Axy(k, 0, 1, 4);
  CHECK(dies.a == std::vector<Vertex>{1});
  CHECK(dies.height == 1);

  Multigraph ring(10);
  for (int i = 0; i < 10; ++i) ring.add_edge(i, (i + 1) % 10);
  auto grow = neighborhood_Axy(ring, 0, 1, 4);
  CHECK(grow.a.size() == 4);
  CHECK(grow.height == 4);
  Multigraph tree(7);
  for (int i = 1; i < 7; ++i) tree.add_edge((i - 1) / 2, i);
  auto level = neighborhood_Axy(tree, 0, 1, 2);
  CHECK(level.a.size() == 3);  // the whole second level is kept
  CHECK_THROWS_AS(neighborhood_Axy(ring, 0, 5, 4), ArgumentError);
}

TEST_CASE("sparse condition") {
  Multigraph ring(8);
  for (int i = 0; i < 8; ++i) ring.add_edge(i, (i + 1) % 8);
  CHECK(sparse_condition(ring, 3));
  Multigraph th(2);
  for (int i = 0; i < 3; ++i) th.add_edge(0, 1);
  CHECK_FALSE(sparse_condition(th, 1));
  // Two loops joined by a long path: sparse for small l, dense once 6l covers the path.
  Multigraph cuffs(12);
  cuffs.add_edge(0, 0);
  cuffs.add_edge(11, 11);
  for (int i = 0; i < 11; ++i) cuffs.add_edge(i, i + 1);
  CHECK(sparse_condition(cuffs, 1));
  CHECK_FALSE(sparse_condition(cuffs, 2));
}

TEST_CASE("Kab condition") {
  // Small kernels never reach the size threshold.
  auto dec = decompose(complete_graph(4));
  CHECK(kab_condition(dec, 6));
  // Two identical gadgets hung on a long cycle.
  ColoredGraph g = cycle_graph(40);
  for (Vertex base : {0, 20}) {
    Vertex a = g.add_vertex(), b = g.add_vertex(), c = g.add_vertex();
    g.add_edge(base, a);
    g.add_edge(a, b);
    g.add_edge(b, c);
    g.add_edge(c, a);
    g.add_edge(base + 1, b);
  }
  auto twin = decompose(g);
  CHECK_FALSE(kab_condition(twin, 3));
  auto v = kab_violation(twin, 3);
  REQUIRE(v);
  CHECK(v->first_gadget.order() == v->second_gadget.order());
  CHECK(v->first_gadget.size() == v->second_gadget.size());
}

TEST_CASE("leaf-star witness") {
  auto g = cycle_graph(3);
  for (int i = 0; i < 3; ++i) g.add_edge(1, g.add_vertex());
  auto w = leaf_star_witness(decompose(g), 3);
  REQUIRE(w);
  CHECK(*w == 1);
  CHECK_FALSE(leaf_star_witness(decompose(cycle_graph(7)), 1));
}

TEST_CASE("checks and checkbooks") {
  auto p6 = path_graph(6);
  CHECK(check(p6, 0, 5, 5) == "101101");
  auto k13 = star_graph(3);
  CHECK(check(k13, 0, 1, 1) == "01");
  CHECK_THROWS_AS(check(p6, 0, 3, 2), ArgumentError);
  CHECK(checkbook(k13, 1, 3).checks.empty());
  auto book = checkbook(k13, 1, 2);
  CHECK(book.checks == std::set<std::string>{"101"});
  auto mid = checkbook(p6, 2, 2);
  CHECK(mid.checks == std::set<std::string>{"101", "110"});
}

TEST_CASE("check collisions") {
  auto rng = make_rng(2);
  CHECK(checkbook_distinct_property(path_graph(5), 10, 1000, rng).violations == 0);
  // A double broom: two disjoint copies of the same handle.
  ColoredGraph broom = path_graph(12);
  broom.add_edge(0, broom.add_vertex());
  broom.add_edge(11, broom.add_vertex());
  auto rep = checkbook_distinct_property(broom, 4, 100000, rng);
  CHECK(rep.exhaustive);
  CHECK(rep.violations >= 1);
  auto sampled = checkbook_distinct_property(sample_tree(3000, rng), 20, 200, rng);
  CHECK_FALSE(sampled.exhaustive);
}

TEST_CASE("yuppies") {
  CHECK(yuppies(path_graph(5), 2) == std::vector<Vertex>{2});
  CHECK(yuppies(star_graph(4), 2).empty());
  for (int r = 1; r <= 4; ++r) CHECK(yuppies(path_graph(2 * r + 3), r) == std::vector<Vertex>{r, r + 1, r + 2});
  for (int n = 1; n <= 9; ++n)
    for (auto& t : enumerate_trees(n))
      for (int r = 1; r <= 3; ++r) {
        auto ys = yuppies(t, r);
        std::vector<Vertex> oracle;
        for (Vertex v = 0; v < t.order(); ++v)
          if (yuppie_oracle(t, v, r)) oracle.push_back(v);
        CHECK(ys == oracle);
      }
}

TEST_CASE("pendant profile") {
  auto star = pendant_profile(star_graph(4));
  CHECK(star.at({4, 0}) == 1);
  CHECK(star.at({0, 1}) == 4);
  auto p4 = pendant_profile(path_graph(4));
  CHECK(p4.at({0, 1}) == 2);
  CHECK(p4.at({1, 1}) == 2);
  auto t = sample_tree(500, 3ULL);
  long long total = 0;
  for (auto& [key, c] : pendant_profile(t)) total += c;
  CHECK(total == 500);
  CHECK(pendant_formula(0, 1) == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("neighborhood statistics") {
  auto stats = nbhd_stats(path_graph(30), 4, 10);
  CHECK(stats.max_ball == 9);
  CHECK(stats.max_heavy == 0);
  auto star = nbhd_stats(star_graph(6), 2, 3);
  CHECK(star.max_ball == 7);
  CHECK(star.max_heavy == 1);
}

TEST_CASE("typicality") {
  auto rng = make_rng(4);
  CHECK_FALSE(typicality(path_graph(10), 100, rng).applicable);
  auto star = typicality(star_graph(9999), 100, rng);
  CHECK(star.applicable);
  CHECK(star.bullets[1] == Bullet::Failed);
  CHECK_FALSE(star.typical());
  auto t = typicality(sample_tree(20000, rng), 2000, rng);
  CHECK(t.applicable);
  CHECK(t.bullets[2] == Bullet::Vacuous);
}

TEST_CASE("forest statistics") {
  CHECK(isolated_formula(1, 0) == doctest::Approx(1.0));
  double total = 0;
  for (int l = 0; l < 6; ++l) total += isolated_formula(6, l);
  CHECK(total == doctest::Approx(1.0));
  auto rng = make_rng(6);
  std::vector<ColoredGraph> single;
  for (int i = 0; i < 50; ++i) single.push_back(sample_forest(100, 1, rng));
  auto one = forest_stats(single, 100, 1);
  REQUIRE(one.isolated.size() == 1);
  CHECK(one.isolated[0].empirical == 1.0);
  CHECK(one.non_largest_mass == 0);

  std::vector<ColoredGraph> forests;
  for (int i = 0; i < 2000; ++i) forests.push_back(sample_forest(500, 4, rng));
  auto st = forest_stats(forests, 500, 4, 4, 1);
  for (auto& e : st.isolated) CHECK(e.pass);
  CHECK(st.joint_degree_tail.formula == doctest::Approx(1.0 / 3));
  CHECK(st.joint_degree_tail.pass);
  CHECK(st.root_degree_tail.pass);
}
