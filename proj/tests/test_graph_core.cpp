#include <random>
#include <sstream>

#include "doctest.h"
#include "efd/canonical.hpp"
#include "efd/graph.hpp"
#include "efd/graph_io.hpp"
#include "efd/metrics.hpp"

using namespace efd;

namespace {

ColoredGraph random_attachment_tree(int n, std::mt19937_64& rng) {
  ColoredGraph t(n);
  for (Vertex v = 1; v < n; ++v) t.add_edge(v, static_cast<Vertex>(rng() % v));
  return t;
}

ColoredGraph relabel(const ColoredGraph& g, const std::vector<Vertex>& perm) {
  ColoredGraph h(g.order());
  for (auto [u, v] : g.edges()) h.add_edge(perm[u], perm[v]);
  for (Vertex v = 0; v < g.order(); ++v) h.set_colors(perm[v], g.colors(v));
  for (Vertex p : g.pins()) h.add_pin(perm[p]);
  return h;
}

}  // namespace

TEST_CASE("ColoredGraph rejects loops and parallel edges") {
  ColoredGraph g(3);
  g.add_edge(0, 1);
  CHECK_THROWS_AS(g.add_edge(1, 0), ArgumentError);
  CHECK_THROWS_AS(g.add_edge(2, 2), ArgumentError);
  CHECK_THROWS_AS(g.add_edge(0, 3), ArgumentError);
  CHECK_THROWS_AS(g.add_pin(5), ArgumentError);
  CHECK(g.adjacent(1, 0));
  CHECK(g.size() == 1);
}

TEST_CASE("Multigraph loops count twice") {
  Multigraph k(2);
  k.add_edge(0, 0, {0, 5, 6, 0});
  k.add_edge(0, 1);
  CHECK(k.degree(0) == 3);
  CHECK(k.degree(1) == 1);
}

TEST_CASE("graph text format round trip") {
  Palette palette;
  std::istringstream in("# comment\n4 3\n0 1\n1 2\n2 3\nc 0 red\nc 3 blue\nc 3 red\np 2\n");
  auto g = read_graph(in, palette);
  CHECK(g.order() == 4);
  CHECK(g.size() == 3);
  CHECK(g.has_color(3, *palette.find("blue")));
  CHECK(g.pins() == std::vector<Vertex>{2});
  auto text = to_text(g, &palette);
  CHECK(text == "4 3\n0 1\n1 2\n2 3\nc 0 red\nc 3 red\nc 3 blue\np 2\n");
  std::istringstream again(text);
  CHECK(read_graph(again, palette) == g);

  std::istringstream bad("3 2\n0 1\n");
  CHECK_THROWS_AS(read_graph(bad, palette), FormatError);
  std::istringstream loop("2 1\n1 1\n");
  CHECK_THROWS_AS(read_graph(loop, palette), FormatError);
}

TEST_CASE("ahu_code examples") {
  ColoredGraph a(1), b(1);
  CHECK(ahu_code(a, 0) == ahu_code(b, 0));
  auto p3 = path_graph(3);
  auto q3 = ColoredGraph::from_edges(3, std::vector<std::pair<Vertex, Vertex>>{{2, 0}, {0, 1}});
  CHECK(ahu_code(p3, 1) == ahu_code(q3, 0));
  auto star = star_graph(3);
  CHECK(ahu_code(star, 0) != ahu_code(star, 1));
  CHECK_THROWS_AS(ahu_code(cycle_graph(4), 0), StructuralError);
  CHECK_THROWS_AS(ahu_code(disjoint_union(path_graph(2), path_graph(2)), 0), StructuralError);
}

TEST_CASE("tree_isomorphic examples") {
  auto p4 = path_graph(4);
  CHECK(tree_isomorphic(p4, relabel(p4, {2, 0, 3, 1})));
  CHECK_FALSE(tree_isomorphic(p4, star_graph(3)));
  auto red = star_graph(3);
  red.add_color(2, 0);
  CHECK_FALSE(tree_isomorphic(red, star_graph(3)));
  CHECK_THROWS_AS(tree_isomorphic(cycle_graph(3), p4), StructuralError);

  auto pinned_end = path_graph(3), pinned_mid = path_graph(3);
  pinned_end.add_pin(0);
  pinned_mid.add_pin(1);
  CHECK_FALSE(tree_isomorphic(pinned_end, pinned_mid));
}

TEST_CASE("graph_isomorphic_small examples") {
  CHECK(graph_isomorphic_small(cycle_graph(5), relabel(cycle_graph(5), {3, 1, 4, 0, 2})));
  CHECK_FALSE(graph_isomorphic_small(cycle_graph(6), disjoint_union(cycle_graph(3), cycle_graph(3))));
  auto k4e = complete_graph(4);
  k4e.remove_edge(0, 1);
  CHECK_FALSE(graph_isomorphic_small(k4e, path_graph(4)));
  CHECK_THROWS_AS(graph_isomorphic_small(path_graph(13), path_graph(13)), CapError);
}

TEST_CASE("free tree enumeration counts match the known sequence") {
  const int expected[] = {0, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106};
  for (int n = 1; n <= 10; ++n) CHECK(enumerate_trees(n).size() == static_cast<std::size_t>(expected[n]));
}

TEST_CASE("ahu_code agrees with backtracking isomorphism on rooted trees up to 9 vertices") {
  for (int n = 1; n <= 9; ++n) {
    std::vector<std::pair<ColoredGraph, Vertex>> rooted;
    for (const auto& t : enumerate_trees(n))
      for (Vertex r = 0; r < n; ++r) rooted.emplace_back(t, r);
    std::vector<CanonicalCode> codes;
    for (auto& [t, r] : rooted) codes.push_back(ahu_code(t, r));
    int mismatches = 0;
    for (std::size_t i = 0; i < rooted.size(); ++i)
      for (std::size_t j = i; j < rooted.size(); ++j) {
        auto a = rooted[i].first, b = rooted[j].first;
        a.add_pin(rooted[i].second);
        b.add_pin(rooted[j].second);
        if ((codes[i] == codes[j]) != graph_isomorphic_small(a, b)) ++mismatches;
      }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("rooted_graph_isomorphic matches the small oracle on random graphs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 3 + static_cast<int>(rng() % 8);
    ColoredGraph g(n);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (rng() % 3 == 0) g.add_edge(u, v);
    std::vector<Vertex> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    auto h = relabel(g, perm);
    if (rng() % 2) {
      Vertex u = static_cast<Vertex>(rng() % n), v = static_cast<Vertex>(rng() % n);
      if (u != v) {
        if (h.adjacent(u, v))
          h.remove_edge(u, v);
        else
          h.add_edge(u, v);
      }
    }
    Vertex r = static_cast<Vertex>(rng() % n);
    Vertex r2 = rng() % 2 ? perm[r] : static_cast<Vertex>(rng() % n);
    auto gp = g, hp = h;
    gp.add_pin(r);
    hp.add_pin(r2);
    CHECK(rooted_graph_isomorphic(g, {r}, h, {r2}) == graph_isomorphic_small(gp, hp));
  }
}

TEST_CASE("bfs_distances examples and triangle inequality") {
  auto d = bfs_distances(path_graph(3), 0);
  CHECK(d == std::vector<int>{0, 1, 2});
  auto two = disjoint_union(path_graph(2), path_graph(2));
  d = bfs_distances(two, 0);
  CHECK(d[2] == kInfinity);
  d = bfs_distances(cycle_graph(4), 1);
  std::sort(d.begin(), d.end());
  CHECK(d == std::vector<int>{0, 1, 1, 2});

  std::mt19937_64 rng(11);
  ColoredGraph g(60);
  for (int i = 0; i < 90; ++i) g.try_add_edge(static_cast<Vertex>(rng() % 60), static_cast<Vertex>(rng() % 60));
  std::vector<std::vector<int>> all;
  for (Vertex v = 0; v < 60; ++v) all.push_back(bfs_distances(g, v));
  for (int t = 0; t < 2000; ++t) {
    int a = static_cast<int>(rng() % 60), b = static_cast<int>(rng() % 60), c = static_cast<int>(rng() % 60);
    if (all[a][b] == kInfinity || all[b][c] == kInfinity) continue;
    CHECK(all[a][c] <= all[a][b] + all[b][c]);
  }
}

TEST_CASE("median examples and half-size property") {
  CHECK(median(path_graph(5)) == 2);
  CHECK(median(star_graph(4)) == 0);
  CHECK(median(path_graph(4)) == 1);
  CHECK_THROWS_AS(median(cycle_graph(4)), StructuralError);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 1 + static_cast<int>(rng() % 200);
    auto t = random_attachment_tree(n, rng);
    Vertex m = median(t);
    std::vector<char> keep(n, 1);
    keep[m] = 0;
    auto comps = connected_components(t, &keep);
    for (const auto& c : comps.members) CHECK(2 * static_cast<int>(c.size()) <= n);
  }
}

TEST_CASE("diameter examples and iFUB against all-pairs") {
  CHECK(diameter(path_graph(7)) == 6);
  CHECK(diameter(complete_graph(4)) == 1);
  CHECK(diameter(disjoint_union(path_graph(2), path_graph(1))) == kInfinity);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(rng() % 80);
    auto g = random_attachment_tree(n, rng);
    for (int extra = static_cast<int>(rng() % 4); extra > 0; --extra)
      g.try_add_edge(static_cast<Vertex>(rng() % n), static_cast<Vertex>(rng() % n));
    int brute = 0;
    for (Vertex v = 0; v < n; ++v) brute = std::max(brute, eccentricity(g, v));
    CHECK(diameter(g) == brute);
  }
}

TEST_CASE("cycles") {
  auto lollipop = cycle_graph(5);
  Vertex tail = lollipop.add_vertex();
  lollipop.add_edge(0, tail);
  CHECK(shortest_cycle(lollipop).size() == 5);
  CHECK(shortest_cycle_through(lollipop, tail).empty());
  CHECK(shortest_cycle_through(lollipop, 3).size() == 5);
  CHECK(shortest_cycle(path_graph(6)).empty());
  auto mask = on_cycle_mask(lollipop);
  CHECK(mask == std::vector<char>{1, 1, 1, 1, 1, 0});

  auto k4 = complete_graph(4);
  auto c = shortest_cycle_through(k4, 2);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == 2);
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(k4.adjacent(c[i], c[(i + 1) % c.size()]));
}
