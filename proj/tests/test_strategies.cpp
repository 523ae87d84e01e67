#include <cmath>
#include <random>

#include "doctest.h"
#include "efd/canonical.hpp"
#include "efd/ef_engine.hpp"
#include "efd/metrics.hpp"
#include "efd/strategies.hpp"

using namespace efd;

namespace {

ColoredGraph random_tree(int n, std::mt19937_64& rng) {
  ColoredGraph t(n);
  for (Vertex v = 1; v < n; ++v) t.add_edge(v, static_cast<Vertex>(rng() % v));
  return t;
}

ColoredGraph spider(std::initializer_list<int> legs) {
  ColoredGraph g(1);
  for (int len : legs) {
    Vertex prev = 0;
    for (int i = 0; i < len; ++i) {
      Vertex v = g.add_vertex();
      g.add_edge(prev, v);
      prev = v;
    }
  }
  return g;
}

void expect_pass(const BoundCertificate& cert) {
  INFO(cert.policy << " verdict=" << to_string(cert.optimal.verdict) << " moves=" << cert.optimal.moves_used
                   << " bound=" << cert.claimed_bound << " note=" << cert.optimal.note);
  CHECK(cert.pass);
}

}  // namespace

TEST_CASE("halving distance on paths") {
  auto p5 = path_graph(5), p9 = path_graph(9);
  auto cert = certify(halving_distance_policy(4), p5, p9, {{0, 0}, {4, 8}});
  expect_pass(cert);
  CHECK(cert.optimal.moves_used <= 3);
  for (auto& s : cert.optimal.steps) CHECK(s.side == Side::Left);

  auto p9b = path_graph(9), p20 = path_graph(20);
  auto long_cert = certify(halving_distance_policy(8), p9b, p20, {{0, 0}, {8, 19}});
  expect_pass(long_cert);
  CHECK(long_cert.optimal.moves_used <= 4);
}

TEST_CASE("halving base cases") {
  // Adjacent on the left, not on the right: decided before any move.
  auto cert = certify(halving_distance_policy(1), path_graph(2), empty_graph(2), {{0, 0}, {1, 1}});
  CHECK(cert.optimal.verdict == Verdict::SpoilerWon);
  CHECK(cert.optimal.moves_used == 0);
  auto bad = certify(halving_distance_policy(2), path_graph(3), path_graph(3), {{0, 0}, {2, 2}});
  CHECK(bad.optimal.verdict != Verdict::SpoilerWon);
  auto far = certify(halving_distance_policy(2), path_graph(6), path_graph(8), {{0, 0}, {5, 7}});
  CHECK(far.optimal.verdict == Verdict::InstanceError);
}

TEST_CASE("halving against the random duplicator") {
  CertifyOptions opts;
  opts.random_seed = 7;
  auto cert = certify(halving_distance_policy(6), path_graph(7), path_graph(12), {{0, 0}, {6, 11}}, opts);
  expect_pass(cert);
  REQUIRE(cert.random);
  CHECK(cert.random->verdict == Verdict::SpoilerWon);
  CHECK(cert.random->moves_used <= cert.claimed_bound);
}

TEST_CASE("colored path") {
  // A red vertex on the left path between the pins; the right path has none.
  auto g = path_graph(5), h = path_graph(5);
  g.add_color(2, 0);
  PathRule rule;
  rule.color = 0;
  auto cert = certify(colored_path_policy(4, rule), g, h, {{0, 0}, {4, 4}});
  expect_pass(cert);

  // Internal vertices restricted to color 1: blue path of length 6 vs one broken in the middle.
  auto a = path_graph(7), b = path_graph(7);
  for (Vertex v = 1; v < 6; ++v) {
    a.add_color(v, 1);
    if (v != 3) b.add_color(v, 1);
  }
  PathRule blue;
  blue.internal = ColorSet{1} << 1;
  auto cert2 = certify(colored_path_policy(6, blue), a, b, {{0, 0}, {6, 6}});
  expect_pass(cert2);

  CHECK(certify(colored_path_policy(4, rule), h, g, {{0, 0}, {4, 4}}).optimal.verdict == Verdict::InstanceError);
}

TEST_CASE("cycle policy") {
  auto tri = cycle_graph(3), p3 = path_graph(3);
  expect_pass(certify(cycle_policy(3), tri, p3, {{0, 1}}));

  auto c6 = cycle_graph(6);
  c6.add_edge(0, c6.add_vertex());
  auto tree = path_graph(7);
  auto cert = certify(cycle_policy(6), c6, tree, {{0, 3}});
  expect_pass(cert);
  for (auto& s : cert.optimal.steps) CHECK(s.side == Side::Left);

  CHECK(certify(cycle_policy(6), tree, c6, {{3, 0}}).optimal.verdict == Verdict::InstanceError);
}

TEST_CASE("tree versus non-tree") {
  auto cert = certify(tree_vs_nontree_policy(4), path_graph(4), cycle_graph(4));
  expect_pass(cert);
  CHECK(cert.claimed_bound == 5);

  ColoredGraph two_k2(4);
  two_k2.add_edge(0, 1);
  two_k2.add_edge(2, 3);
  expect_pass(certify(tree_vs_nontree_policy(3), path_graph(3), two_k2));

  expect_pass(certify(tree_vs_nontree_policy(12), path_graph(12), cycle_graph(30)));

  CHECK(certify(tree_vs_nontree_policy(4), path_graph(4), star_graph(3)).optimal.verdict == Verdict::InstanceError);
}

TEST_CASE("median recursion") {
  expect_pass(certify(median_recursion_policy(), star_graph(3), star_graph(2)));
  expect_pass(certify(median_recursion_policy(), spider({2, 2, 3}), spider({2, 3, 3})));
  expect_pass(certify(median_recursion_policy(), path_graph(9), path_graph(10)));
  expect_pass(certify(median_recursion_policy(), path_graph(6), cycle_graph(6)));

  std::mt19937_64 rng(5);
  int checked = 0;
  for (int trial = 0; trial < 25; ++trial) {
    int n = 6 + static_cast<int>(rng() % 10);
    auto t = random_tree(n, rng), u = random_tree(n + static_cast<int>(rng() % 2), rng);
    if (u.order() == n && tree_isomorphic(t, u)) continue;
    auto cert = certify(median_recursion_policy(), t, u);
    expect_pass(cert);
    ++checked;
  }
  CHECK(checked > 15);
}

TEST_CASE("zero-alternation strategy stays on one side") {
  auto cert = certify(zero_alternation_policy(), path_graph(4), cycle_graph(4));
  expect_pass(cert);
  CHECK(cert.optimal.alternations == 0);

  auto iso_plus = disjoint_union(star_graph(3), empty_graph(1));
  auto cert2 = certify(zero_alternation_policy(), star_graph(3), iso_plus);
  expect_pass(cert2);
  CHECK(cert2.optimal.alternations == 0);
  REQUIRE(!cert2.optimal.steps.empty());
  CHECK(cert2.optimal.steps.front().side == Side::Right);
  CHECK(cert2.optimal.steps.front().spoiler == 4);

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 5 + static_cast<int>(rng() % 8);
    auto t = random_tree(n, rng);
    auto g = random_tree(n + static_cast<int>(rng() % 3) - 1, rng);
    if (g.order() == n && tree_isomorphic(t, g)) continue;
    if (rng() % 3 == 0) g.try_add_edge(0, g.order() - 1);
    auto c = certify(zero_alternation_policy(), t, g);
    expect_pass(c);
    CHECK(c.optimal.alternations == 0);
  }
}

TEST_CASE("core preservation") {
  // Triangle with a pendant path: x on the triangle vs x' on a tree.
  auto g = cycle_graph(3);
  g.add_edge(0, g.add_vertex());
  auto h = path_graph(4);
  expect_pass(certify(core_preservation_policy(diameter(g)), g, h, {{0, 1}}));

  // Dumbbell: x in the middle of the bar; right side hangs x' off a cycle.
  ColoredGraph bell(10);
  for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {8, 5}})
    bell.add_edge(u, v);
  bell.add_edge(9, 0);
  ColoredGraph hang = cycle_graph(6);
  Vertex prev = 0;
  for (int i = 0; i < 4; ++i) {
    Vertex v = hang.add_vertex();
    hang.add_edge(prev, v);
    prev = v;
  }
  auto cert = certify(core_preservation_policy(diameter(bell)), bell, hang, {{3, 8}});
  expect_pass(cert);
  CHECK(certify(core_preservation_policy(4), h, g, {{1, 0}}).optimal.verdict == Verdict::InstanceError);
}

TEST_CASE("isomorphic or invalid starts") {
  auto cert = certify(median_recursion_policy(), path_graph(5), path_graph(5));
  CHECK(cert.optimal.verdict == Verdict::NoWin);
  CHECK_FALSE(cert.pass);
  auto broken = certify(halving_distance_policy(2), path_graph(3), empty_graph(3), {{0, 0}, {1, 1}});
  CHECK(broken.optimal.verdict == Verdict::SpoilerWon);
  CHECK(broken.optimal.moves_used == 0);
  CHECK_THROWS_AS(certify(cycle_policy(3), cycle_graph(3), path_graph(3), {{0, 9}}), ArgumentError);
}

TEST_CASE("bound functions") {
  for (int l : {2, 3, 5, 10, 100}) {
    CHECK(f_bound(1, l) == 0);
    CHECK(f0_bound(1, l) == 0);
    int prev = 0;
    for (long long n : {2LL, 5LL, 30LL, 200LL, 4000LL, 5000LL, 100000LL, 1000000LL}) {
      int v = f_bound(n, l);
      CHECK(v >= prev);
      prev = v;
    }
  }
  // Leading coefficient l ln n / (2 ln l) at finite scale.
  double ratio = f_bound(1000000, 100) * std::log(100.0) / (100 * std::log(1e6));
  CHECK(ratio > 0.4);
  CHECK(ratio < 1.1);
  CHECK_THROWS_AS(f_bound(0, 3), ArgumentError);
  CHECK_THROWS_AS(f0_bound(5, 1), ArgumentError);
  // A single level on a star: one median plus a degree surplus.
  CHECK(f_bound(2, 3) == 3);
}

TEST_CASE("passing certificates are consistent with the exact value") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    int n = 4 + static_cast<int>(rng() % 5);
    auto t = random_tree(n, rng), u = random_tree(n + 1, rng);
    auto cert = certify(median_recursion_policy(), t, u);
    if (!cert.pass) continue;
    auto exact = ef_value(t, u, cert.claimed_bound);
    REQUIRE(exact.spoiler_wins);
    CHECK(exact.k <= cert.optimal.moves_used);
  }
}

TEST_CASE("certificate json") {
  CertifyOptions opts;
  opts.instance = "p5-p9";
  opts.random_seed = 3;
  auto cert = certify(halving_distance_policy(4), path_graph(5), path_graph(9), {{0, 0}, {4, 8}}, opts);
  auto text = certificate_json(cert);
  CHECK(text.find("\"policy\": \"halving_distance\"") != std::string::npos);
  CHECK(text.find("\"random_seed\": 3") != std::string::npos);
  CHECK(certificate_json(cert) == text);
}
