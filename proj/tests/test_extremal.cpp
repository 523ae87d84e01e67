#include <cmath>
#include "doctest.h"
#include "efd/canonical.hpp"
#include "efd/extremal.hpp"
#include "efd/metrics.hpp"

using namespace efd;

TEST_CASE("maxdeg base pair is two stars") {
  auto pair = lb_pair_maxdeg(5, 0);
  CHECK(tree_isomorphic(pair.left, star_graph(4)));
  CHECK(tree_isomorphic(pair.right, star_graph(3)));
  CHECK(pair.claimed_lower_bound == 3);
}

TEST_CASE("maxdeg level one for l = 4") {
  auto pair = lb_pair_maxdeg(4, 1);
  CHECK(pair.k == 2);
  CHECK(pair.left.order() == 12);
  CHECK(pair.right.order() == 11);
  CHECK(pair.left.degree(0) == 3);
  // Two K_{1,3} roots and one K_{1,2} root below the top.
  int big = 0, small = 0;
  for (Vertex c : pair.left.neighbors(0)) (pair.left.degree(c) == 4 ? big : small) += 1;
  CHECK(big == 2);
  CHECK(small == 1);
  auto [x, y] = maxdeg_orders(4, 1);
  CHECK(x == 12);
  CHECK(y == 11);
}

TEST_CASE("maxdeg pairs are non-isomorphic trees of bounded degree") {
  for (int l : {4, 5, 6})
    for (int i : {0, 1, 2}) {
      auto pair = lb_pair_maxdeg(l, i);
      CHECK(is_tree(pair.left));
      CHECK(is_tree(pair.right));
      CHECK_FALSE(tree_isomorphic(pair.left, pair.right));
      CHECK(pair.left.max_degree() <= l);
      CHECK(pair.right.max_degree() <= l);
      auto [x, y] = maxdeg_orders(l, i);
      CHECK(x == pair.left.order());
      CHECK(y == pair.right.order());
    }
}

TEST_CASE("level selection") {
  CHECK(maxdeg_level_for(3, 4) == -1);
  CHECK(maxdeg_level_for(4, 4) == 0);
  CHECK(maxdeg_level_for(12, 4) == 1);
  CHECK(maxdeg_level_for(11, 4) == 0);
  int i = maxdeg_level_for(100000, 6);
  auto [x, y] = maxdeg_orders(6, i);
  CHECK(std::max(x, y) <= 100000);
  auto [nx, ny] = maxdeg_orders(6, i + 1);
  CHECK(std::max(nx, ny) > 100000);
}

TEST_CASE("g_bound") {
  for (int l = 4; l < 12; ++l) CHECK(g_bound(l, 0) == l - 2);
  CHECK(g_bound(10, 3) == 20);
  CHECK(g_bound(9, 5) - g_bound(9, 4) == 3);
  CHECK_THROWS_AS(g_bound(3, 1), ArgumentError);
}

TEST_CASE("powerlaw pairs") {
  auto base = lb_pair_powerlaw(6, 1);
  CHECK(tree_isomorphic(base.left, star_graph(4)));
  CHECK(tree_isomorphic(base.right, star_graph(5)));
  auto two = lb_pair_powerlaw(4, 2);
  CHECK(two.left.order() <= 16);
  CHECK(two.right.order() <= 16);
  for (int l : {4, 5, 7})
    for (int t : {2, 3}) {
      auto p = lb_pair_powerlaw(l, t);
      // Copies of T' hang a degree-(l-1) root below the top, which then has degree l.
      CHECK(p.left.max_degree() == l);
      CHECK(p.right.max_degree() == l);
      CHECK(p.left.degree(0) == l - 1);
      CHECK(p.left.order() <= static_cast<int>(std::pow(l, t)));
      CHECK_FALSE(tree_isomorphic(p.left, p.right));
    }
  CHECK_THROWS_AS(lb_pair_powerlaw(4, 0), ArgumentError);
}

TEST_CASE("construction cap") {
  CHECK_THROWS_AS(lb_pair_maxdeg(10, 12), CapError);
  CHECK_THROWS_AS(lb_pair_powerlaw(20, 6), CapError);
}

TEST_CASE("lower bounds hold on small pairs") {
  auto r0 = verify_lower_bound(lb_pair_maxdeg(4, 0), 6);
  CHECK(r0.machine_checked);
  CHECK(r0.pass);
  REQUIRE(r0.exact);
  CHECK(*r0.exact == 3);  // K_{1,3} vs K_{1,2}

  auto r1 = verify_lower_bound(lb_pair_maxdeg(4, 1), 6);
  CHECK(r1.machine_checked);
  CHECK(r1.pass);

  auto p = verify_lower_bound(lb_pair_powerlaw(5, 1), 6);
  CHECK(p.pass);
  REQUIRE(p.exact);
  CHECK(*p.exact >= 2);

  auto big = verify_lower_bound(lb_pair_maxdeg(6, 2), 6);
  CHECK_FALSE(big.machine_checked);
  CHECK(big.note == "not machine-checked");
  CHECK(lower_bound_json(lb_pair_maxdeg(4, 0), r0).find("\"machine_checked\": true") != std::string::npos);
}
