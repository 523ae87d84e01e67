#include "efd/extremal.hpp"

#include <algorithm>

#include "efd/ef_engine.hpp"
#include "json.hpp"

namespace efd {

namespace {

struct Rooted {
  ColoredGraph g;
  Vertex root = 0;
};

Rooted star(int leaves) { return {star_graph(leaves), 0}; }

// A new root joined to the roots of the given numbers of copies.
Rooted join(const Rooted& x, int x_copies, const Rooted& y, int y_copies) {
  Rooted out{ColoredGraph(1), 0};
  auto attach = [&out](const Rooted& part) {
    Vertex base = out.g.order();
    for (Vertex v = 0; v < part.g.order(); ++v) out.g.add_vertex();
    for (auto [u, v] : part.g.edges()) out.g.add_edge(base + u, base + v);
    out.g.add_edge(0, base + part.root);
  };
  for (int c = 0; c < x_copies; ++c) attach(x);
  for (int c = 0; c < y_copies; ++c) attach(y);
  return out;
}

void check_cap(long long order) {
  if (order > kExtremalOrderCap) throw CapError("extremal construction exceeds " + std::to_string(kExtremalOrderCap) + " vertices");
}

std::pair<long long, long long> powerlaw_orders(int l, int t) {
  long long a = l / 2, b = (l + 1) / 2;
  long long x = l - 1, y = l;  // orders of T_1, T_1'
  for (int s = 2; s <= t; ++s) {
    long long nx = 1 + a * x + (b - 1) * y, ny = 1 + (a - 1) * x + b * y;
    x = std::min(nx, kExtremalOrderCap + 1);
    y = std::min(ny, kExtremalOrderCap + 1);
  }
  return {x, y};
}

}  // namespace

std::pair<long long, long long> maxdeg_orders(int l, int i) {
  if (l < 4 || i < 0) throw ArgumentError("maxdeg construction needs l >= 4 and i >= 0");
  long long k = l / 2;
  long long x = l, y = l - 1;  // orders of G_0, G_0'
  for (int s = 1; s <= i; ++s) {
    long long nx = 1 + k * x + (k - 1) * y, ny = 1 + (k - 1) * x + k * y;
    x = std::min(nx, kExtremalOrderCap + 1);
    y = std::min(ny, kExtremalOrderCap + 1);
  }
  return {x, y};
}

int maxdeg_level_for(long long n, int l) {
  int i = -1;
  while (true) {
    auto [x, y] = maxdeg_orders(l, i + 1);
    if (std::max(x, y) > n || std::max(x, y) > kExtremalOrderCap) return i;
    ++i;
  }
}

int g_bound(int l, int j) {
  if (l < 4 || j < 0) throw ArgumentError("g_bound needs l >= 4 and j >= 0");
  return (l / 2 - 1) * j + l - 2;
}

ExtremalPair lb_pair_maxdeg(int l, int i) {
  auto [x, y] = maxdeg_orders(l, i);
  check_cap(std::max(x, y));
  int k = l / 2;
  Rooted g = star(l - 1), h = star(l - 2);
  for (int s = 1; s <= i; ++s) {
    Rooted ng = join(g, k, h, k - 1), nh = join(g, k - 1, h, k);
    g = std::move(ng);
    h = std::move(nh);
  }
  ExtremalPair pair;
  pair.family = ExtremalFamily::MaxDeg;
  pair.left = std::move(g.g);
  pair.right = std::move(h.g);
  pair.l = l;
  pair.level = i;
  pair.k = k;
  pair.a = l / 2;
  pair.b = (l + 1) / 2;
  pair.claimed_lower_bound = g_bound(l, i);
  return pair;
}

ExtremalPair lb_pair_powerlaw(int l, int t) {
  if (l < 4 || t < 1) throw ArgumentError("powerlaw construction needs l >= 4 and t >= 1");
  auto [x, y] = powerlaw_orders(l, t);
  check_cap(std::max(x, y));
  int a = l / 2, b = (l + 1) / 2;
  Rooted g = star(l - 2), h = star(l - 1);
  for (int s = 2; s <= t; ++s) {
    Rooted ng = join(g, a, h, b - 1), nh = join(g, a - 1, h, b);
    g = std::move(ng);
    h = std::move(nh);
  }
  ExtremalPair pair;
  pair.family = ExtremalFamily::PowerLaw;
  pair.left = std::move(g.g);
  pair.right = std::move(h.g);
  pair.l = l;
  pair.level = t;
  pair.k = l / 2;
  pair.a = a;
  pair.b = b;
  pair.claimed_lower_bound = (t - 1) * a + l - 1;
  return pair;
}

LowerBoundReport verify_lower_bound(const ExtremalPair& pair, int cap) {
  LowerBoundReport report;
  report.claimed = pair.claimed_lower_bound;
  report.cap = std::max(cap, pair.claimed_lower_bound - 1);
  if (pair.left.order() + pair.right.order() > kVerifyOrderCap) {
    report.note = "not machine-checked";
    return report;
  }
  try {
    auto out = ef_value(pair.left, pair.right, report.cap);
    report.machine_checked = true;
    if (out.spoiler_wins) report.exact = out.k;
    report.pass = !out.spoiler_wins || out.k >= report.claimed;
  } catch (const CapError& e) {
    report.note = std::string("solver cap: ") + e.what();
  }
  return report;
}

std::string lower_bound_json(const ExtremalPair& pair, const LowerBoundReport& report) {
  nlohmann::json j{{"family", pair.family == ExtremalFamily::MaxDeg ? "maxdeg" : "powerlaw"},
                   {"l", pair.l},
                   {"level", pair.level},
                   {"k", pair.k},
                   {"a", pair.a},
                   {"b", pair.b},
                   {"left_order", pair.left.order()},
                   {"right_order", pair.right.order()},
                   {"claimed_lower_bound", report.claimed},
                   {"cap", report.cap},
                   {"machine_checked", report.machine_checked},
                   {"pass", report.pass}};
  j["exact"] = report.exact ? nlohmann::json(*report.exact) : nlohmann::json(nullptr);
  if (!report.note.empty()) j["note"] = report.note;
  return j.dump(2);
}

}  // namespace efd
