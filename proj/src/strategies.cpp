#include "efd/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <memory>

#include "efd/canonical.hpp"
#include "efd/metrics.hpp"
#include "efd/rng.hpp"
#include "json.hpp"

namespace efd {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::SpoilerWon: return "SpoilerWon";
    case Verdict::NoWin: return "NoWin";
    case Verdict::BudgetExhausted: return "BudgetExhausted";
    case Verdict::InstanceError: return "InstanceError";
  }
  return "?";
}

namespace {

struct GameOver {
  Verdict verdict;
};

int sidx(Side s) { return static_cast<int>(s); }

int floor_log2(long long n) {
  int r = 0;
  while (n > 1) {
    n >>= 1;
    ++r;
  }
  return r;
}

}  // namespace

Arena::Arena(const ColoredGraph& left, const ColoredGraph& right, PinList pins, int budget, DuplicatorFn duplicator,
             int alternation_budget)
    : left_(left),
      right_(right),
      pins_(std::move(pins)),
      budget_(budget),
      duplicator_(std::move(duplicator)),
      alternation_budget_(alternation_budget) {}

int Arena::pin_at(Side s, Vertex v) const {
  for (int i = 0; i < pin_count(); ++i)
    if (pin(s, i) == v) return i;
  return -1;
}

Vertex Arena::play(Side side, Vertex v) {
  if (!graph(side).valid(v)) throw std::logic_error("policy move out of range");
  if (trace_.moves_used >= budget_) {
    trace_.verdict = Verdict::BudgetExhausted;
    throw GameOver{Verdict::BudgetExhausted};
  }
  if (last_side_ && *last_side_ != side) {
    if (alternation_budget_ == 0) throw std::logic_error("policy switched sides under a zero alternation budget");
    ++trace_.alternations;
  }
  Vertex reply = -1;
  if (graph(other(side)).order() > 0) {
    GamePosition pos{&left_, &right_, pins_, budget_ - trace_.moves_used, alternation_budget_, last_side_};
    reply = duplicator_(pos, {side, v});
    if (!graph(other(side)).valid(reply)) throw ProtocolError("Duplicator reply out of range");
  }
  last_side_ = side;
  ++trace_.moves_used;
  trace_.steps.push_back({trace_.moves_used, side, v, reply});
  if (reply < 0) {
    trace_.verdict = Verdict::SpoilerWon;
    throw GameOver{Verdict::SpoilerWon};
  }
  pins_.emplace_back(side == Side::Left ? v : reply, side == Side::Left ? reply : v);
  if (!partial_iso(left_, right_, pins_)) {
    trace_.verdict = Verdict::SpoilerWon;
    throw GameOver{Verdict::SpoilerWon};
  }
  return reply;
}

// ---------------------------------------------------------------------------
// Path halving

namespace {

struct RuleView {
  const ColoredGraph& g;
  std::vector<char> blocked;
  const PathRule& rule;

  RuleView(const Arena& arena, Side side, const PathRule& r)
      : g(arena.graph(side)), blocked(arena.graph(side).order(), 0), rule(r) {
    for (int p : rule.avoid_pins) blocked[arena.pin(side, p)] = 1;
  }

  bool passable(Vertex v) const { return !blocked[v] && (!rule.internal || (g.colors(v) & *rule.internal)); }

  std::vector<int> bfs(Vertex src) const {
    std::vector<int> dist(g.order(), kInfinity);
    if (blocked[src]) return dist;
    std::deque<Vertex> queue{src};
    dist[src] = 0;
    while (!queue.empty()) {
      Vertex u = queue.front();
      queue.pop_front();
      if (u != src && !passable(u)) continue;
      for (Vertex w : g.neighbors(u))
        if (!blocked[w] && dist[w] == kInfinity) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
    }
    return dist;
  }

  bool colored(Vertex v) const { return rule.color >= 0 && g.has_color(v, rule.color); }
};

int add(int a, int b) { return a == kInfinity || b == kInfinity ? kInfinity : a + b; }

// Shortest rule walk a -> b; `via` receives the color witness (or -1 when the walk needs none).
int rule_walk(const RuleView& view, Vertex a, Vertex b, const std::vector<int>& da, const std::vector<int>& db,
              Vertex* via) {
  *via = -1;
  if (view.rule.color < 0) return da[b];
  int best = kInfinity;
  if (view.colored(a) || view.colored(b)) best = da[b];
  for (Vertex z = 0; z < view.g.order(); ++z) {
    if (z == a || z == b || !view.colored(z) || !view.passable(z)) continue;
    int len = add(da[z], db[z]);
    if (len < best) {
      best = len;
      *via = z;
    }
  }
  return best;
}

}  // namespace

int rule_distance(const Arena& arena, Side side, Vertex a, Vertex b, const PathRule& rule) {
  RuleView view(arena, side, rule);
  Vertex via;
  return rule_walk(view, a, b, view.bfs(a), view.bfs(b), &via);
}

void halve(Arena& arena, Side side, int a_pin, int b_pin, const PathRule& start_rule) {
  PathRule rule = start_rule;
  Side o = other(side);
  while (true) {
    Vertex a = arena.pin(side, a_pin), b = arena.pin(side, b_pin);
    RuleView view(arena, side, rule);
    auto da = view.bfs(a), db = view.bfs(b);
    Vertex via;
    int len = rule_walk(view, a, b, da, db, &via);
    if (len >= rule_distance(arena, o, arena.pin(o, a_pin), arena.pin(o, b_pin), rule))
      throw std::logic_error("halving precondition does not hold");
    if (len <= 1) throw std::logic_error("halving reached a decided pair without a win");

    // Middle vertex closer to a, smallest index among shortest rule walks.
    int p = len / 2;
    Vertex w = -1;
    bool witness_after = false;  // the color witness lies on the b half
    if (via < 0) {
      for (Vertex v = 0; v < view.g.order() && w < 0; ++v)
        if (view.passable(v) && da[v] == p && db[v] == len - p) w = v;
    } else {
      auto dz = view.bfs(via);
      if (p <= da[via]) {
        for (Vertex v = 0; v < view.g.order() && w < 0; ++v)
          if (view.passable(v) && da[v] == p && dz[v] == da[via] - p) w = v;
        witness_after = w != via;
      } else {
        for (Vertex v = 0; v < view.g.order() && w < 0; ++v)
          if (view.passable(v) && dz[v] == p - da[via] && db[v] == len - p) w = v;
      }
    }
    if (w < 0) throw std::logic_error("no middle vertex on the halving walk");
    arena.play(side, w);
    int m = arena.pin_count() - 1;

    PathRule plain = rule;
    plain.color = -1;
    bool has_color = via >= 0 || rule.color >= 0;
    PathRule first = rule, second = rule;
    if (has_color && via >= 0 && w != via) {
      first = witness_after ? plain : rule;
      second = witness_after ? rule : plain;
    } else if (has_color && via >= 0) {
      first = second = plain;
    } else if (rule.color >= 0) {
      // An endpoint carries the color; the half touching it keeps the requirement.
      bool at_a = view.colored(a);
      first = at_a ? rule : plain;
      second = at_a ? plain : rule;
    }
    auto separates = [&](int u, int v, const PathRule& r) {
      int here = rule_distance(arena, side, arena.pin(side, u), arena.pin(side, v), r);
      int there = rule_distance(arena, o, arena.pin(o, u), arena.pin(o, v), r);
      return here < there;
    };
    if (separates(a_pin, m, first)) {
      b_pin = m;
      rule = first;
    } else if (separates(m, b_pin, second)) {
      a_pin = m;
      rule = second;
    } else {
      throw std::logic_error("neither half separates the pins");
    }
  }
}

// ---------------------------------------------------------------------------
// Shared tactics

namespace {

[[noreturn]] void unreachable(const char* what) { throw std::logic_error(what); }

// Spoiler plays x's cycle neighbours, then halves the rest of the cycle avoiding x.
[[noreturn]] void cycle_attack(Arena& arena, Side s, int x_pin, const std::vector<Vertex>& cycle) {
  arena.play(s, cycle[1]);
  int y1 = arena.pin_count() - 1;
  arena.play(s, cycle.back());
  int y2 = arena.pin_count() - 1;
  PathRule rule;
  rule.avoid_pins = {x_pin};
  halve(arena, s, y1, y2, rule);
  unreachable("cycle attack ended without a decision");
}

// Lemma Tree: `ts` holds a tree, the other side is not a tree.
[[noreturn]] void tree_vs_nontree_play(Arena& arena, Side ts) {
  Side os = other(ts);
  const ColoredGraph& t = arena.graph(ts);
  const ColoredGraph& g = arena.graph(os);
  auto comps = connected_components(g);
  if (comps.count() != 1) {
    if (comps.count() == 0) {
      arena.play(ts, 0);
      unreachable("empty graph not exploited");
    }
    arena.play(os, comps.members[0][0]);
    int x = arena.pin_count() - 1;
    arena.play(os, comps.members[1][0]);
    int y = arena.pin_count() - 1;
    halve(arena, ts, x, y, {});
    unreachable("disconnected branch ended without a decision");
  }
  auto cycle = shortest_cycle(g);
  int girth = static_cast<int>(cycle.size());
  int h = girth / 2;
  if (h > diameter(t)) {
    arena.play(os, cycle[0]);
    int x = arena.pin_count() - 1;
    arena.play(os, cycle[h]);
    int y = arena.pin_count() - 1;
    halve(arena, ts, x, y, {});
    unreachable("long cycle branch ended without a decision");
  }
  arena.play(os, cycle[0]);
  int x = arena.pin_count() - 1;
  arena.play(os, cycle[1]);
  int z = arena.pin_count() - 1;
  arena.play(os, cycle[2]);
  int y = arena.pin_count() - 1;
  PathRule rule;
  rule.avoid_pins = {z};
  halve(arena, os, x, y, rule);
  unreachable("short cycle branch ended without a decision");
}

// ---------------------------------------------------------------------------
// Region recursion shared by the median and single-sided strategies.

struct Region {
  std::vector<char> mask[2];
  int anchor = -1;
  std::vector<int> border;
};

struct Piece {
  Vertex root = -1;
  std::vector<char> mask;
  int size = 0;
};

std::vector<Vertex> members(const std::vector<char>& mask) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < static_cast<Vertex>(mask.size()); ++v)
    if (mask[v]) out.push_back(v);
  return out;
}

Piece piece_at(const ColoredGraph& g, const std::vector<char>& mask, Vertex root, Vertex cut) {
  Piece piece{root, std::vector<char>(g.order(), 0), 0};
  std::vector<Vertex> stack{root};
  piece.mask[root] = 1;
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    ++piece.size;
    for (Vertex w : g.neighbors(u))
      if (w != cut && mask[w] && !piece.mask[w]) {
        piece.mask[w] = 1;
        stack.push_back(w);
      }
  }
  return piece;
}

// Pieces of mask - x, one per neighbour of x inside the mask.
std::vector<Piece> pieces_around(const ColoredGraph& g, const std::vector<char>& mask, Vertex x) {
  std::vector<Piece> out;
  for (Vertex r : g.neighbors(x))
    if (mask[r]) out.push_back(piece_at(g, mask, r, x));
  return out;
}

// Colors plus the pins the vertex sits on or touches.
std::string vertex_label(const Arena& arena, Side s, Vertex v) {
  const ColoredGraph& g = arena.graph(s);
  std::string label = std::to_string(g.colors(v));
  for (int i = 0; i < arena.pin_count(); ++i) {
    Vertex p = arena.pin(s, i);
    if (p == v)
      label += "=" + std::to_string(i);
    else if (g.adjacent(p, v))
      label += "~" + std::to_string(i);
  }
  return label;
}

std::string piece_type(const Arena& arena, Side s, const Piece& piece) {
  const ColoredGraph& g = arena.graph(s);
  auto code = [&](auto&& self, Vertex v, Vertex parent) -> std::string {
    std::vector<std::string> children;
    for (Vertex w : g.neighbors(v))
      if (w != parent && piece.mask[w]) children.push_back(self(self, w, v));
    std::sort(children.begin(), children.end());
    std::string out = "(" + vertex_label(arena, s, v);
    for (auto& c : children) out += c;
    return out + ")";
  };
  return code(code, piece.root, -1);
}

std::vector<Vertex> free_neighbors(const Arena& arena, Side s, Vertex x, const std::vector<char>& mask) {
  std::vector<Vertex> out;
  for (Vertex w : arena.graph(s).neighbors(x))
    if (mask[w] && arena.pin_at(s, w) < 0) out.push_back(w);
  return out;
}

// Duplicator left the region: halve back to the anchor without crossing the border.
[[noreturn]] void escape(Arena& arena, Side s, int pin, const Region& region) {
  if (region.anchor < 0) unreachable("escape from an unanchored region");
  PathRule rule;
  rule.avoid_pins = region.border;
  halve(arena, s, pin, region.anchor, rule);
  unreachable("escape halving ended without a decision");
}

void ensure_inside(Arena& arena, const Region& region, int pin) {
  for (Side s : {Side::Left, Side::Right}) {
    bool here = region.mask[sidx(s)][arena.pin(s, pin)];
    bool there = region.mask[sidx(other(s))][arena.pin(other(s), pin)];
    if (here && !there) escape(arena, s, pin, region);
  }
}

int select(Arena& arena, Side s, Vertex v) {
  int p = arena.pin_at(s, v);
  if (p >= 0) return p;
  arena.play(s, v);
  return arena.pin_count() - 1;
}

// Exhibits a free-degree surplus of x on side `big` over its image.
[[noreturn]] void exploit_degree(Arena& arena, Side big, const std::vector<Vertex>& surplus, std::size_t smaller) {
  for (std::size_t i = 0; i <= smaller && i < surplus.size(); ++i) arena.play(big, surplus[i]);
  unreachable("degree surplus not exploited");
}

// Median recursion with free choice of side (tree on `ts`).
void median_levels(Arena& arena, Side ts) {
  Side os = other(ts);
  const ColoredGraph& gt = arena.graph(ts);
  const ColoredGraph& go = arena.graph(os);
  Region region;
  region.mask[sidx(ts)].assign(gt.order(), 1);
  region.mask[sidx(os)].assign(go.order(), 1);
  while (true) {
    auto& mt = region.mask[sidx(ts)];
    auto& mo = region.mask[sidx(os)];
    Vertex x = median_of_region(gt, members(mt));
    int xp = select(arena, ts, x);
    ensure_inside(arena, region, xp);
    Vertex xo = arena.pin(os, xp);

    auto ft = free_neighbors(arena, ts, x, mt), fo = free_neighbors(arena, os, xo, mo);
    if (ft.size() > fo.size()) exploit_degree(arena, ts, ft, fo.size());
    if (fo.size() > ft.size()) exploit_degree(arena, os, fo, ft.size());

    auto pt = pieces_around(gt, mt, x), po = pieces_around(go, mo, xo);
    std::vector<std::string> tt, to;
    std::map<std::string, std::pair<int, int>> count;
    for (auto& p : pt) {
      tt.push_back(piece_type(arena, ts, p));
      ++count[tt.back()].first;
    }
    for (auto& p : po) {
      to.push_back(piece_type(arena, os, p));
      ++count[to.back()].second;
    }
    // C1: more copies on the tree side; C2: more on the other side.
    const std::string *c1 = nullptr, *c2 = nullptr;
    for (auto& [type, c] : count) {
      if (c.first > c.second && (!c1 || c.second < count[*c1].second)) c1 = &type;
      if (c.first < c.second && (!c2 || c.first < count[*c2].first)) c2 = &type;
    }
    if (!c1 || !c2) return;
    bool play_tree = count[*c1].second <= count[*c2].first;
    Side ps = play_tree ? ts : os;
    const std::string& want = play_tree ? *c1 : *c2;
    int need = (play_tree ? count[*c1].second : count[*c2].first) + 1;
    auto& mine = play_tree ? pt : po;
    auto& mine_types = play_tree ? tt : to;
    auto& theirs = play_tree ? po : pt;
    auto& their_types = play_tree ? to : tt;

    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < mine.size(); ++i)
      if (mine_types[i] == want) order.push_back(i);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return (arena.pin_at(ps, mine[a].root) >= 0) > (arena.pin_at(ps, mine[b].root) >= 0);
    });
    bool next = false;
    for (int i = 0; i < need && !next; ++i) {
      const Piece& mp = mine[order.at(i)];
      int rp = select(arena, ps, mp.root);
      ensure_inside(arena, region, rp);
      Vertex w = arena.pin(other(ps), rp);
      for (std::size_t j = 0; j < theirs.size(); ++j) {
        if (theirs[j].root != w) continue;
        if (their_types[j] != want) {
          region.mask[sidx(ps)] = mp.mask;
          region.mask[sidx(other(ps))] = theirs[j].mask;
          region.anchor = rp;
          region.border.push_back(xp);
          next = true;
        }
        break;
      }
    }
    if (!next) unreachable("no component multiplicity mismatch was exposed");
  }
}

// Single-sided recursion: Spoiler plays only on `s`.
void single_sided_levels(Arena& arena, Side s, Region region) {
  Side d = other(s);
  const ColoredGraph& gs = arena.graph(s);
  const ColoredGraph& gd = arena.graph(d);
  while (true) {
    auto& ms = region.mask[sidx(s)];
    auto& md = region.mask[sidx(d)];
    Vertex x = median_of_region(gs, members(ms));
    int xp = select(arena, s, x);
    Vertex xd = arena.pin(d, xp);
    if (!md[xd]) escape(arena, s, xp, region);

    auto fs = free_neighbors(arena, s, x, ms), fd = free_neighbors(arena, d, xd, md);
    if (fs.size() > fd.size()) exploit_degree(arena, s, fs, fd.size());

    auto ps = pieces_around(gs, ms, x);
    std::stable_sort(ps.begin(), ps.end(), [](const Piece& a, const Piece& b) { return a.size > b.size; });
    bool next = false;
    for (const Piece& piece : ps) {
      int rp = select(arena, s, piece.root);
      Vertex w = arena.pin(d, rp);
      if (!md[w]) escape(arena, s, rp, region);
      Piece image = piece_at(gd, md, w, xd);
      if (piece.size >= image.size && piece_type(arena, s, piece) != piece_type(arena, d, image)) {
        region.mask[sidx(s)] = piece.mask;
        region.mask[sidx(d)] = image.mask;
        region.anchor = rp;
        region.border.push_back(xp);
        next = true;
        break;
      }
    }
    if (!next) return;
  }
}

std::vector<char> bfs_prefix(const ColoredGraph& g, Vertex start, int count) {
  std::vector<char> mask(g.order(), 0);
  std::deque<Vertex> queue{start};
  mask[start] = 1;
  int taken = 1;
  while (!queue.empty() && taken < count) {
    Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(u))
      if (!mask[w] && taken < count) {
        mask[w] = 1;
        ++taken;
        queue.push_back(w);
      }
  }
  return mask;
}

Region whole(const Arena& arena) {
  Region r;
  r.mask[0].assign(arena.graph(Side::Left).order(), 1);
  r.mask[1].assign(arena.graph(Side::Right).order(), 1);
  return r;
}

// Theorem DT0 case analysis; the tree is on the left.
void zero_alternation_play(Arena& arena) {
  const ColoredGraph& t = arena.graph(Side::Left);
  const ColoredGraph& g = arena.graph(Side::Right);
  int n = t.order();
  if (g.order() == 0) {
    arena.play(Side::Left, 0);
    unreachable("empty graph not exploited");
  }
  int dt = t.max_degree(), dg = g.max_degree();
  if (dt != dg) {
    Side big = dt > dg ? Side::Left : Side::Right;
    const ColoredGraph& gb = arena.graph(big);
    Vertex v = 0;
    while (gb.degree(v) != gb.max_degree()) ++v;
    int vp = select(arena, big, v);
    std::vector<Vertex> nbrs = gb.neighbors(v);
    exploit_degree(arena, big, nbrs, arena.graph(other(big)).degree(arena.pin(other(big), vp)));
  }
  auto cycle = shortest_cycle(g);
  if (!cycle.empty() && static_cast<int>(cycle.size()) <= n + 1) {
    arena.play(Side::Right, cycle[0]);
    int x = arena.pin_count() - 1;
    arena.play(Side::Right, cycle[1]);
    int z = arena.pin_count() - 1;
    arena.play(Side::Right, cycle[2]);
    int y = arena.pin_count() - 1;
    PathRule rule;
    rule.avoid_pins = {z};
    halve(arena, Side::Right, x, y, rule);
    unreachable("short cycle branch ended without a decision");
  }
  auto comps = connected_components(g);
  auto in_g = [&](std::vector<char> mask) {
    Region r = whole(arena);
    r.mask[1] = std::move(mask);
    single_sided_levels(arena, Side::Right, r);
  };
  if (comps.count() == 1) {
    if (g.order() <= n) {
      single_sided_levels(arena, Side::Left, whole(arena));
    } else {
      in_g(bfs_prefix(g, 0, n + 1));
    }
    return;
  }
  for (auto& c : comps.members) {
    std::size_t edges = 0;
    for (Vertex v : c) edges += g.degree(v);
    if (edges / 2 >= c.size()) {
      in_g(bfs_prefix(g, c[0], n + 1));
      return;
    }
  }
  for (auto& c : comps.members) {
    if (static_cast<int>(c.size()) < n) continue;
    if (static_cast<int>(c.size()) == n && tree_isomorphic(induced_subgraph(g, c).first, t)) continue;
    in_g(bfs_prefix(g, c[0], n + 1));
    return;
  }
  bool all_small = std::all_of(comps.members.begin(), comps.members.end(),
                               [&](const std::vector<Vertex>& c) { return static_cast<int>(c.size()) < n; });
  if (all_small) {
    Vertex x = median(t);
    Vertex xg = arena.play(Side::Left, x);
    Region r = whole(arena);
    r.mask[1].assign(g.order(), 0);
    for (Vertex v : comps.members[comps.id[xg]]) r.mask[1][v] = 1;
    r.anchor = arena.pin_count() - 1;
    single_sided_levels(arena, Side::Left, r);
    return;
  }
  // A component isomorphic to the tree: pin a vertex outside it first.
  for (auto& c : comps.members) {
    if (static_cast<int>(c.size()) != n) continue;
    Vertex outside = 0;
    while (comps.id[outside] == comps.id[c[0]]) ++outside;
    arena.play(Side::Right, outside);
    Region r = whole(arena);
    r.mask[1].assign(g.order(), 0);
    for (Vertex v : c) r.mask[1][v] = 1;
    single_sided_levels(arena, Side::Right, r);
    return;
  }
}

void require_tree_without_pins(const Arena& arena, int l) {
  const ColoredGraph& t = arena.graph(Side::Left);
  if (!is_tree(t)) throw InstanceError("left graph is not a tree");
  if (arena.pin_count() > 0) throw InstanceError("policy expects an unpinned start");
  if (l > 0 && t.max_degree() > l) throw InstanceError("left tree exceeds the degree bound");
}

int effective_l(const ColoredGraph& t, int l) { return l > 0 ? l : std::max(2, t.max_degree()); }

int ceil_log2(long long k) { return k <= 1 ? 0 : floor_log2(k - 1) + 1; }

}  // namespace

// ---------------------------------------------------------------------------
// Policies

SpoilerPolicy halving_distance_policy(int k) {
  SpoilerPolicy p;
  p.name = "halving_distance";
  p.home_side = Side::Left;
  p.claimed_bound = [k](const ColoredGraph&, const ColoredGraph&, const PinList&) { return ceil_log2(k) + 1; };
  p.run = [k](Arena& arena) {
    if (arena.pin_count() < 2) throw InstanceError("halving needs two pins");
    int dl = rule_distance(arena, Side::Left, arena.pin(Side::Left, 0), arena.pin(Side::Left, 1), {});
    int dr = rule_distance(arena, Side::Right, arena.pin(Side::Right, 0), arena.pin(Side::Right, 1), {});
    if (dl > k || dl >= dr) throw InstanceError("pin distances do not separate the graphs");
    halve(arena, Side::Left, 0, 1, {});
  };
  return p;
}

SpoilerPolicy colored_path_policy(int k, PathRule rule) {
  SpoilerPolicy p;
  p.name = "colored_path";
  p.home_side = Side::Left;
  p.claimed_bound = [k](const ColoredGraph&, const ColoredGraph&, const PinList&) { return ceil_log2(k) + 1; };
  p.run = [k, rule](Arena& arena) {
    if (arena.pin_count() < 2) throw InstanceError("colored path needs two pins");
    int dl = rule_distance(arena, Side::Left, arena.pin(Side::Left, 0), arena.pin(Side::Left, 1), rule);
    int dr = rule_distance(arena, Side::Right, arena.pin(Side::Right, 0), arena.pin(Side::Right, 1), rule);
    if (dl > k || dr <= k) throw InstanceError("no walk of length <= k separates the graphs");
    halve(arena, Side::Left, 0, 1, rule);
  };
  return p;
}

SpoilerPolicy cycle_policy(int k) {
  SpoilerPolicy p;
  p.name = "cycle";
  p.slack = kCycleSlack;
  p.home_side = Side::Left;
  p.claimed_bound = [k](const ColoredGraph&, const ColoredGraph&, const PinList&) {
    return ceil_log2(k) + kCycleSlack;
  };
  p.run = [k](Arena& arena) {
    if (arena.pin_count() < 1) throw InstanceError("cycle policy needs a pin");
    auto cycle = shortest_cycle_through(arena.graph(Side::Left), arena.pin(Side::Left, 0), k);
    if (cycle.empty()) throw InstanceError("pin is on no short cycle");
    if (!shortest_cycle_through(arena.graph(Side::Right), arena.pin(Side::Right, 0), k).empty())
      throw InstanceError("image is on a short cycle as well");
    cycle_attack(arena, Side::Left, 0, cycle);
  };
  return p;
}

SpoilerPolicy tree_vs_nontree_policy(int n) {
  SpoilerPolicy p;
  p.name = "tree_vs_nontree";
  p.slack = 3;
  p.claimed_bound = [n](const ColoredGraph&, const ColoredGraph&, const PinList&) {
    return floor_log2(std::max(n, 1)) + 3;
  };
  p.run = [n](Arena& arena) {
    if (!is_tree(arena.graph(Side::Left)) || arena.graph(Side::Left).order() > n)
      throw InstanceError("left graph is not a tree of the stated order");
    if (is_tree(arena.graph(Side::Right))) throw InstanceError("right graph is a tree");
    tree_vs_nontree_play(arena, Side::Left);
  };
  return p;
}

SpoilerPolicy median_recursion_policy(int l) {
  SpoilerPolicy p;
  p.name = "median_recursion";
  p.slack = kMedianSlack;
  p.claimed_bound = [l](const ColoredGraph& left, const ColoredGraph&, const PinList&) {
    int le = effective_l(left, l);
    int n = std::max(left.order(), 1);
    return f_bound(n, le) + floor_log2(n) + le + kMedianSlack;
  };
  p.run = [l](Arena& arena) {
    require_tree_without_pins(arena, l);
    if (!is_tree(arena.graph(Side::Right))) tree_vs_nontree_play(arena, Side::Left);
    median_levels(arena, Side::Left);
  };
  return p;
}

SpoilerPolicy zero_alternation_policy(int l) {
  SpoilerPolicy p;
  p.name = "zero_alternation";
  p.slack = kMedianSlack;
  p.zero_alternation = true;
  p.claimed_bound = [l](const ColoredGraph& left, const ColoredGraph&, const PinList&) {
    int le = effective_l(left, l);
    int n = std::max(left.order(), 1);
    return f0_bound(n + 1, le) + floor_log2(n) + le + kMedianSlack;
  };
  p.run = [l](Arena& arena) {
    require_tree_without_pins(arena, l);
    zero_alternation_play(arena);
  };
  return p;
}

SpoilerPolicy core_preservation_policy(int d) {
  SpoilerPolicy p;
  p.name = "core_preservation";
  p.slack = kCoreSlack;
  p.claimed_bound = [d](const ColoredGraph&, const ColoredGraph&, const PinList&) {
    return ceil_log2(d) + kCoreSlack;
  };
  p.run = [](Arena& arena) {
    if (arena.pin_count() < 1) throw InstanceError("core policy needs a pin");
    const ColoredGraph& g = arena.graph(Side::Left);
    const ColoredGraph& h = arena.graph(Side::Right);
    Vertex x = arena.pin(Side::Left, 0);
    auto core = core_mask(g);
    if (!core[x]) throw InstanceError("pin is outside the left core");
    if (core_mask(h)[arena.pin(Side::Right, 0)]) throw InstanceError("image is inside the right core");
    auto cyc = on_cycle_mask(g);
    if (cyc[x]) cycle_attack(arena, Side::Left, 0, shortest_cycle_through(g, x));

    // x sits on a bridge path of the core; take the nearest cycle vertex in two branches.
    std::vector<std::pair<int, Vertex>> ends;
    for (Vertex u : g.neighbors(x)) {
      if (!core[u]) continue;
      std::vector<char> allowed = core;
      allowed[x] = 0;
      auto dist = bfs_distances(g, u, &allowed);
      std::pair<int, Vertex> best{kInfinity, -1};
      for (Vertex v = 0; v < g.order(); ++v)
        if (cyc[v] && dist[v] != kInfinity) best = std::min(best, {dist[v] + 1, v});
      if (best.second >= 0) ends.push_back(best);
    }
    std::sort(ends.begin(), ends.end());
    if (ends.size() < 2) unreachable("core vertex off cycles without two cycle branches");
    int pins[3] = {0, select(arena, Side::Left, ends[0].second), select(arena, Side::Left, ends[1].second)};
    auto hcyc = on_cycle_mask(h);
    for (int i : {1, 2}) {
      Vertex yi = arena.pin(Side::Left, pins[i]);
      if (!hcyc[arena.pin(Side::Right, pins[i])]) cycle_attack(arena, Side::Left, pins[i], shortest_cycle_through(g, yi));
    }
    for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
      int dl = rule_distance(arena, Side::Left, arena.pin(Side::Left, pins[i]), arena.pin(Side::Left, pins[j]), {});
      int dr = rule_distance(arena, Side::Right, arena.pin(Side::Right, pins[i]), arena.pin(Side::Right, pins[j]), {});
      if (dl != dr) halve(arena, dl < dr ? Side::Left : Side::Right, pins[i], pins[j], {});
    }
    unreachable("distance defect not found");
  };
  return p;
}

// ---------------------------------------------------------------------------
// Bounds

namespace {

constexpr long long kExactLimit = 4096;

// max over real ratio sequences of  per_level*s + sum min(cap, r_i),  r_i >= 2, prod r_i <= n.
double relaxed_levels(long long n, double per_level, double cap) {
  int smax = floor_log2(n);
  if (cap <= 2) return smax * (per_level + cap);
  double best = 0;
  double ln_n = std::log(static_cast<double>(n));
  for (int s = 1; s <= smax; ++s)
    for (int t = 0; t <= s; ++t) {
      double value;
      if (t == s) {
        value = per_level * s + 2.0 * t;
      } else {
        double used = t * std::log(2.0) + (s - t - 1) * std::log(cap);
        if (used > ln_n + 1e-12) continue;
        double r = std::min(cap, std::exp(ln_n - used));
        if (r < 2) continue;
        value = per_level * s + 2.0 * t + (s - t - 1) * cap + r;
      }
      best = std::max(best, value);
    }
  return best;
}

double exact_levels(long long n, double per_level, double cap) {
  std::vector<double> f(n + 1, 0.0);
  for (long long m = 2; m <= n; ++m) {
    double best = 0;
    for (long long n1 = 1; n1 <= m / 2; ++n1)
      best = std::max(best, per_level + std::min(cap, static_cast<double>(m - 1) / n1) + f[n1]);
    f[m] = best;
  }
  return f[n];
}

// Closed form: 2 log2 n + max over (s, t) with 2^t cap^(s-t-1) <= n of 2t + (s-t) cap.
double closed_form(long long n, double cap) {
  if (cap < 2) return std::numeric_limits<double>::infinity();
  double ln_n = std::log(static_cast<double>(n));
  double best = 0;
  int smax = 2 * floor_log2(n) + 2;
  for (int s = 0; s <= smax; ++s)
    for (int t = 0; t <= s; ++t) {
      double used = t * std::log(2.0) + (s - t - 1) * std::log(cap);
      if (used > ln_n + 1e-12) continue;
      best = std::max(best, 2.0 * t + (s - t) * cap);
    }
  return 2 * std::log2(static_cast<double>(n)) + best;
}

int level_bound(long long n, double per_level, double cap, bool with_closed_form) {
  if (n <= 1) return 0;
  double v = n <= kExactLimit ? exact_levels(n, per_level, cap) : relaxed_levels(n, per_level, cap);
  if (with_closed_form) v = std::min(v, closed_form(n, cap));
  return static_cast<int>(std::floor(v + 1e-9));
}

}  // namespace

int f_bound(long long n, int l) {
  if (n < 1 || l < 2) throw ArgumentError("f_bound needs n >= 1 and l >= 2");
  return level_bound(n, 2.0, (l - 1) / 2.0, true);
}

int f0_bound(long long n, int l) {
  if (n < 1 || l < 2) throw ArgumentError("f0_bound needs n >= 1 and l >= 2");
  return level_bound(n, 1.0, static_cast<double>(l), false);
}

// ---------------------------------------------------------------------------
// Duplicators and certification

DuplicatorFn optimal_duplicator(const ColoredGraph& left, const ColoredGraph& right) {
  auto solver = std::make_shared<EfSolver>(left, right);
  return [solver](const GamePosition& pos, SpoilerMove move) -> Vertex {
    const ColoredGraph& l = *pos.left;
    const ColoredGraph& r = *pos.right;
    // Mirror an isomorphism of the pinned graphs when there is one.
    if (l.order() + r.order() <= 800) {
      std::vector<Vertex> rl, rr;
      for (auto [a, b] : pos.pinned) {
        rl.push_back(a);
        rr.push_back(b);
      }
      if (rooted_graph_isomorphic(l, rl, r, rr)) {
        const ColoredGraph& o = move.side == Side::Left ? r : l;
        auto& mine = move.side == Side::Left ? rl : rr;
        auto& theirs = move.side == Side::Left ? rr : rl;
        mine.push_back(move.vertex);
        theirs.push_back(0);
        for (Vertex w = 0; w < o.order(); ++w) {
          theirs.back() = w;
          if (rooted_graph_isomorphic(l, rl, r, rr)) return w;
        }
      }
    }
    return solver->best_reply(pos.pinned, move, pos.rounds_left, pos.alternation_budget, pos.last_side).vertex;
  };
}

DuplicatorFn random_duplicator(std::uint64_t seed) {
  auto rng = std::make_shared<std::mt19937_64>(make_rng(seed));
  return [rng](const GamePosition& pos, SpoilerMove move) -> Vertex {
    const ColoredGraph& o = move.side == Side::Left ? *pos.right : *pos.left;
    std::vector<Vertex> safe;
    PinList pins = pos.pinned;
    pins.emplace_back(0, 0);
    for (Vertex w = 0; w < o.order(); ++w) {
      pins.back() = move.side == Side::Left ? PinPair{move.vertex, w} : PinPair{w, move.vertex};
      if (partial_iso(*pos.left, *pos.right, pins)) safe.push_back(w);
    }
    if (!safe.empty()) return safe[std::uniform_int_distribution<std::size_t>(0, safe.size() - 1)(*rng)];
    return static_cast<Vertex>(std::uniform_int_distribution<int>(0, o.order() - 1)(*rng));
  };
}

MoveTrace play_game(const SpoilerPolicy& policy, const ColoredGraph& left, const ColoredGraph& right,
                    const PinList& pins, int budget, DuplicatorFn duplicator) {
  MoveTrace trace;
  if (!partial_iso(left, right, pins)) {
    trace.verdict = Verdict::SpoilerWon;
    trace.note = "start position already violates partial isomorphism";
    return trace;
  }
  if (left.order() + right.order() <= 800) {
    std::vector<Vertex> rl, rr;
    for (auto [a, b] : pins) {
      rl.push_back(a);
      rr.push_back(b);
    }
    if (rooted_graph_isomorphic(left, rl, right, rr)) {
      trace.note = "pinned graphs are isomorphic";
      return trace;
    }
  }
  Arena arena(left, right, pins, budget, std::move(duplicator), policy.zero_alternation ? 0 : kUnlimited);
  try {
    policy.run(arena);
    trace = arena.trace();
    trace.verdict = Verdict::NoWin;
    trace.note = "policy gave up";
  } catch (const GameOver& over) {
    trace = arena.trace();
    trace.verdict = over.verdict;
  } catch (const InstanceError& e) {
    trace = arena.trace();
    trace.verdict = Verdict::InstanceError;
    trace.note = e.what();
  } catch (const std::logic_error& e) {
    trace = arena.trace();
    trace.verdict = Verdict::NoWin;
    trace.note = e.what();
  }
  if (policy.home_side)
    for (auto& step : trace.steps)
      if (step.side != *policy.home_side) {
        trace.verdict = Verdict::NoWin;
        trace.note = "single-sided policy moved in the other graph";
      }
  return trace;
}

SpoilerPolicy policy_by_name(const std::string& name, int param, const ColoredGraph& left) {
  if (param < 0) throw ArgumentError("policy parameter must be non-negative");
  auto need = [&](const char* what) {
    if (param < 1) throw ArgumentError(name + " needs a positive " + what);
    return param;
  };
  if (name == "halving_distance") return halving_distance_policy(need("distance k"));
  if (name == "cycle") return cycle_policy(need("cycle length k"));
  if (name == "tree_vs_nontree") return tree_vs_nontree_policy(param ? param : std::max(left.order(), 1));
  if (name == "median_recursion") return median_recursion_policy(param);
  if (name == "zero_alternation") return zero_alternation_policy(param);
  if (name == "core_preservation") return core_preservation_policy(param ? param : std::max(diameter(left), 1));
  throw ArgumentError("unknown policy '" + name + "'");
}

BoundCertificate certify(const SpoilerPolicy& policy, const ColoredGraph& left, const ColoredGraph& right,
                         const PinList& pins, const CertifyOptions& options) {
  BoundCertificate cert;
  cert.policy = policy.name;
  cert.instance = options.instance;
  cert.slack = policy.slack;
  for (auto [a, b] : pins)
    if (!left.valid(a) || !right.valid(b)) throw ArgumentError("pinned vertex out of range");
  cert.claimed_bound = policy.claimed_bound(left, right, pins);
  cert.optimal = play_game(policy, left, right, pins, cert.claimed_bound, optimal_duplicator(left, right));
  if (options.random_seed) {
    cert.random_seed = *options.random_seed;
    cert.random = play_game(policy, left, right, pins, cert.claimed_bound, random_duplicator(*options.random_seed));
  }
  cert.pass = cert.optimal.verdict == Verdict::SpoilerWon && cert.optimal.moves_used <= cert.claimed_bound &&
              (!policy.zero_alternation || cert.optimal.alternations == 0);
  return cert;
}

namespace {

nlohmann::json trace_json(const MoveTrace& t) {
  nlohmann::json steps = nlohmann::json::array();
  for (auto& s : t.steps)
    steps.push_back({{"round", s.round},
                     {"side", s.side == Side::Left ? "left" : "right"},
                     {"spoiler", s.spoiler},
                     {"duplicator", s.duplicator}});
  return {{"verdict", to_string(t.verdict)},
          {"moves_used", t.moves_used},
          {"alternations", t.alternations},
          {"note", t.note},
          {"steps", steps}};
}

}  // namespace

std::string certificate_json(const BoundCertificate& cert) {
  nlohmann::json j{{"policy", cert.policy},
                   {"instance", cert.instance},
                   {"claimed_bound", cert.claimed_bound},
                   {"slack", cert.slack},
                   {"optimal", trace_json(cert.optimal)},
                   {"pass", cert.pass}};
  if (cert.random) {
    j["random"] = trace_json(*cert.random);
    j["random_seed"] = cert.random_seed;
  }
  return j.dump(2);
}

}  // namespace efd
