#include "efd/ef_engine.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <unordered_map>

#include "efd/metrics.hpp"

namespace efd {

namespace {

constexpr std::uint16_t kFar = 0xFFFF;
constexpr int kMaxPins = 64;

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct GameGraph {
  const ColoredGraph* g = nullptr;
  int n = 0;
  int words = 0;
  std::vector<std::uint64_t> bits;
  std::vector<int> twin;
  std::vector<std::vector<std::uint16_t>> rows;
  std::vector<ColorSet> color_values;              // distinct color sets, sorted
  std::vector<std::vector<Vertex>> by_color;       // parallel to color_values
  std::vector<int> color_index;                    // per vertex
  bool forest = false;

  void build(const ColoredGraph& graph) {
    g = &graph;
    n = graph.order();
    if (n <= 4096) {
      words = (n + 63) / 64;
      bits.assign(static_cast<std::size_t>(n) * words, 0);
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v : graph.neighbors(u)) bits[static_cast<std::size_t>(u) * words + (v >> 6)] |= std::uint64_t{1} << (v & 63);
    }
    rows.assign(n, {});
    for (Vertex v = 0; v < n; ++v) color_values.push_back(graph.colors(v));
    std::sort(color_values.begin(), color_values.end());
    color_values.erase(std::unique(color_values.begin(), color_values.end()), color_values.end());
    by_color.assign(color_values.size(), {});
    color_index.assign(n, 0);
    for (Vertex v = 0; v < n; ++v) {
      int c = find_color(graph.colors(v));
      color_index[v] = c;
      by_color[c].push_back(v);
    }
    forest = is_forest(graph);
    build_twins();
  }

  int find_color(ColorSet c) const {
    auto it = std::lower_bound(color_values.begin(), color_values.end(), c);
    return it != color_values.end() && *it == c ? static_cast<int>(it - color_values.begin()) : -1;
  }

  void build_twins() {
    // False twins share N(u); true twins share N[u]. Both are equivalences and a vertex
    // cannot have nontrivial classes of both kinds.
    std::map<std::pair<ColorSet, std::vector<Vertex>>, std::vector<Vertex>> open, closed;
    for (Vertex v = 0; v < n; ++v) {
      open[{g->colors(v), g->neighbors(v)}].push_back(v);
      auto nb = g->neighbors(v);
      nb.insert(std::lower_bound(nb.begin(), nb.end(), v), v);
      closed[{g->colors(v), nb}].push_back(v);
    }
    twin.assign(n, -1);
    int next = 0;
    for (auto* groups : {&open, &closed})
      for (auto& [key, members] : *groups)
        if (members.size() > 1 && twin[members[0]] == -1) {
          for (Vertex v : members) twin[v] = next;
          ++next;
        }
    for (Vertex v = 0; v < n; ++v)
      if (twin[v] == -1) twin[v] = next++;
  }

  bool adj(Vertex u, Vertex v) const {
    if (!bits.empty()) return (bits[static_cast<std::size_t>(u) * words + (v >> 6)] >> (v & 63)) & 1U;
    return g->adjacent(u, v);
  }

  const std::vector<std::uint16_t>& row(Vertex v) {
    auto& r = rows[v];
    if (r.empty()) {
      r.assign(n, kFar);
      std::vector<Vertex> queue{v};
      r[v] = 0;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex u = queue[head];
        for (Vertex w : g->neighbors(u))
          if (r[w] == kFar) {
            r[w] = static_cast<std::uint16_t>(r[u] + 1);
            queue.push_back(w);
          }
      }
    }
    return r;
  }
};

struct MemoEntry {
  std::int8_t min_win = 127;
  std::int8_t max_lose = -1;
};

}  // namespace

int halving_rounds(int k) {
  if (k < 1) throw ArgumentError("halving_rounds needs k >= 1");
  int r = 0;
  while (k > 1) {
    k = (k + 1) / 2;
    ++r;
  }
  return r;
}

bool partial_iso(const ColoredGraph& left, const ColoredGraph& right, const PinList& pins) {
  for (std::size_t i = 0; i < pins.size(); ++i) {
    auto [a, b] = pins[i];
    if (!left.valid(a) || !right.valid(b)) return false;
    if (left.colors(a) != right.colors(b)) return false;
    for (std::size_t j = 0; j < i; ++j) {
      auto [c, d] = pins[j];
      if ((a == c) != (b == d)) return false;
      if (left.adjacent(a, c) != right.adjacent(b, d)) return false;
    }
  }
  return true;
}

bool partial_iso(const GamePosition& pos) {
  if (!pos.left || !pos.right) throw ArgumentError("position without graphs");
  return partial_iso(*pos.left, *pos.right, pos.pinned);
}

struct EfSolver::Impl {
  GameGraph gg[2];
  SolverOptions options;
  bool orbit_mode = false;
  std::vector<Vertex> pins[2];
  std::vector<int> pin_count[2];
  int alt = kUnlimited;
  int last = -1;
  std::uint64_t nodes = 0;
  std::unordered_map<std::string, MemoEntry> memo;
  std::vector<std::pair<int, Vertex>> move_order;  // static Spoiler priority over (side, vertex)

  std::vector<std::uint64_t> mask_scratch[2];
  std::vector<std::uint32_t> stamp[2];
  std::uint32_t stamp_value = 0;

  Impl(const ColoredGraph& l, const ColoredGraph& r, SolverOptions opt) : options(opt) {
    gg[0].build(l);
    gg[1].build(r);
    orbit_mode = gg[0].forest && gg[1].forest && std::max(gg[0].n, gg[1].n) <= options.orbit_reduction_limit;
    for (int s = 0; s < 2; ++s) {
      pin_count[s].assign(gg[s].n, 0);
      mask_scratch[s].assign(gg[s].n, 0);
      stamp[s].assign(gg[s].n, 0);
    }
    build_move_order();
  }

  void build_move_order() {
    // Vertices whose (colors, degree) signature is rare on the other side come first.
    std::map<std::pair<ColorSet, int>, int> count[2];
    for (int s = 0; s < 2; ++s)
      for (Vertex v = 0; v < gg[s].n; ++v) ++count[s][{gg[s].g->colors(v), gg[s].g->degree(v)}];
    struct Key {
      int missing, imbalance, degree, side;
      Vertex v;
    };
    std::vector<Key> keys;
    for (int s = 0; s < 2; ++s)
      for (Vertex v = 0; v < gg[s].n; ++v) {
        std::pair<ColorSet, int> sig{gg[s].g->colors(v), gg[s].g->degree(v)};
        auto it = count[1 - s].find(sig);
        int other_count = it == count[1 - s].end() ? 0 : it->second;
        keys.push_back({other_count == 0 ? 0 : 1, -std::abs(count[s][sig] - other_count), -gg[s].g->degree(v), s, v});
      }
    std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
      return std::tie(a.missing, a.imbalance, a.degree, a.side, a.v) <
             std::tie(b.missing, b.imbalance, b.degree, b.side, b.v);
    });
    for (auto& k : keys) move_order.emplace_back(k.side, k.v);
  }

  // ---- position state ----

  void load(const PinList& list, int alternation_budget, std::optional<Side> last_side) {
    for (int s = 0; s < 2; ++s) {
      for (Vertex v : pins[s]) --pin_count[s][v];
      pins[s].clear();
    }
    if (list.size() > static_cast<std::size_t>(kMaxPins)) throw CapError("too many pinned pairs");
    for (auto [a, b] : list) {
      if (!gg[0].g->valid(a) || !gg[1].g->valid(b)) throw ArgumentError("pinned vertex out of range");
      push(a, b);
    }
    alt = alternation_budget < 0 ? kUnlimited : alternation_budget;
    last = alt == kUnlimited || !last_side ? -1 : static_cast<int>(*last_side);
  }

  void push(Vertex a, Vertex b) {
    pins[0].push_back(a);
    pins[1].push_back(b);
    ++pin_count[0][a];
    ++pin_count[1][b];
  }

  void pop() {
    --pin_count[0][pins[0].back()];
    --pin_count[1][pins[1].back()];
    pins[0].pop_back();
    pins[1].pop_back();
  }

  bool playable(int s) const { return alt == kUnlimited || last < 0 || last == s || alt > 0; }

  // Alternation state after Spoiler plays on side s.
  std::pair<int, int> after_move(int s) const {
    if (alt == kUnlimited) return {alt, -1};
    if (last >= 0 && last != s) return {alt - 1, s};
    return {alt, s};
  }

  bool current_partial_iso() const {
    std::size_t m = pins[0].size();
    for (std::size_t i = 0; i < m; ++i) {
      Vertex a = pins[0][i], b = pins[1][i];
      if (gg[0].g->colors(a) != gg[1].g->colors(b)) return false;
      for (std::size_t j = 0; j < i; ++j) {
        Vertex c = pins[0][j], d = pins[1][j];
        if ((a == c) != (b == d) || gg[0].adj(a, c) != gg[1].adj(b, d)) return false;
      }
    }
    return true;
  }

  // A pin pair whose distances differ lets Spoiler halve on the closer side.
  bool distance_cutoff(int r) {
    std::size_t m = pins[0].size();
    for (std::size_t i = 0; i < m; ++i) {
      const auto& ra = gg[0].row(pins[0][i]);
      const auto& rb = gg[1].row(pins[1][i]);
      for (std::size_t j = 0; j < i; ++j) {
        std::uint16_t da = ra[pins[0][j]], db = rb[pins[1][j]];
        if (da == db) continue;
        int shorter = da < db ? 0 : 1;
        if (playable(shorter) && halving_rounds(std::min(da, db)) <= r) return true;
      }
    }
    return false;
  }

  // ---- one-round test ----

  std::vector<Vertex> touched_scratch;
  std::vector<int> used_scratch;
  std::vector<std::pair<ColorSet, std::uint64_t>> type_scratch[2];

  void atomic_types(int s, std::vector<std::pair<ColorSet, std::uint64_t>>& types) {
    GameGraph& G = gg[s];
    auto& mask = mask_scratch[s];
    auto& touched = touched_scratch;
    touched.clear();
    for (std::size_t i = 0; i < pins[s].size(); ++i)
      for (Vertex u : G.g->neighbors(pins[s][i])) {
        if (pin_count[s][u]) continue;
        if (!mask[u]) touched.push_back(u);
        mask[u] |= std::uint64_t{1} << i;
      }
    types.clear();
    auto& used = used_scratch;
    used.assign(G.color_values.size(), 0);
    for (Vertex u : touched) {
      types.emplace_back(G.g->colors(u), mask[u]);
      ++used[G.color_index[u]];
      mask[u] = 0;
    }
    for (std::size_t i = 0; i < pins[s].size(); ++i) {
      Vertex p = pins[s][i];
      bool first = true;
      for (std::size_t j = 0; j < i; ++j) first &= pins[s][j] != p;
      if (first) ++used[G.color_index[p]];
    }
    for (std::size_t c = 0; c < G.color_values.size(); ++c)
      if (static_cast<int>(G.by_color[c].size()) > used[c]) types.emplace_back(G.color_values[c], 0);
    std::sort(types.begin(), types.end());
    types.erase(std::unique(types.begin(), types.end()), types.end());
  }

  bool one_round_win() {
    auto& t = type_scratch;
    atomic_types(0, t[0]);
    atomic_types(1, t[1]);
    for (int s = 0; s < 2; ++s) {
      if (!playable(s)) continue;
      if (!std::includes(t[1 - s].begin(), t[1 - s].end(), t[s].begin(), t[s].end())) return true;
    }
    return false;
  }

  // ---- move generation ----

  // Classes under which moves are interchangeable at the current node: orbits fixing the
  // pins in orbit mode, static twin classes otherwise.
  const std::vector<int>& node_classes(int s, std::vector<int>& buffer) {
    if (!orbit_mode) return gg[s].twin;
    refine_orbits(s, buffer);
    return buffer;
  }

  void refine_orbits(int s, std::vector<int>& color) {
    // For colored forests the stable 1-WL partition is the orbit partition.
    GameGraph& G = gg[s];
    int n = G.n;
    std::vector<std::uint64_t> h(n);
    for (Vertex v = 0; v < n; ++v) h[v] = mix64(G.g->colors(v));
    for (std::size_t i = 0; i < pins[s].size(); ++i) h[pins[s][i]] ^= mix64(0xABCDEFULL + i * 7919);
    auto compress = [&](const std::vector<std::uint64_t>& keys, std::vector<int>& out) {
      std::vector<std::uint64_t> sorted = keys;
      std::sort(sorted.begin(), sorted.end());
      sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
      out.resize(n);
      for (Vertex v = 0; v < n; ++v)
        out[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[v]) - sorted.begin());
      return static_cast<int>(sorted.size());
    };
    int classes_now = compress(h, color);
    std::vector<std::uint64_t> next(n);
    while (true) {
      for (Vertex v = 0; v < n; ++v) {
        std::uint64_t acc = mix64(static_cast<std::uint64_t>(color[v]) * 1000003ULL + 17);
        for (Vertex w : G.g->neighbors(v)) acc += mix64(static_cast<std::uint64_t>(color[w]) + 0x51ED27ULL);
        next[v] = acc;
      }
      std::vector<int> refined;
      int count = compress(next, refined);
      color = std::move(refined);
      if (count == classes_now) break;
      classes_now = count;
    }
  }

  std::uint32_t fresh_stamp() {
    if (++stamp_value == 0) {
      for (auto& s : stamp) std::fill(s.begin(), s.end(), 0);
      stamp_value = 1;
    }
    return stamp_value;
  }

  // Replies to Spoiler playing v on side s that keep a partial isomorphism and do not hand
  // Spoiler an immediate halving win within r-1 rounds. Same-index reply first.
  // With same_only, only the same-index reply is considered. A nonnegative skip_class drops
  // that class (already refuted).
  void replies(int s, Vertex v, int r, const std::vector<int>& cls_o, std::vector<Vertex>& out,
               bool same_only = false, int skip_class = -1) {
    int o = 1 - s;
    GameGraph& A = gg[s];
    GameGraph& B = gg[o];
    out.clear();
    int c = B.find_color(A.g->colors(v));
    if (c < 0) return;
    std::size_t m = pins[s].size();
    int anchor = -1;
    for (std::size_t i = 0; i < m; ++i)
      if (A.adj(v, pins[s][i]) && (anchor < 0 || B.g->degree(pins[o][i]) < B.g->degree(pins[o][anchor])))
        anchor = static_cast<int>(i);
    const std::vector<Vertex>& source = anchor >= 0 ? B.g->neighbors(pins[o][anchor]) : B.by_color[c];

    auto [next_alt, next_last] = after_move(s);
    auto playable_after = [&](int side) {
      return next_alt == kUnlimited || next_last < 0 || next_last == side || next_alt > 0;
    };
    std::vector<std::uint16_t> dv(m);
    for (std::size_t i = 0; i < m; ++i) dv[i] = A.row(pins[s][i])[v];

    std::uint32_t mark = fresh_stamp();
    if (skip_class >= 0) stamp[o][skip_class] = mark;
    std::vector<std::pair<long, Vertex>> scored;
    auto consider = [&](Vertex w) {
      if (pin_count[o][w] || B.color_index[w] != c) return;
      int cls = cls_o[w];
      if (stamp[o][cls] == mark) return;
      long score = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (A.adj(v, pins[s][i]) != B.adj(w, pins[o][i])) return;
        std::uint16_t dw = B.row(pins[o][i])[w];
        if (dw != dv[i]) {
          int shorter = dv[i] < dw ? s : o;
          if (playable_after(shorter) && halving_rounds(std::min(dv[i], dw)) <= r - 1) return;
          score += dv[i] == kFar || dw == kFar ? 4L * (A.n + B.n) : std::abs(int(dv[i]) - int(dw));
        }
      }
      stamp[o][cls] = mark;
      if (w == v) score = -1;
      score = score * 8 + std::min(7, std::abs(A.g->degree(v) - B.g->degree(w)));
      scored.emplace_back(score, w);
    };
    // The same-index reply goes first and represents its class.
    if (v < B.n) {
      bool in_source = anchor < 0 || B.adj(v, pins[o][anchor]);
      if (in_source) consider(v);
    }
    if (!same_only)
      for (Vertex w : source) consider(w);
    std::sort(scored.begin(), scored.end());
    for (auto& [sc, w] : scored) out.push_back(w);
  }

  std::string memo_key() const {
    std::size_t m = pins[0].size();
    std::vector<std::uint64_t> pairs(m);
    for (std::size_t i = 0; i < m; ++i)
      pairs[i] = (static_cast<std::uint64_t>(pins[0][i]) << 32) | static_cast<std::uint32_t>(pins[1][i]);
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    std::string key(reinterpret_cast<const char*>(pairs.data()), pairs.size() * sizeof(std::uint64_t));
    key.push_back(static_cast<char>(alt + 1));
    key.push_back(static_cast<char>(last + 1));
    return key;
  }

  // Spoiler to move with r rounds left; the current position is a partial isomorphism and
  // no halving cutoff applies at r.
  bool win(int r) {
    if (r <= 0) return false;
    ++nodes;
    if (one_round_win()) return true;
    if (r == 1) return false;

    std::string key = memo_key();
    if (auto it = memo.find(key); it != memo.end()) {
      if (r >= it->second.min_win) return true;
      if (r <= it->second.max_lose) return false;
    }
    bool result = search(r);
    if (memo.size() < options.memo_limit || memo.count(key)) {
      auto& e = memo[key];
      if (result)
        e.min_win = static_cast<std::int8_t>(std::min<int>(e.min_win, r));
      else
        e.max_lose = static_cast<std::int8_t>(std::max<int>(e.max_lose, r));
    }
    return result;
  }

  bool search(int r) {
    std::vector<int> buffer[2];
    const std::vector<int>* cls[2] = {&node_classes(0, buffer[0]), &node_classes(1, buffer[1])};
    return try_moves(r, cls, nullptr);
  }

  // Tries Spoiler moves in priority order; returns whether one wins within r.
  bool try_moves(int r, const std::vector<int>* const cls[2], std::optional<SpoilerMove>* winner) {
    std::vector<char> seen[2];
    for (int s = 0; s < 2; ++s) seen[s].assign(gg[s].n, 0);
    std::vector<Vertex> reply_list;
    for (auto [s, v] : move_order) {
      if (!playable(s) || pin_count[s][v]) continue;
      int k = (*cls[s])[v];
      if (seen[s][k]) continue;
      seen[s][k] = 1;
      auto saved = std::make_pair(alt, last);
      auto attempt = [&](const std::vector<Vertex>& list) {
        std::tie(alt, last) = after_move(s);
        bool refuted = false;
        for (Vertex w : list) {
          if (s == 0)
            push(v, w);
          else
            push(w, v);
          refuted = !win(r - 1);
          pop();
          if (refuted) break;
        }
        std::tie(alt, last) = saved;
        return refuted;
      };
      // Cheap probe: the same-index reply often refutes on near-identical graphs.
      replies(s, v, r, *cls[1 - s], reply_list, true);
      int tried = -1;
      bool refuted = false;
      if (!reply_list.empty()) {
        std::vector<Vertex> probe = reply_list;
        refuted = attempt(probe);
        tried = (*cls[1 - s])[v];
      }
      if (!refuted) {
        replies(s, v, r, *cls[1 - s], reply_list, false, tried);
        std::vector<Vertex> local = reply_list;
        refuted = attempt(local);
      }
      if (!refuted) {
        if (winner) *winner = SpoilerMove{static_cast<Side>(s), v};
        return true;
      }
    }
    return false;
  }

  // Entry from a freshly loaded position.
  bool win_top(int r) {
    if (!current_partial_iso()) return true;
    if (r <= 0) return false;
    if (distance_cutoff(r)) return true;
    return win(r);
  }

  std::optional<SpoilerMove> find_winning_move(int r) {
    if (r <= 0 || !current_partial_iso()) return std::nullopt;
    std::vector<int> buffer[2];
    const std::vector<int>* cls[2] = {&node_classes(0, buffer[0]), &node_classes(1, buffer[1])};
    std::optional<SpoilerMove> winner;
    try_moves(r, cls, &winner);
    return winner;
  }
};

EfSolver::EfSolver(const ColoredGraph& left, const ColoredGraph& right, SolverOptions options)
    : impl_(std::make_unique<Impl>(left, right, options)) {}

EfSolver::~EfSolver() = default;

std::uint64_t EfSolver::nodes_expanded() const { return impl_->nodes; }

const ColoredGraph& EfSolver::graph(Side s) const { return *impl_->gg[static_cast<int>(s)].g; }

bool EfSolver::spoiler_wins_within(const PinList& pins, int rounds, int alternation_budget,
                                   std::optional<Side> last_side) {
  impl_->load(pins, alternation_budget, last_side);
  return impl_->win_top(rounds);
}

std::optional<SpoilerMove> EfSolver::winning_move(const PinList& pins, int rounds, int alternation_budget,
                                                  std::optional<Side> last_side) {
  impl_->load(pins, alternation_budget, last_side);
  if (!impl_->win_top(rounds)) return std::nullopt;
  impl_->load(pins, alternation_budget, last_side);
  return impl_->find_winning_move(rounds);
}

GameOutcome EfSolver::value(const PinList& pins, int cap, int alternation_budget, std::optional<Side> last_side) {
  if (cap < 0) throw ArgumentError("cap must be nonnegative");
  auto start = std::chrono::steady_clock::now();
  std::uint64_t before = impl_->nodes;
  GameOutcome out;
  out.cap = cap;
  out.alternations = alternation_budget < 0 ? kUnlimited : alternation_budget;
  for (int k = 0; k <= cap; ++k) {
    impl_->load(pins, alternation_budget, last_side);
    if (impl_->win_top(k)) {
      out.spoiler_wins = true;
      out.k = k;
      if (k > 0) {
        impl_->load(pins, alternation_budget, last_side);
        out.first_move = impl_->find_winning_move(k);
      }
      break;
    }
  }
  out.nodes_expanded = impl_->nodes - before;
  out.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

DuplicatorReply EfSolver::best_reply(const PinList& pins, SpoilerMove move, int rounds_left, int alternation_budget,
                                     std::optional<Side> last_side) {
  if (rounds_left < 1) throw ProtocolError("no round left for a Spoiler move");
  Impl& im = *impl_;
  im.load(pins, alternation_budget, last_side);
  int s = static_cast<int>(move.side), o = 1 - s;
  if (!im.gg[s].g->valid(move.vertex)) throw ArgumentError("Spoiler move out of range");
  if (!im.playable(s)) throw ProtocolError("Spoiler move exceeds the alternation budget");
  if (!im.current_partial_iso()) throw ProtocolError("position is already won by Spoiler");

  auto [next_alt, next_last] = im.after_move(s);
  std::optional<Side> next_side = next_last < 0 ? std::nullopt : std::optional<Side>(static_cast<Side>(next_last));
  auto child = [&](Vertex w) {
    PinList p = pins;
    p.emplace_back(s == 0 ? move.vertex : w, s == 0 ? w : move.vertex);
    return p;
  };
  // Classes of interchangeable replies: orbits fixing the current pins.
  std::vector<int> buffer;
  std::vector<int> cls = im.node_classes(o, buffer);

  std::vector<Vertex> alive;
  std::vector<int> seen_class;
  for (Vertex w = 0; w < im.gg[o].n; ++w) {
    PinList p = child(w);
    if (!partial_iso(*im.gg[0].g, *im.gg[1].g, p)) continue;
    if (std::find(seen_class.begin(), seen_class.end(), cls[w]) != seen_class.end()) continue;
    seen_class.push_back(cls[w]);
    alive.push_back(w);
  }
  if (alive.empty()) return {0, 0};
  int survival = rounds_left;
  for (int j = 1; j <= rounds_left - 1; ++j) {
    std::vector<Vertex> next;
    for (Vertex w : alive) {
      im.load(child(w), next_alt, next_side);
      if (!im.win_top(j)) next.push_back(w);
    }
    if (next.empty()) {
      survival = j;
      break;
    }
    alive = std::move(next);
  }
  return {alive.front(), survival};
}

GameOutcome ef_value(const ColoredGraph& left, const ColoredGraph& right, int cap) {
  EfSolver solver(left, right);
  return solver.value({}, cap);
}

GameOutcome ef_value_pinned(const ColoredGraph& left, const ColoredGraph& right, const PinList& pins, int cap) {
  for (auto [a, b] : pins)
    if (!left.valid(a) || !right.valid(b)) throw ArgumentError("pinned vertex out of range");
  EfSolver solver(left, right);
  return solver.value(pins, cap);
}

GameOutcome ef_value_alternation(const ColoredGraph& left, const ColoredGraph& right, int cap, int r,
                                 const PinList& pins) {
  if (r < 0) throw ArgumentError("alternation budget must be nonnegative");
  EfSolver solver(left, right);
  return solver.value(pins, cap, r);
}

DuplicatorReply optimal_duplicator_move(const GamePosition& pos, SpoilerMove move) {
  if (!pos.left || !pos.right) throw ArgumentError("position without graphs");
  if (pos.rounds_left < 1) throw ProtocolError("no pending Spoiler move");
  EfSolver solver(*pos.left, *pos.right);
  return solver.best_reply(pos.pinned, move, pos.rounds_left, pos.alternation_budget, pos.last_side);
}

}  // namespace efd
