#include "efd/canonical.hpp"

#include <algorithm>
#include <functional>

#include "efd/metrics.hpp"

namespace efd {

namespace {

struct Label {
  ColorSet colors = 0;
  std::uint64_t pins = 0;
};

void append_u64(std::string& out, std::uint64_t x) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((x >> (8 * i)) & 0xFF));
}

CanonicalCode labeled_code(const ColoredGraph& t, Vertex root, const std::vector<Label>& label) {
  int n = t.order();
  std::vector<Vertex> order{root}, parent(n, -1);
  parent[root] = root;
  for (std::size_t head = 0; head < order.size(); ++head)
    for (Vertex w : t.neighbors(order[head]))
      if (parent[w] == -1) {
        parent[w] = order[head];
        order.push_back(w);
      }
  std::vector<std::vector<std::string>> kids(n);
  std::string result;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Vertex v = *it;
    auto& ks = kids[v];
    std::sort(ks.begin(), ks.end());
    std::string code = "(";
    append_u64(code, label[v].colors);
    append_u64(code, label[v].pins);
    for (auto& k : ks) code += k;
    code += ')';
    ks.clear();
    ks.shrink_to_fit();
    if (v == root)
      result = std::move(code);
    else
      kids[parent[v]].push_back(std::move(code));
  }
  return result;
}

std::vector<Vertex> tree_centers(const ColoredGraph& t) {
  int n = t.order();
  if (n <= 2) {
    std::vector<Vertex> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    return all;
  }
  std::vector<int> deg(n);
  std::vector<Vertex> layer;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = t.degree(v);
    if (deg[v] <= 1) layer.push_back(v);
  }
  int remaining = n;
  while (remaining > 2) {
    remaining -= static_cast<int>(layer.size());
    std::vector<Vertex> next;
    for (Vertex v : layer)
      for (Vertex w : t.neighbors(v))
        if (--deg[w] == 1) next.push_back(w);
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

std::vector<Label> labels_with_pins(const ColoredGraph& g) {
  std::vector<Label> out(g.order());
  for (Vertex v = 0; v < g.order(); ++v) out[v].colors = g.colors(v);
  const auto& pins = g.pins();
  for (std::size_t i = 0; i < pins.size() && i < 64; ++i) out[pins[i]].pins |= std::uint64_t{1} << i;
  return out;
}

std::vector<int> refine_labels(const ColoredGraph& g, const std::vector<std::uint64_t>& initial) {
  int n = g.order();
  std::vector<int> color(n);
  {
    std::vector<std::uint64_t> keys = initial;
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (Vertex v = 0; v < n; ++v)
      color[v] = static_cast<int>(std::lower_bound(keys.begin(), keys.end(), initial[v]) - keys.begin());
  }
  int classes = n == 0 ? 0 : *std::max_element(color.begin(), color.end()) + 1;
  std::vector<std::vector<int>> sig(n);
  while (true) {
    for (Vertex v = 0; v < n; ++v) {
      auto& s = sig[v];
      s.clear();
      s.push_back(color[v]);
      for (Vertex w : g.neighbors(v)) s.push_back(color[w]);
      std::sort(s.begin() + 1, s.end());
    }
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return sig[a] < sig[b]; });
    std::vector<int> next(n);
    int id = -1;
    for (int i = 0; i < n; ++i) {
      if (i == 0 || sig[idx[i]] != sig[idx[i - 1]]) ++id;
      next[idx[i]] = id;
    }
    int next_classes = id + 1;
    color = std::move(next);
    if (next_classes == classes) break;
    classes = next_classes;
  }
  return color;
}

std::vector<std::uint64_t> default_initial(const ColoredGraph& g) {
  std::vector<std::uint64_t> out(g.order());
  for (Vertex v = 0; v < g.order(); ++v) out[v] = g.colors(v);
  return out;
}

}  // namespace

CanonicalCode ahu_code(const ColoredGraph& tree, Vertex root) {
  if (!is_tree(tree)) throw StructuralError("ahu_code requires a tree");
  if (!tree.valid(root)) throw ArgumentError("root out of range");
  std::vector<Label> label(tree.order());
  for (Vertex v = 0; v < tree.order(); ++v) label[v].colors = tree.colors(v);
  return labeled_code(tree, root, label);
}

bool tree_isomorphic(const ColoredGraph& t1, const ColoredGraph& t2) {
  if (!is_tree(t1) || !is_tree(t2)) throw StructuralError("tree_isomorphic requires trees");
  if (t1.order() != t2.order() || t1.pins().size() != t2.pins().size()) return false;
  auto l1 = labels_with_pins(t1);
  auto l2 = labels_with_pins(t2);
  auto best = [](const ColoredGraph& t, const std::vector<Label>& l) {
    CanonicalCode code;
    for (Vertex c : tree_centers(t)) {
      auto k = labeled_code(t, c, l);
      if (code.empty() || k < code) code = std::move(k);
    }
    return code;
  };
  return best(t1, l1) == best(t2, l2);
}

std::pair<std::vector<int>, std::vector<int>> refine_jointly(const ColoredGraph& g1,
                                                             std::vector<std::uint64_t> init1,
                                                             const ColoredGraph& g2,
                                                             std::vector<std::uint64_t> init2) {
  if (init1.empty()) init1 = default_initial(g1);
  if (init2.empty()) init2 = default_initial(g2);
  ColoredGraph u = disjoint_union(g1, g2);
  init1.insert(init1.end(), init2.begin(), init2.end());
  auto c = refine_labels(u, init1);
  return {std::vector<int>(c.begin(), c.begin() + g1.order()),
          std::vector<int>(c.begin() + g1.order(), c.end())};
}

std::vector<int> wl_refine(const ColoredGraph& g, std::vector<std::uint64_t> initial) {
  if (initial.empty()) initial = default_initial(g);
  if (static_cast<int>(initial.size()) != g.order()) throw ArgumentError("initial coloring size mismatch");
  return refine_labels(g, initial);
}

namespace {

bool histograms_match(const std::vector<int>& a, const std::vector<int>& b) {
  auto x = a, y = b;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

bool individualize_search(const ColoredGraph& g1, const ColoredGraph& g2, std::vector<std::uint64_t> l1,
                          std::vector<std::uint64_t> l2) {
  auto [c1, c2] = refine_jointly(g1, l1, g2, l2);
  if (!histograms_match(c1, c2)) return false;
  int n = g1.order();
  std::vector<int> count(n + g2.order() + 1, 0);
  for (int c : c1) ++count[c];
  Vertex pick = -1;
  for (Vertex v = 0; v < n; ++v)
    if (count[c1[v]] > 1 && (pick == -1 || count[c1[v]] < count[c1[pick]])) pick = v;
  if (pick == -1) {
    // Discrete coloring: the map is forced, verify it.
    std::vector<Vertex> image(n);
    std::vector<Vertex> by_color(n + g2.order() + 1, -1);
    for (Vertex w = 0; w < g2.order(); ++w) by_color[c2[w]] = w;
    for (Vertex v = 0; v < n; ++v) image[v] = by_color[c1[v]];
    for (Vertex v = 0; v < n; ++v)
      for (Vertex w : g1.neighbors(v))
        if (!g2.adjacent(image[v], image[w])) return false;
    return true;
  }
  std::uint64_t fresh = std::uint64_t{1} << 63;
  std::vector<std::uint64_t> base1(n), base2(g2.order());
  for (Vertex v = 0; v < n; ++v) base1[v] = static_cast<std::uint64_t>(c1[v]);
  for (Vertex w = 0; w < g2.order(); ++w) base2[w] = static_cast<std::uint64_t>(c2[w]);
  base1[pick] = fresh;
  for (Vertex w = 0; w < g2.order(); ++w) {
    if (c2[w] != c1[pick]) continue;
    auto trial = base2;
    trial[w] = fresh;
    if (individualize_search(g1, g2, base1, trial)) return true;
  }
  return false;
}

std::vector<std::uint64_t> rooted_initial(const ColoredGraph& g, const std::vector<Vertex>& roots) {
  // Mix colors with root positions; any injective-enough mix works since both sides use it.
  std::vector<std::uint64_t> out(g.order());
  for (Vertex v = 0; v < g.order(); ++v) out[v] = g.colors(v) * 0x9E3779B97F4A7C15ULL;
  for (std::size_t i = 0; i < roots.size(); ++i) out[roots[i]] ^= (std::uint64_t{i} + 1) * 0xC2B2AE3D27D4EB4FULL;
  return out;
}

}  // namespace

bool graph_isomorphic_small(const ColoredGraph& g1, const ColoredGraph& g2) {
  if (g1.order() > kSmallIsoCap || g2.order() > kSmallIsoCap)
    throw CapError("graph_isomorphic_small is limited to 12 vertices");
  if (g1.order() != g2.order() || g1.size() != g2.size() || g1.pins().size() != g2.pins().size()) return false;
  auto l1 = labels_with_pins(g1);
  auto l2 = labels_with_pins(g2);
  std::vector<std::uint64_t> i1(g1.order()), i2(g2.order());
  std::vector<std::pair<ColorSet, std::uint64_t>> keys;
  for (auto& l : l1) keys.emplace_back(l.colors, l.pins);
  for (auto& l : l2) keys.emplace_back(l.colors, l.pins);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  auto key_of = [&](const Label& l) {
    return static_cast<std::uint64_t>(
        std::lower_bound(keys.begin(), keys.end(), std::make_pair(l.colors, l.pins)) - keys.begin());
  };
  for (Vertex v = 0; v < g1.order(); ++v) i1[v] = key_of(l1[v]);
  for (Vertex v = 0; v < g2.order(); ++v) i2[v] = key_of(l2[v]);
  auto [c1, c2] = refine_jointly(g1, i1, g2, i2);
  if (!histograms_match(c1, c2)) return false;

  int n = g1.order();
  std::vector<Vertex> image(n, -1);
  std::vector<char> used(n, 0);
  std::function<bool(Vertex)> extend = [&](Vertex v) {
    if (v == n) return true;
    for (Vertex w = 0; w < n; ++w) {
      if (used[w] || c2[w] != c1[v]) continue;
      bool ok = true;
      for (Vertex u = 0; u < v && ok; ++u) ok = g1.adjacent(u, v) == g2.adjacent(image[u], w);
      if (!ok) continue;
      image[v] = w;
      used[w] = 1;
      if (extend(v + 1)) return true;
      used[w] = 0;
    }
    return false;
  };
  return extend(0);
}

bool rooted_graph_isomorphic(const ColoredGraph& g1, const std::vector<Vertex>& roots1, const ColoredGraph& g2,
                             const std::vector<Vertex>& roots2) {
  if (g1.order() != g2.order() || g1.size() != g2.size() || roots1.size() != roots2.size()) return false;
  for (std::size_t i = 0; i < roots1.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if ((roots1[i] == roots1[j]) != (roots2[i] == roots2[j])) return false;
  return individualize_search(g1, g2, rooted_initial(g1, roots1), rooted_initial(g2, roots2));
}

int RootedCodeInterner::intern(ColorSet label, std::vector<int> child_ids) {
  std::sort(child_ids.begin(), child_ids.end());
  auto [it, inserted] = table_.try_emplace({label, std::move(child_ids)}, size());
  return it->second;
}

std::vector<int> subtree_codes(const ColoredGraph& g, Vertex root, RootedCodeInterner& interner,
                               const std::vector<char>* allowed, const std::vector<ColorSet>* label) {
  int n = g.order();
  std::vector<int> code(n, -1);
  std::vector<Vertex> order{root}, parent(n, -2);
  parent[root] = -1;
  for (std::size_t head = 0; head < order.size(); ++head)
    for (Vertex w : g.neighbors(order[head]))
      if (parent[w] == -2 && (!allowed || (*allowed)[w])) {
        parent[w] = order[head];
        order.push_back(w);
      }
  std::vector<std::vector<int>> kids(n);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Vertex v = *it;
    ColorSet l = label ? (*label)[v] : g.colors(v);
    code[v] = interner.intern(l, std::move(kids[v]));
    kids[v] = {};
    if (parent[v] >= 0) kids[parent[v]].push_back(code[v]);
  }
  return code;
}

}  // namespace efd

namespace efd {

CanonicalCode free_tree_code(const ColoredGraph& tree) {
  if (!is_tree(tree)) throw StructuralError("free_tree_code requires a tree");
  auto label = labels_with_pins(tree);
  CanonicalCode code;
  for (Vertex c : tree_centers(tree)) {
    auto k = labeled_code(tree, c, label);
    if (code.empty() || k < code) code = std::move(k);
  }
  return code;
}

std::vector<ColoredGraph> enumerate_trees(int n) {
  if (n < 1) return {};
  if (n > 16) throw CapError("tree enumeration is limited to 16 vertices");
  std::vector<ColoredGraph> level{ColoredGraph(1)};
  for (int size = 2; size <= n; ++size) {
    std::map<CanonicalCode, ColoredGraph> next;
    for (const auto& t : level)
      for (Vertex v = 0; v < t.order(); ++v) {
        ColoredGraph grown = t;
        Vertex leaf = grown.add_vertex();
        grown.add_edge(v, leaf);
        next.try_emplace(free_tree_code(grown), std::move(grown));
      }
    level.clear();
    for (auto& [code, t] : next) level.push_back(std::move(t));
  }
  return level;
}

}  // namespace efd

namespace efd {

std::vector<ColoredGraph> enumerate_graphs(int n) {
  if (n < 0) return {};
  if (n > 6) throw CapError("graph enumeration is limited to 6 vertices");
  std::vector<std::pair<Vertex, Vertex>> slots;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) slots.emplace_back(u, v);
  std::vector<ColoredGraph> found;
  for (std::uint32_t mask = 0; mask < (1U << slots.size()); ++mask) {
    ColoredGraph g(n);
    for (std::size_t i = 0; i < slots.size(); ++i)
      if (mask >> i & 1U) g.add_edge(slots[i].first, slots[i].second);
    bool fresh = true;
    for (const auto& h : found)
      if (graph_isomorphic_small(g, h)) {
        fresh = false;
        break;
      }
    if (fresh) found.push_back(std::move(g));
  }
  return found;
}

}  // namespace efd
