#include "efd/random_structs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <unordered_map>

#include "efd/canonical.hpp"
#include "efd/metrics.hpp"
#include "efd/rng.hpp"
#include "efd/strategies.hpp"

namespace efd {

// ---------------------------------------------------------------------------
// Samplers

std::vector<Vertex> prufer_encode(const ColoredGraph& tree) {
  int n = tree.order();
  if (n < 2 || !is_tree(tree)) throw ArgumentError("prufer_encode needs a tree on at least 2 vertices");
  std::vector<Vertex> parent(n, -1), order{n - 1};
  parent[n - 1] = n - 1;
  for (std::size_t head = 0; head < order.size(); ++head)
    for (Vertex w : tree.neighbors(order[head]))
      if (parent[w] < 0) {
        parent[w] = order[head];
        order.push_back(w);
      }
  std::vector<int> degree(n);
  for (Vertex v = 0; v < n; ++v) degree[v] = tree.degree(v);
  std::vector<Vertex> code(n - 2);
  Vertex ptr = 0;
  while (degree[ptr] != 1) ++ptr;
  Vertex leaf = ptr;
  for (int i = 0; i < n - 2; ++i) {
    Vertex next = parent[leaf];
    code[i] = next;
    if (--degree[next] == 1 && next < ptr) {
      leaf = next;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  return code;
}

ColoredGraph prufer_decode(std::span<const Vertex> seq, int n) {
  if (n < 2 || static_cast<int>(seq.size()) != n - 2) throw ArgumentError("Prüfer sequence must have length n - 2");
  std::vector<int> degree(n, 1);
  for (Vertex x : seq) {
    if (x < 0 || x >= n) throw ArgumentError("Prüfer entry out of range");
    ++degree[x];
  }
  ColoredGraph tree(n);
  Vertex ptr = 0;
  while (degree[ptr] != 1) ++ptr;
  Vertex leaf = ptr;
  for (Vertex x : seq) {
    tree.add_edge(leaf, x);
    if (--degree[x] == 1 && x < ptr) {
      leaf = x;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  tree.add_edge(leaf, n - 1);
  return tree;
}

ColoredGraph sample_tree(int n, std::mt19937_64& rng) {
  if (n < 1) throw ArgumentError("sample_tree needs n >= 1");
  if (n == 1) return ColoredGraph(1);
  std::uniform_int_distribution<Vertex> pick(0, n - 1);
  std::vector<Vertex> seq(n - 2);
  for (auto& x : seq) x = pick(rng);
  return prufer_decode(seq, n);
}

ColoredGraph sample_tree(int n, std::uint64_t seed) {
  auto rng = make_rng(seed);
  return sample_tree(n, rng);
}

ColoredGraph sample_gnp(int n, double p, std::mt19937_64& rng) {
  if (n < 0 || !(p >= 0 && p <= 1)) throw ArgumentError("sample_gnp needs n >= 0 and 0 <= p <= 1");
  if (p == 1) return complete_graph(n);
  ColoredGraph g(n);
  if (p == 0) return g;
  // Geometric skipping over the lower triangle.
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double lq = std::log1p(-p);
  long long v = 1, w = -1;
  while (v < n) {
    w += 1 + static_cast<long long>(std::floor(std::log1p(-unit(rng)) / lq));
    while (w >= v && v < n) {
      w -= v;
      ++v;
    }
    if (v < n) g.add_edge(static_cast<Vertex>(v), static_cast<Vertex>(w));
  }
  return g;
}

ColoredGraph sample_gnp(int n, double p, std::uint64_t seed) {
  auto rng = make_rng(seed);
  return sample_gnp(n, p, rng);
}

ColoredGraph sample_forest(int n, int k, std::mt19937_64& rng) {
  if (k < 1 || k > n) throw ArgumentError("sample_forest needs 1 <= k <= n");
  // A tree on n + 1 vertices whose extra vertex has degree k: its Prüfer code holds the
  // extra label exactly k - 1 times, everything else uniform.
  int star = n;
  std::vector<Vertex> seq(n - 1);
  std::vector<int> slots(n - 1);
  std::iota(slots.begin(), slots.end(), 0);
  for (int i = 0; i < k - 1; ++i) {
    int j = std::uniform_int_distribution<int>(i, n - 2)(rng);
    std::swap(slots[i], slots[j]);
  }
  std::vector<char> is_star(n - 1, 0);
  for (int i = 0; i < k - 1; ++i) is_star[slots[i]] = 1;
  std::uniform_int_distribution<Vertex> pick(0, n - 1);
  for (int i = 0; i < n - 1; ++i) seq[i] = is_star[i] ? star : pick(rng);
  auto tree = prufer_decode(seq, n + 1);

  // Order-preserving relabel of the roots onto 0..k-1 and the rest onto k..n-1.
  std::vector<Vertex> label(n, -1);
  Vertex next_root = 0;
  std::vector<Vertex> roots = tree.neighbors(star);
  std::sort(roots.begin(), roots.end());
  for (Vertex r : roots) label[r] = next_root++;
  Vertex next_other = k;
  for (Vertex v = 0; v < n; ++v)
    if (label[v] < 0) label[v] = next_other++;
  ColoredGraph forest(n);
  for (auto [u, v] : tree.edges())
    if (u != star && v != star) forest.add_edge(label[u], label[v]);
  return forest;
}

ColoredGraph sample_forest(int n, int k, std::uint64_t seed) {
  auto rng = make_rng(seed);
  return sample_forest(n, k, rng);
}

// ---------------------------------------------------------------------------
// Giant component pipeline

ColoredGraph giant_component(const ColoredGraph& g, std::vector<Vertex>* original) {
  auto comps = connected_components(g);
  if (comps.count() == 0) {
    if (original) original->clear();
    return ColoredGraph();
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < comps.members.size(); ++i)
    if (comps.members[i].size() > comps.members[best].size()) best = i;
  if (original) *original = comps.members[best];
  return induced_subgraph(g, comps.members[best]).first;
}

double giant_fraction_limit(double c) {
  if (c <= 1) return 0;
  double x = 1;
  for (int i = 0; i < 10000; ++i) {
    double next = 1 - std::exp(-c * x);
    if (std::abs(next - x) < 1e-15) break;
    x = next;
  }
  return x;
}

ColoredGraph two_core(const ColoredGraph& g, std::vector<Vertex>* original) {
  auto mask = core_mask(g);
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < g.order(); ++v)
    if (mask[v]) keep.push_back(v);
  if (original) *original = keep;
  return induced_subgraph(g, keep).first;
}

Kernel kernelize(const ColoredGraph& core) {
  int n = core.order();
  for (Vertex v = 0; v < n; ++v)
    if (core.degree(v) < 2) throw StructuralError("kernelize needs minimum degree >= 2");
  std::vector<Vertex> kid(n, -1);
  Kernel kernel;
  auto promote = [&](Vertex v) {
    kid[v] = static_cast<Vertex>(kernel.core_vertex.size());
    kernel.core_vertex.push_back(v);
  };
  for (Vertex v = 0; v < n; ++v)
    if (core.degree(v) >= 3) promote(v);
  // Bare cycles keep their smallest vertex as a loop vertex.
  auto comps = connected_components(core);
  for (auto& c : comps.members)
    if (std::none_of(c.begin(), c.end(), [&](Vertex v) { return kid[v] >= 0; })) promote(c.front());
  std::sort(kernel.core_vertex.begin(), kernel.core_vertex.end());
  for (std::size_t i = 0; i < kernel.core_vertex.size(); ++i) kid[kernel.core_vertex[i]] = static_cast<Vertex>(i);

  kernel.graph = Multigraph(static_cast<int>(kernel.core_vertex.size()));
  std::vector<std::vector<char>> used(n);
  for (Vertex v : kernel.core_vertex) used[v].assign(core.degree(v), 0);
  auto slot = [&](Vertex at, Vertex nbr) {
    const auto& adj = core.neighbors(at);
    return static_cast<std::size_t>(std::find(adj.begin(), adj.end(), nbr) - adj.begin());
  };
  for (Vertex v : kernel.core_vertex) {
    const auto& adj = core.neighbors(v);
    for (std::size_t i = 0; i < adj.size(); ++i) {
      if (used[v][i]) continue;
      used[v][i] = 1;
      std::vector<Vertex> path{v, adj[i]};
      Vertex prev = v, cur = adj[i];
      while (kid[cur] < 0) {
        const auto& two = core.neighbors(cur);
        Vertex next = two[0] == prev ? two[1] : two[0];
        prev = cur;
        cur = next;
        path.push_back(cur);
      }
      used[cur][slot(cur, prev)] = 1;
      kernel.graph.add_edge(kid[v], kid[cur], std::move(path));
    }
  }
  return kernel;
}

KernelDecomposition decompose(const ColoredGraph& component) {
  KernelDecomposition dec;
  dec.host = component;
  dec.core = two_core(component, &dec.core_to_host);
  dec.host_to_core.assign(component.order(), -1);
  for (std::size_t i = 0; i < dec.core_to_host.size(); ++i) dec.host_to_core[dec.core_to_host[i]] = static_cast<Vertex>(i);
  dec.kernel = kernelize(dec.core);
  dec.pendant.resize(dec.core.order());
  std::vector<char> seen(component.order(), 0);
  for (Vertex c = 0; c < dec.core.order(); ++c) {
    Vertex root = dec.core_to_host[c];
    auto& tree = dec.pendant[c];
    tree.push_back(root);
    seen[root] = 1;
    for (std::size_t head = 0; head < tree.size(); ++head)
      for (Vertex w : component.neighbors(tree[head]))
        if (!seen[w] && dec.host_to_core[w] < 0) {
          seen[w] = 1;
          tree.push_back(w);
        }
  }
  return dec;
}

KernelParams kernel_params(const KernelDecomposition& dec, int l, long long n) {
  if (l < 3) throw ArgumentError("kernel_params needs l >= 3");
  if (n < 3) throw ArgumentError("kernel_params needs n >= 3");
  KernelParams p;
  p.l = l;
  p.k = 1LL << (l - 2);
  p.u = dec.host.max_degree();
  p.d = diameter(dec.host);
  p.kernel_empty = dec.kernel.graph.order() == 0;
  std::map<std::pair<int, int>, int> memo;
  for (const auto& tree : dec.pendant) {
    int order = static_cast<int>(tree.size());
    if (order == 1) {
      p.t = std::max(p.t, 1);
      continue;
    }
    auto sub = induced_subgraph(dec.host, tree).first;
    int lx = std::max(2, sub.max_degree());
    auto [it, fresh] = memo.try_emplace({order, lx}, 0);
    if (fresh) {
      int log2n = 0;
      for (int m = order; m > 1; m >>= 1) ++log2n;
      it->second = f_bound(order, lx) + log2n + lx + kMedianSlack + 1;
    }
    p.t = std::max(p.t, it->second);
  }
  double log2d = std::log2(std::max(p.d, 1));
  double u = std::max(p.u, 1);
  p.b0 = l * (std::log(u) + std::log(std::log(static_cast<double>(n))) + l) / std::log(static_cast<double>(l)) +
         2 * u + log2d;
  p.b = p.b0 + p.t + u + 2 * log2d;
  return p;
}

KernelNeighborhood neighborhood_Axy(const Multigraph& kernel, Vertex x, Vertex y, long long k) {
  if (x < 0 || y < 0 || x >= kernel.order() || y >= kernel.order()) throw ArgumentError("kernel vertex out of range");
  bool edge = false;
  for (int id : kernel.incident(x))
    if (kernel.other_end(id, x) == y) edge = true;
  if (!edge || x == y) throw ArgumentError("{x, y} is not a kernel edge");
  KernelNeighborhood out;
  std::vector<char> seen(kernel.order(), 0);
  seen[x] = seen[y] = 1;
  out.a = {y};
  out.height = 1;
  std::vector<Vertex> level{y};
  while (static_cast<long long>(out.a.size()) < k) {
    std::vector<Vertex> next;
    for (Vertex u : level)
      for (int id : kernel.incident(u)) {
        Vertex w = kernel.other_end(id, u);
        if (!seen[w]) {
          seen[w] = 1;
          next.push_back(w);
        }
      }
    if (next.empty()) break;
    out.a.insert(out.a.end(), next.begin(), next.end());
    ++out.height;
    level = std::move(next);
  }
  return out;
}

bool sparse_condition(const Multigraph& kernel, int l) {
  const int limit = 6 * l;
  const int depth_cap = 3 * l;
  const std::size_t extra_cap = 4;
  int n = kernel.order();
  std::vector<int> depth(n, -1), parent_edge(n, -1), stamp(n, -1);
  std::vector<char> edge_seen(kernel.size(), 0);
  std::vector<Vertex> touched;
  int mark = 0;
  for (Vertex root = 0; root < n; ++root) {
    for (Vertex v : touched) depth[v] = -1, parent_edge[v] = -1;
    touched.clear();
    std::vector<int> extra, touched_edges;
    std::deque<Vertex> queue{root};
    depth[root] = 0;
    touched.push_back(root);
    while (!queue.empty() && extra.size() < extra_cap) {
      Vertex u = queue.front();
      queue.pop_front();
      for (int id : kernel.incident(u)) {
        if (id == parent_edge[u] || edge_seen[id]) continue;
        edge_seen[id] = 1;
        touched_edges.push_back(id);
        Vertex w = kernel.other_end(id, u);
        if (depth[w] < 0 && depth[u] < depth_cap) {
          depth[w] = depth[u] + 1;
          parent_edge[w] = id;
          touched.push_back(w);
          queue.push_back(w);
        } else if (depth[w] >= 0) {
          extra.push_back(id);
        }
      }
    }
    for (int id : touched_edges) edge_seen[id] = 0;
    // Two extra edges plus their tree paths span one more edge than vertices.
    for (std::size_t i = 0; i < extra.size(); ++i)
      for (std::size_t j = i + 1; j < extra.size(); ++j) {
        ++mark;
        int size = 0;
        for (int id : {extra[i], extra[j]}) {
          const auto& e = kernel.edge(id);
          for (Vertex end : {e.u, e.v})
            for (Vertex v = end;; v = kernel.other_end(parent_edge[v], v)) {
              if (stamp[v] == mark) break;
              stamp[v] = mark;
              ++size;
              if (v == root) break;
            }
        }
        if (size <= limit) return false;
      }
  }
  return true;
}

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  std::uint64_t s = h ^ (x + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2));
  return splitmix64(s);
}

// 1-WL invariant with the two roots individualized.
std::uint64_t rooted_invariant(const ColoredGraph& g, Vertex r1, Vertex r2) {
  int n = g.order();
  std::vector<std::uint64_t> color(n), next(n);
  for (Vertex v = 0; v < n; ++v) color[v] = mix(g.colors(v), v == r1 ? 1 : v == r2 ? 2 : 0);
  std::size_t classes = 0;
  for (int round = 0; round < n; ++round) {
    std::vector<std::uint64_t> nb;
    for (Vertex v = 0; v < n; ++v) {
      nb.clear();
      for (Vertex w : g.neighbors(v)) nb.push_back(color[w]);
      std::sort(nb.begin(), nb.end());
      std::uint64_t h = color[v];
      for (auto c : nb) h = mix(h, c);
      next[v] = h;
    }
    color.swap(next);
    auto sorted = color;
    std::sort(sorted.begin(), sorted.end());
    std::size_t now = std::unique(sorted.begin(), sorted.end()) - sorted.begin();
    if (now == classes) break;
    classes = now;
  }
  std::sort(color.begin(), color.end());
  std::uint64_t h = mix(n, g.size());
  for (auto c : color) h = mix(h, c);
  return h;
}

}  // namespace

std::optional<KabViolation> kab_violation(const KernelDecomposition& dec, int l) {
  if (l < 2) throw ArgumentError("kab_condition needs l >= 2");
  const Multigraph& k = dec.kernel.graph;
  long long need = 1LL << (l - 2);
  struct Gadget {
    std::vector<Vertex> a;  // sorted kernel vertices
    ColoredGraph g;
    Vertex r1, r2;
    Vertex x, y;
  };
  std::vector<Gadget> gadgets;
  std::map<std::uint64_t, std::vector<int>> buckets;
  std::vector<char> in_s(k.order(), 0), in_h(dec.host.order(), 0);
  for (Vertex x = 0; x < k.order(); ++x) {
    std::vector<Vertex> ys;
    for (int id : k.incident(x)) {
      Vertex y = k.other_end(id, x);
      if (y != x) ys.push_back(y);
    }
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    for (Vertex y : ys) {
      auto nb = neighborhood_Axy(k, x, y, need);
      if (static_cast<long long>(nb.a.size()) + 1 < need) continue;
      std::vector<Vertex> s = nb.a;
      s.push_back(x);
      for (Vertex v : s) in_s[v] = 1;
      std::vector<Vertex> hosts;
      auto take = [&](Vertex h) {
        if (!in_h[h]) {
          in_h[h] = 1;
          hosts.push_back(h);
        }
      };
      for (Vertex v : s)
        for (int id : k.incident(v)) {
          const auto& e = k.edge(id);
          if (!in_s[e.u] || !in_s[e.v]) continue;
          for (Vertex c : e.path)
            for (Vertex h : dec.pendant[c]) take(h);
        }
      for (Vertex v : s) in_s[v] = 0;
      for (Vertex h : hosts) in_h[h] = 0;
      std::sort(hosts.begin(), hosts.end());
      auto [sub, map] = induced_subgraph(dec.host, hosts);
      Vertex r1 = map[dec.core_to_host[dec.kernel.core_vertex[x]]];
      Vertex r2 = map[dec.core_to_host[dec.kernel.core_vertex[y]]];
      std::sort(nb.a.begin(), nb.a.end());
      buckets[rooted_invariant(sub, r1, r2)].push_back(static_cast<int>(gadgets.size()));
      gadgets.push_back({std::move(nb.a), std::move(sub), r1, r2, x, y});
    }
  }
  for (auto& [hash, ids] : buckets)
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        const Gadget& p = gadgets[ids[i]];
        const Gadget& q = gadgets[ids[j]];
        std::vector<Vertex> common;
        std::set_intersection(p.a.begin(), p.a.end(), q.a.begin(), q.a.end(), std::back_inserter(common));
        if (!common.empty()) continue;
        if (rooted_graph_isomorphic(p.g, {p.r1, p.r2}, q.g, {q.r1, q.r2}))
          return KabViolation{{p.x, p.y}, {q.x, q.y}, p.g, q.g, {p.r1, p.r2}, {q.r1, q.r2}};
      }
  return std::nullopt;
}

bool kab_condition(const KernelDecomposition& dec, int l) { return !kab_violation(dec, l); }

std::optional<Vertex> leaf_star_witness(const KernelDecomposition& dec, int threshold) {
  std::vector<Vertex> hosts = dec.core_to_host;
  std::sort(hosts.begin(), hosts.end());
  for (Vertex x : hosts) {
    int leaves = 0;
    for (Vertex w : dec.host.neighbors(x)) leaves += dec.host.degree(w) == 1;
    if (leaves >= threshold) return x;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Trees

namespace {

std::vector<char> leaf_neighbor(const ColoredGraph& t) {
  std::vector<char> out(t.order(), 0);
  for (Vertex v = 0; v < t.order(); ++v)
    for (Vertex w : t.neighbors(v))
      if (t.degree(w) == 1) out[v] = 1;
  return out;
}

char bit(const std::vector<char>& leafy, Vertex v) { return leafy[v] ? '0' : '1'; }

// Rooted at 0: parent, BFS order, down heights and the height through the parent edge.
struct Directions {
  std::vector<Vertex> parent, order;
  std::vector<int> down, up;

  explicit Directions(const ColoredGraph& t) : parent(t.order(), -1), down(t.order(), 0), up(t.order(), 0) {
    int n = t.order();
    if (n == 0) return;
    order.push_back(0);
    parent[0] = 0;
    for (std::size_t head = 0; head < order.size(); ++head)
      for (Vertex w : t.neighbors(order[head]))
        if (parent[w] < 0) {
          parent[w] = order[head];
          order.push_back(w);
        }
    parent[0] = -1;
    for (auto it = order.rbegin(); it != order.rend(); ++it)
      if (parent[*it] >= 0) down[parent[*it]] = std::max(down[parent[*it]], down[*it] + 1);
    for (Vertex v : order) {
      int best1 = parent[v] >= 0 ? up[v] : 0, best2 = 0;
      Vertex arg1 = -1;
      for (Vertex c : t.neighbors(v)) {
        if (c == parent[v]) continue;
        int h = down[c] + 1;
        if (h > best1) {
          best2 = best1;
          best1 = h;
          arg1 = c;
        } else if (h > best2) {
          best2 = h;
        }
      }
      for (Vertex c : t.neighbors(v))
        if (c != parent[v]) up[c] = 1 + (c == arg1 ? best2 : best1);
    }
  }

  /// Longest path from v whose first step goes to neighbor u.
  int toward(Vertex v, Vertex u) const { return u == parent[v] ? up[v] : down[u] + 1; }
};

std::vector<Vertex> tree_path(const ColoredGraph& t, Vertex v, Vertex w) {
  std::vector<Vertex> parent(t.order(), -1), queue{v};
  parent[v] = v;
  for (std::size_t head = 0; head < queue.size() && parent[w] < 0; ++head)
    for (Vertex x : t.neighbors(queue[head]))
      if (parent[x] < 0) {
        parent[x] = queue[head];
        queue.push_back(x);
      }
  if (parent[w] < 0) return {};
  std::vector<Vertex> path{w};
  while (path.back() != v) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

bool share_at_most_one(std::vector<Vertex> a, std::vector<Vertex> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<Vertex> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  return common.size() <= 1;
}

}  // namespace

std::string check(const ColoredGraph& tree, Vertex v, Vertex w, int r) {
  if (!tree.valid(v) || !tree.valid(w)) throw ArgumentError("check vertex out of range");
  auto path = tree_path(tree, v, w);
  if (static_cast<int>(path.size()) != r + 1) throw ArgumentError("dist(v, w) differs from r");
  auto leafy = leaf_neighbor(tree);
  std::string out;
  for (Vertex x : path) out += bit(leafy, x);
  return out;
}

CheckBook checkbook(const ColoredGraph& tree, Vertex v, int r) {
  if (!tree.valid(v) || r < 0) throw ArgumentError("checkbook arguments out of range");
  auto leafy = leaf_neighbor(tree);
  CheckBook book{v, r, {}};
  struct Frame {
    Vertex at, from;
    std::string bits;
  };
  std::vector<Frame> stack{{v, -1, std::string(1, bit(leafy, v))}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (static_cast<int>(f.bits.size()) == r + 1) {
      book.checks.insert(f.bits);
      continue;
    }
    for (Vertex w : tree.neighbors(f.at))
      if (w != f.from) stack.push_back({w, f.at, f.bits + bit(leafy, w)});
  }
  return book;
}

CheckCollisionReport checkbook_distinct_property(const ColoredGraph& tree, int r0, long long budget,
                                                 std::mt19937_64& rng) {
  CheckCollisionReport report;
  if (!is_tree(tree)) throw ArgumentError("checkbook_distinct_property needs a tree");
  int n = tree.order();
  auto leafy = leaf_neighbor(tree);
  Directions dir(tree);

  // Exhaustive pass while the path count stays within the budget.
  std::vector<std::pair<Vertex, Vertex>> paths;
  std::vector<std::string> bits;
  long long explored = 0;
  bool within = true;
  for (Vertex v = 0; v < n && within; ++v) {
    struct Frame {
      Vertex at, from;
      std::string bits;
    };
    std::vector<Frame> stack{{v, -1, std::string(1, bit(leafy, v))}};
    while (!stack.empty() && within) {
      Frame f = std::move(stack.back());
      stack.pop_back();
      if (++explored > 20 * budget) within = false;
      int len = static_cast<int>(f.bits.size()) - 1;
      if (len == r0) {
        paths.emplace_back(v, f.at);
        bits.push_back(std::move(f.bits));
        if (static_cast<long long>(paths.size()) > budget) within = false;
        continue;
      }
      for (Vertex w : tree.neighbors(f.at))
        if (w != f.from && dir.toward(f.at, w) >= r0 - len) stack.push_back({w, f.at, f.bits + bit(leafy, w)});
    }
  }
  if (within) {
    report.exhaustive = true;
    std::unordered_map<std::string, std::vector<int>> groups;
    for (std::size_t i = 0; i < paths.size(); ++i) groups[bits[i]].push_back(static_cast<int>(i));
    for (auto& [key, ids] : groups)
      for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
          ++report.pairs_examined;
          auto& p = paths[ids[i]];
          auto& q = paths[ids[j]];
          if (share_at_most_one(tree_path(tree, p.first, p.second), tree_path(tree, q.first, q.second)))
            ++report.violations;
        }
    return report;
  }

  // Sampling: a uniform start with enough room, then uniform steps among long enough branches.
  std::vector<Vertex> starts;
  for (Vertex v = 0; v < n; ++v) {
    int best = 0;
    for (Vertex w : tree.neighbors(v)) best = std::max(best, dir.toward(v, w));
    if (best >= r0) starts.push_back(v);
  }
  if (starts.empty()) return report;
  auto sample_path = [&]() {
    std::vector<Vertex> path{starts[std::uniform_int_distribution<std::size_t>(0, starts.size() - 1)(rng)]};
    Vertex from = -1;
    std::vector<Vertex> options;
    for (int step = 0; step < r0; ++step) {
      Vertex at = path.back();
      options.clear();
      for (Vertex w : tree.neighbors(at))
        if (w != from && dir.toward(at, w) >= r0 - step) options.push_back(w);
      from = at;
      path.push_back(options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)]);
    }
    return path;
  };
  for (long long i = 0; i < budget; ++i) {
    auto p = sample_path(), q = sample_path();
    if (!share_at_most_one(p, q)) continue;
    ++report.pairs_examined;
    bool same = true;
    for (int j = 0; j <= r0 && same; ++j) same = bit(leafy, p[j]) == bit(leafy, q[j]);
    if (same) ++report.violations;
  }
  return report;
}

std::vector<Vertex> yuppies(const ColoredGraph& tree, int r) {
  if (!is_tree(tree)) throw ArgumentError("yuppies needs a tree");
  Directions dir(tree);
  std::vector<Vertex> out;
  for (Vertex v = 0; v < tree.order(); ++v) {
    int arms = 0;
    for (Vertex w : tree.neighbors(v)) arms += dir.toward(v, w) >= r;
    if (arms >= 2) out.push_back(v);
  }
  if (!out.empty() && !is_connected(induced_subgraph(tree, out).first))
    throw std::logic_error("yuppies do not span a subtree");
  return out;
}

PendantProfile pendant_profile(const ColoredGraph& tree) {
  PendantProfile profile;
  for (Vertex v = 0; v < tree.order(); ++v) {
    int leaves = 0;
    for (Vertex w : tree.neighbors(v)) leaves += tree.degree(w) == 1;
    ++profile[{leaves, tree.degree(v) - leaves}];
  }
  return profile;
}

NeighborhoodStats nbhd_stats(const ColoredGraph& tree, int r0, double heavy_degree) {
  NeighborhoodStats stats;
  int n = tree.order();
  std::vector<int> dist(n, -1);
  std::vector<long long> heavy(n, 0);
  std::vector<Vertex> queue;
  auto ball = [&](Vertex src, auto&& visit) {
    queue.assign(1, src);
    dist[src] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Vertex u = queue[head];
      visit(u);
      if (dist[u] == r0) continue;
      for (Vertex w : tree.neighbors(u))
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
    }
    for (Vertex u : queue) dist[u] = -1;
    return static_cast<long long>(queue.size());
  };
  for (Vertex v = 0; v < n; ++v) stats.max_ball = std::max(stats.max_ball, ball(v, [](Vertex) {}));
  for (Vertex h = 0; h < n; ++h)
    if (tree.degree(h) > heavy_degree) ball(h, [&](Vertex u) { ++heavy[u]; });
  for (long long c : heavy) stats.max_heavy = std::max(stats.max_heavy, c);
  return stats;
}

const char* to_string(Bullet b) {
  switch (b) {
    case Bullet::Checked: return "checked";
    case Bullet::Vacuous: return "vacuously true";
    case Bullet::Failed: return "failed";
  }
  return "?";
}

bool TypicalityReport::typical() const {
  return applicable && std::none_of(std::begin(bullets), std::end(bullets), [](Bullet b) { return b == Bullet::Failed; });
}

TypicalityReport typicality(const ColoredGraph& tree, long long check_budget, std::mt19937_64& rng) {
  TypicalityReport rep;
  int n = tree.order();
  if (n < 16) return rep;
  if (!is_tree(tree)) throw ArgumentError("typicality needs a tree");
  rep.applicable = true;
  double ln = std::log(static_cast<double>(n)), lnln = std::log(ln);
  rep.r0 = static_cast<int>(std::ceil(7 * ln));

  rep.checks = checkbook_distinct_property(tree, rep.r0, check_budget, rng);
  rep.bullets[0] = rep.checks.violations == 0 ? Bullet::Checked : Bullet::Failed;

  rep.max_degree = tree.max_degree();
  rep.degree_low = ln / (2 * lnln);
  rep.degree_high = 2 * ln / lnln;
  rep.bullets[1] = rep.max_degree >= rep.degree_low && rep.max_degree <= rep.degree_high ? Bullet::Checked : Bullet::Failed;

  rep.ball_bound = 1e8 * std::pow(ln, 4);
  double heavy_degree = std::pow(lnln, 5);
  rep.heavy_bound = ln / (lnln * lnln);
  if (rep.ball_bound >= n) {
    rep.bullets[2] = Bullet::Vacuous;
    // Only the heavy vertices need balls.
    std::vector<long long> heavy(n, 0);
    std::vector<int> dist(n, -1);
    for (Vertex h = 0; h < n; ++h) {
      if (tree.degree(h) <= heavy_degree) continue;
      std::vector<Vertex> queue{h};
      dist[h] = 0;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex u = queue[head];
        ++heavy[u];
        if (dist[u] == rep.r0) continue;
        for (Vertex w : tree.neighbors(u))
          if (dist[w] < 0) {
            dist[w] = dist[u] + 1;
            queue.push_back(w);
          }
      }
      for (Vertex u : queue) dist[u] = -1;
    }
    rep.max_heavy = heavy.empty() ? 0 : *std::max_element(heavy.begin(), heavy.end());
  } else {
    auto stats = nbhd_stats(tree, rep.r0, heavy_degree);
    rep.max_ball = stats.max_ball;
    rep.max_heavy = stats.max_heavy;
    rep.bullets[2] = rep.max_ball <= rep.ball_bound ? Bullet::Checked : Bullet::Failed;
  }
  rep.bullets[3] = rep.max_heavy <= rep.heavy_bound ? Bullet::Checked : Bullet::Failed;
  return rep;
}

// ---------------------------------------------------------------------------
// Forest statistics

double isolated_formula(int k, int l) {
  if (l < 0 || l > k - 1) return 0;
  double binom = std::exp(std::lgamma(k) - std::lgamma(l + 1) - std::lgamma(k - l));
  return binom * std::exp(-l) * std::pow(1 - std::exp(-1.0), k - l - 1);
}

double pendant_formula(int l, int m) {
  if (l < 0 || m < 1) return 0;
  return std::exp(-l - 1 - std::lgamma(l + 1)) * std::pow(1 - std::exp(-1.0), m - 1) / std::exp(std::lgamma(m));
}

namespace {

Estimate tail_estimate(double formula, long long hits, long long samples) {
  Estimate e;
  e.formula = formula;
  e.samples = samples;
  e.empirical = samples ? static_cast<double>(hits) / samples : 0;
  double p = std::max(formula, 1.0 / std::max<long long>(samples, 1));
  e.stderr_ = std::sqrt(p * (1 - std::min(p, 1.0)) / std::max<long long>(samples, 1));
  e.pass = e.empirical <= formula + 4 * e.stderr_;
  return e;
}

}  // namespace

ForestStatsAccumulator::ForestStatsAccumulator(int n, int k, int s, int ell)
    : n_(n), k_(k), s_(s), ell_(ell), isolated_(k > 0 ? k : 0, 0) {
  if (k < 1 || ell < 0 || ell > k || s < 1) throw ArgumentError("forest_stats parameters out of range");
  threshold_ = k * (1 + 1 / std::log(static_cast<double>(n))) + 2 * std::pow(std::log(static_cast<double>(n)), 2);
}

void ForestStatsAccumulator::add(const ColoredGraph& f) {
  if (f.order() != n_) throw ArgumentError("forest order differs from n");
  auto comps = connected_components(f);
  std::size_t largest = 0;
  for (auto& c : comps.members) largest = std::max(largest, c.size());
  mass_ += static_cast<double>(n_ - static_cast<long long>(largest));
  int iso = 0;
  long long degrees = 0;
  bool all_high = true;
  for (Vertex r = 0; r < k_; ++r) {
    iso += f.degree(r) == 0;
    degrees += f.degree(r);
    if (r < ell_ && f.degree(r) < s_) all_high = false;
  }
  if (iso < k_) ++isolated_[iso];
  tail_ += degrees > threshold_;
  joint_ += all_high;
  ++samples_;
}

ForestStats ForestStatsAccumulator::result() const {
  ForestStats st;
  st.n = n_;
  st.k = k_;
  st.non_largest_mass = samples_ ? mass_ / static_cast<double>(samples_) : 0;
  for (int l = 0; l < k_; ++l) {
    Estimate e;
    e.formula = isolated_formula(k_, l);
    e.samples = samples_;
    e.empirical = samples_ ? static_cast<double>(isolated_[l]) / static_cast<double>(samples_) : 0;
    e.stderr_ = std::sqrt(e.formula * (1 - e.formula) / static_cast<double>(std::max<long long>(samples_, 1)));
    e.pass = std::abs(e.empirical - e.formula) <= std::max(0.1 * e.formula, 4 * e.stderr_);
    st.isolated.push_back(e);
  }
  st.root_degree_tail = tail_estimate(0.0, tail_, samples_);
  st.joint_degree_tail = tail_estimate(std::pow(2.0 / std::exp(std::lgamma(s_)), ell_), joint_, samples_);
  return st;
}

ForestStats forest_stats(const std::vector<ColoredGraph>& forests, int n, int k, int s, int ell) {
  ForestStatsAccumulator acc(n, k, s, ell);
  for (const auto& f : forests) acc.add(f);
  return acc.result();
}

}  // namespace efd
