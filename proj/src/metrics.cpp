#include "efd/metrics.hpp"

#include <algorithm>
#include <deque>

namespace efd {

std::vector<int> bfs_distances(const ColoredGraph& g, Vertex source, const std::vector<char>* allowed) {
  if (!g.valid(source)) throw ArgumentError("bfs source out of range");
  std::vector<int> dist(g.order(), kInfinity);
  std::vector<Vertex> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex u = queue[head];
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] != kInfinity || (allowed && !(*allowed)[w])) continue;
      dist[w] = dist[u] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

std::vector<Vertex> shortest_path(const ColoredGraph& g, Vertex a, Vertex b, const std::vector<char>* allowed) {
  // Distances from b let us walk greedily from a, always taking the smallest next index.
  auto dist = bfs_distances(g, b, allowed);
  if (dist[a] == kInfinity) return {};
  std::vector<Vertex> path{a};
  Vertex cur = a;
  while (cur != b) {
    for (Vertex w : g.neighbors(cur))
      if (dist[w] == dist[cur] - 1 && (!allowed || (*allowed)[w] || w == b)) {
        cur = w;
        break;
      }
    path.push_back(cur);
  }
  return path;
}

Components connected_components(const ColoredGraph& g, const std::vector<char>* allowed) {
  Components out;
  out.id.assign(g.order(), -1);
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (out.id[s] != -1 || (allowed && !(*allowed)[s])) continue;
    int c = out.count();
    out.members.emplace_back();
    out.id[s] = c;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      out.members[c].push_back(u);
      for (Vertex w : g.neighbors(u))
        if (out.id[w] == -1 && (!allowed || (*allowed)[w])) {
          out.id[w] = c;
          stack.push_back(w);
        }
    }
    std::sort(out.members[c].begin(), out.members[c].end());
  }
  return out;
}

bool is_connected(const ColoredGraph& g) { return g.order() <= 1 || connected_components(g).count() == 1; }

bool is_forest(const ColoredGraph& g) {
  return g.size() + static_cast<std::size_t>(connected_components(g).count()) ==
         static_cast<std::size_t>(g.order());
}

bool is_tree(const ColoredGraph& g) {
  return g.order() >= 1 && g.size() + 1 == static_cast<std::size_t>(g.order()) && is_connected(g);
}

int eccentricity(const ColoredGraph& g, Vertex v) {
  auto d = bfs_distances(g, v);
  return *std::max_element(d.begin(), d.end());
}

int diameter(const ColoredGraph& g) {
  if (g.order() < 2) return 0;
  if (!is_connected(g)) return kInfinity;
  // Double sweep picks a start near the center, then iFUB bounds the fringe.
  auto far = [&](const std::vector<int>& d) {
    return static_cast<Vertex>(std::max_element(d.begin(), d.end()) - d.begin());
  };
  auto d0 = bfs_distances(g, 0);
  Vertex a = far(d0);
  auto da = bfs_distances(g, a);
  Vertex b = far(da);
  auto db = bfs_distances(g, b);
  int ab = da[b];
  Vertex u = b;
  for (Vertex v = 0; v < g.order(); ++v)
    if (da[v] + db[v] == ab && (db[v] == ab / 2)) {
      u = v;
      break;
    }
  auto du = bfs_distances(g, u);
  int ecc_u = *std::max_element(du.begin(), du.end());
  std::vector<std::vector<Vertex>> levels(ecc_u + 1);
  for (Vertex v = 0; v < g.order(); ++v) levels[du[v]].push_back(v);
  int lb = std::max(ecc_u, ab);
  for (int i = ecc_u; i > 0; --i) {
    if (lb >= 2 * i) break;
    for (Vertex v : levels[i]) lb = std::max(lb, eccentricity(g, v));
    if (lb > 2 * (i - 1)) break;
  }
  return lb;
}

Vertex median(const ColoredGraph& tree) {
  if (!is_tree(tree)) throw StructuralError("median requires a nonempty tree");
  int n = tree.order();
  std::vector<Vertex> order{0}, parent(n, -1);
  parent[0] = 0;
  for (std::size_t head = 0; head < order.size(); ++head)
    for (Vertex w : tree.neighbors(order[head]))
      if (parent[w] == -1) {
        parent[w] = order[head];
        order.push_back(w);
      }
  std::vector<int> size(n, 1), largest(n, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Vertex v = *it;
    largest[v] = std::max(largest[v], n - size[v]);
    if (v != 0) {
      size[parent[v]] += size[v];
      largest[parent[v]] = std::max(largest[parent[v]], size[v]);
    }
  }
  for (Vertex v = 0; v < n; ++v)
    if (2 * largest[v] <= n) return v;
  throw StructuralError("no median found");
}

Vertex median_of_region(const ColoredGraph& g, const std::vector<Vertex>& region) {
  std::vector<Vertex> sorted = region;
  std::sort(sorted.begin(), sorted.end());
  auto [sub, map] = induced_subgraph(g, sorted);
  return sorted[median(sub)];
}

std::vector<Vertex> shortest_cycle_through(const ColoredGraph& g, Vertex v, int max_length) {
  int n = g.order();
  std::vector<int> dist(n, kInfinity), branch(n, -1);
  std::vector<Vertex> parent(n, -1), queue{v};
  dist[v] = 0;
  int best = kInfinity;
  Vertex best_a = -1, best_b = -1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex a = queue[head];
    if (2 * dist[a] + 1 >= best || 2 * dist[a] + 1 > max_length) break;
    for (Vertex b : g.neighbors(a)) {
      if (b == v) continue;
      if (dist[b] == kInfinity) {
        dist[b] = dist[a] + 1;
        parent[b] = a;
        branch[b] = a == v ? b : branch[a];
        queue.push_back(b);
      } else if (a != v && branch[a] != branch[b] && parent[b] != a) {
        int len = dist[a] + dist[b] + 1;
        if (len < best) {
          best = len;
          best_a = a;
          best_b = b;
        }
      }
    }
  }
  if (best == kInfinity || best > max_length) return {};
  std::vector<Vertex> left, right;
  for (Vertex x = best_a; x != v; x = parent[x]) left.push_back(x);
  for (Vertex x = best_b; x != v; x = parent[x]) right.push_back(x);
  std::vector<Vertex> cycle{v};
  cycle.insert(cycle.end(), left.rbegin(), left.rend());
  cycle.insert(cycle.end(), right.begin(), right.end());
  return cycle;
}

std::vector<Vertex> shortest_cycle(const ColoredGraph& g) {
  std::vector<Vertex> best;
  for (Vertex v = 0; v < g.order(); ++v) {
    int limit = best.empty() ? kInfinity : static_cast<int>(best.size()) - 1;
    auto c = shortest_cycle_through(g, v, limit);
    if (!c.empty()) best = std::move(c);
    if (best.size() == 3) break;
  }
  return best;
}

std::vector<char> on_cycle_mask(const ColoredGraph& g) {
  // A vertex is on a cycle iff one of its edges is not a bridge.
  int n = g.order();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<char> mask(n, 0);
  int timer = 0;
  struct Frame {
    Vertex v, parent;
    std::size_t next;
  };
  std::vector<Frame> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (disc[s] != -1) continue;
    disc[s] = low[s] = timer++;
    stack.push_back({s, -1, 0});
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& nb = g.neighbors(f.v);
      if (f.next < nb.size()) {
        Vertex w = nb[f.next++];
        if (w == f.parent) continue;
        if (disc[w] == -1) {
          disc[w] = low[w] = timer++;
          stack.push_back({w, f.v, 0});
        } else {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        Vertex v = f.v, p = f.parent;
        stack.pop_back();
        if (p != -1) {
          low[p] = std::min(low[p], low[v]);
          if (low[v] <= disc[p]) {
            // Edge p-v is not a bridge.
            mask[p] = mask[v] = 1;
          }
        }
      }
    }
  }
  return mask;
}

std::vector<char> core_mask(const ColoredGraph& g) {
  int n = g.order();
  std::vector<int> deg(n);
  std::vector<char> alive(n, 1);
  std::vector<Vertex> queue;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    if (deg[v] <= 1) queue.push_back(v);
  }
  while (!queue.empty()) {
    Vertex v = queue.back();
    queue.pop_back();
    if (!alive[v]) continue;
    alive[v] = 0;
    for (Vertex w : g.neighbors(v))
      if (alive[w] && --deg[w] == 1) queue.push_back(w);
  }
  return alive;
}

}  // namespace efd
