#include "efd/graph.hpp"

#include <algorithm>

namespace efd {

int Palette::intern(const std::string& name) {
  if (auto it = ids_.find(name); it != ids_.end()) return it->second;
  if (size() >= kMaxColors) throw CapError("palette exceeds 64 colors");
  ids_.emplace(name, size());
  names_.push_back(name);
  return size() - 1;
}

std::optional<int> Palette::find(const std::string& name) const {
  if (auto it = ids_.find(name); it != ids_.end()) return it->second;
  return std::nullopt;
}

ColoredGraph ColoredGraph::from_edges(int n, std::span<const std::pair<Vertex, Vertex>> edges) {
  ColoredGraph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

bool ColoredGraph::try_add_edge(Vertex u, Vertex v) {
  check(u);
  check(v);
  if (u == v) return false;
  auto& nu = adj_[u];
  auto it = std::lower_bound(nu.begin(), nu.end(), v);
  if (it != nu.end() && *it == v) return false;
  nu.insert(it, v);
  auto& nv = adj_[v];
  nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
  ++edge_count_;
  return true;
}

void ColoredGraph::add_edge(Vertex u, Vertex v) {
  if (u == v) throw ArgumentError("self-loop at vertex " + std::to_string(u));
  if (!try_add_edge(u, v))
    throw ArgumentError("repeated edge " + std::to_string(u) + "-" + std::to_string(v));
}

void ColoredGraph::remove_edge(Vertex u, Vertex v) {
  auto erase = [](std::vector<Vertex>& list, Vertex x) {
    auto it = std::lower_bound(list.begin(), list.end(), x);
    if (it == list.end() || *it != x) return false;
    list.erase(it);
    return true;
  };
  if (!erase(adj_[check(u)], check(v))) throw ArgumentError("no such edge");
  erase(adj_[v], u);
  --edge_count_;
}

Vertex ColoredGraph::add_vertex(ColorSet colors) {
  adj_.emplace_back();
  colors_.push_back(colors);
  return order() - 1;
}

bool ColoredGraph::adjacent(Vertex u, Vertex v) const {
  const auto& nu = adj_[check(u)];
  return std::binary_search(nu.begin(), nu.end(), check(v));
}

int ColoredGraph::max_degree() const {
  int best = 0;
  for (const auto& list : adj_) best = std::max(best, static_cast<int>(list.size()));
  return best;
}

void ColoredGraph::add_color(Vertex v, int color) {
  if (color < 0 || color >= kMaxColors) throw ArgumentError("color index out of range");
  colors_[check(v)] |= ColorSet{1} << color;
}

bool ColoredGraph::colored() const {
  return std::any_of(colors_.begin(), colors_.end(), [](ColorSet c) { return c != 0; });
}

std::vector<std::pair<Vertex, Vertex>> ColoredGraph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < order(); ++u)
    for (Vertex v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

std::pair<ColoredGraph, std::vector<Vertex>> induced_subgraph(const ColoredGraph& g,
                                                              std::span<const Vertex> keep) {
  std::vector<Vertex> map(g.order(), -1);
  ColoredGraph h(static_cast<int>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (map[keep[i]] != -1) throw ArgumentError("duplicate vertex in induced subgraph");
    map[keep[i]] = static_cast<Vertex>(i);
    h.set_colors(static_cast<Vertex>(i), g.colors(keep[i]));
  }
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (Vertex w : g.neighbors(keep[i]))
      if (map[w] > static_cast<Vertex>(i)) h.add_edge(static_cast<Vertex>(i), map[w]);
  for (Vertex p : g.pins())
    if (map[p] >= 0) h.add_pin(map[p]);
  return {std::move(h), std::move(map)};
}

ColoredGraph disjoint_union(const ColoredGraph& a, const ColoredGraph& b) {
  ColoredGraph g(a.order() + b.order());
  for (Vertex v = 0; v < a.order(); ++v) g.set_colors(v, a.colors(v));
  for (Vertex v = 0; v < b.order(); ++v) g.set_colors(a.order() + v, b.colors(v));
  for (auto [u, v] : a.edges()) g.add_edge(u, v);
  for (auto [u, v] : b.edges()) g.add_edge(a.order() + u, a.order() + v);
  return g;
}

ColoredGraph path_graph(int n) {
  ColoredGraph g(n);
  for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

ColoredGraph cycle_graph(int n) {
  if (n < 3) throw ArgumentError("cycle needs at least 3 vertices");
  ColoredGraph g = path_graph(n);
  g.add_edge(n - 1, 0);
  return g;
}

ColoredGraph star_graph(int leaves) {
  ColoredGraph g(leaves + 1);
  for (Vertex v = 1; v <= leaves; ++v) g.add_edge(0, v);
  return g;
}

ColoredGraph complete_graph(int n) {
  ColoredGraph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

ColoredGraph empty_graph(int n) { return ColoredGraph(n); }

int Multigraph::add_edge(Vertex u, Vertex v, std::vector<Vertex> path) {
  if (u < 0 || v < 0 || u >= order() || v >= order()) throw ArgumentError("multigraph vertex out of range");
  int id = static_cast<int>(edges_.size());
  edges_.push_back(MultiEdge{u, v, std::move(path)});
  incident_[u].push_back(id);
  if (u != v) incident_[v].push_back(id);
  return id;
}

int Multigraph::degree(Vertex v) const {
  int d = 0;
  for (int id : incident_.at(v)) d += edges_[id].u == edges_[id].v ? 2 : 1;
  return d;
}

int Multigraph::min_degree() const {
  int best = 0;
  for (Vertex v = 0; v < order(); ++v) best = v == 0 ? degree(v) : std::min(best, degree(v));
  return best;
}

Vertex Multigraph::other_end(int edge_id, Vertex v) const {
  const auto& e = edges_.at(edge_id);
  return e.u == v ? e.v : e.u;
}

}  // namespace efd
