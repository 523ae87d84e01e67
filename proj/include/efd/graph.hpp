#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace efd {

using Vertex = int;

/// Bit i set means the vertex carries palette color i. Palettes hold at most 64 colors.
using ColorSet = std::uint64_t;

inline constexpr int kMaxColors = 64;

struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Interns color names to small integers.
class Palette {
 public:
  int intern(const std::string& name);
  std::optional<int> find(const std::string& name) const;
  const std::string& name(int id) const { return names_.at(id); }
  int size() const { return static_cast<int>(names_.size()); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> ids_;
};

/// Finite simple undirected graph with per-vertex color sets and an ordered pin list.
///
/// Vertices are dense indices 0..n-1. Adjacency lists are kept sorted, which makes
/// serialization and every traversal order deterministic.
class ColoredGraph {
 public:
  ColoredGraph() = default;
  explicit ColoredGraph(int n) : adj_(n), colors_(n, 0) {}

  static ColoredGraph from_edges(int n, std::span<const std::pair<Vertex, Vertex>> edges);

  int order() const { return static_cast<int>(adj_.size()); }
  std::size_t size() const { return edge_count_; }
  bool empty() const { return adj_.empty(); }

  /// Throws ArgumentError on self-loops, repeated edges and out-of-range endpoints.
  void add_edge(Vertex u, Vertex v);
  bool try_add_edge(Vertex u, Vertex v);
  void remove_edge(Vertex u, Vertex v);
  Vertex add_vertex(ColorSet colors = 0);

  bool adjacent(Vertex u, Vertex v) const;
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[check(v)]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[check(v)].size()); }
  int max_degree() const;

  ColorSet colors(Vertex v) const { return colors_[check(v)]; }
  void set_colors(Vertex v, ColorSet c) { colors_[check(v)] = c; }
  void add_color(Vertex v, int color);
  bool has_color(Vertex v, int color) const { return (colors(v) >> color) & 1U; }
  bool colored() const;

  const std::vector<Vertex>& pins() const { return pins_; }
  void add_pin(Vertex v) { pins_.push_back(check(v)); }
  void clear_pins() { pins_.clear(); }

  /// Sorted (u < v) edge list.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  bool valid(Vertex v) const { return v >= 0 && v < order(); }

  friend bool operator==(const ColoredGraph& a, const ColoredGraph& b) {
    return a.adj_ == b.adj_ && a.colors_ == b.colors_ && a.pins_ == b.pins_;
  }

 private:
  Vertex check(Vertex v) const {
    if (!valid(v)) throw ArgumentError("vertex " + std::to_string(v) + " out of range");
    return v;
  }

  std::vector<std::vector<Vertex>> adj_;
  std::vector<ColorSet> colors_;
  std::vector<Vertex> pins_;
  std::size_t edge_count_ = 0;
};

/// Subgraph induced by `keep` (in the given order); returns the graph and old->new map (-1 if dropped).
std::pair<ColoredGraph, std::vector<Vertex>> induced_subgraph(const ColoredGraph& g,
                                                              std::span<const Vertex> keep);

ColoredGraph disjoint_union(const ColoredGraph& a, const ColoredGraph& b);

// Small named graphs used throughout tests and constructions.
ColoredGraph path_graph(int n);
ColoredGraph cycle_graph(int n);
ColoredGraph star_graph(int leaves);  // K_{1,leaves}, center 0
ColoredGraph complete_graph(int n);
ColoredGraph empty_graph(int n);

/// Loops and parallel edges allowed. Each edge remembers the core path it contracts.
struct MultiEdge {
  Vertex u = 0;
  Vertex v = 0;
  /// Vertex sequence in the underlying graph from the vertex behind u to the one behind v
  /// (inclusive). Ids are those of the underlying graph, not of the multigraph.
  std::vector<Vertex> path;
};

class Multigraph {
 public:
  Multigraph() = default;
  explicit Multigraph(int n) : incident_(n) {}

  int order() const { return static_cast<int>(incident_.size()); }
  std::size_t size() const { return edges_.size(); }

  /// Returns the edge id.
  int add_edge(Vertex u, Vertex v, std::vector<Vertex> path = {});
  const MultiEdge& edge(int id) const { return edges_.at(id); }
  const std::vector<MultiEdge>& edges() const { return edges_; }
  const std::vector<int>& incident(Vertex v) const { return incident_.at(v); }

  /// Loops contribute 2.
  int degree(Vertex v) const;
  int min_degree() const;
  Vertex other_end(int edge_id, Vertex v) const;

 private:
  std::vector<MultiEdge> edges_;
  std::vector<std::vector<int>> incident_;
};

}  // namespace efd
