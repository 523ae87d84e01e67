#pragma once

#include <limits>
#include <vector>

#include "efd/graph.hpp"

namespace efd {

inline constexpr int kInfinity = std::numeric_limits<int>::max();

/// Shortest-path distances from `source`; kInfinity marks unreachable vertices.
/// When `allowed` is given, only vertices with allowed[v] != 0 are traversed
/// (the source is always included).
std::vector<int> bfs_distances(const ColoredGraph& g, Vertex source,
                               const std::vector<char>* allowed = nullptr);

/// One shortest path from a to b as a vertex sequence, empty when unreachable.
/// Among shortest paths, the lexicographically smallest by vertex index is returned.
std::vector<Vertex> shortest_path(const ColoredGraph& g, Vertex a, Vertex b,
                                  const std::vector<char>* allowed = nullptr);

struct Components {
  std::vector<int> id;                  // component index per vertex, -1 if excluded
  std::vector<std::vector<Vertex>> members;  // ordered by smallest member
  int count() const { return static_cast<int>(members.size()); }
};

Components connected_components(const ColoredGraph& g, const std::vector<char>* allowed = nullptr);

bool is_connected(const ColoredGraph& g);
bool is_forest(const ColoredGraph& g);
bool is_tree(const ColoredGraph& g);

/// Max finite pairwise distance; kInfinity if disconnected; 0 for graphs with < 2 vertices.
/// Uses iFUB on connected inputs, so large sparse graphs are cheap in practice.
int diameter(const ColoredGraph& g);

int eccentricity(const ColoredGraph& g, Vertex v);

/// A vertex whose removal leaves components of order <= n/2, smallest index on ties.
/// Throws StructuralError on non-trees.
Vertex median(const ColoredGraph& tree);

/// Median of the subtree induced by `region` (which must induce a tree).
Vertex median_of_region(const ColoredGraph& g, const std::vector<Vertex>& region);

/// A shortest cycle as a vertex sequence (c0, c1, ..., c_{g-1}); empty if acyclic.
std::vector<Vertex> shortest_cycle(const ColoredGraph& g);

/// A shortest cycle through v, empty if none. Only cycles of length <= max_length are searched.
std::vector<Vertex> shortest_cycle_through(const ColoredGraph& g, Vertex v,
                                           int max_length = kInfinity);

/// Membership in the 2-core: what survives repeated removal of vertices of degree <= 1.
std::vector<char> core_mask(const ColoredGraph& g);

/// Vertices lying on some cycle, i.e. the 2-core restricted to cycle-carrying blocks.
std::vector<char> on_cycle_mask(const ColoredGraph& g);

}  // namespace efd
