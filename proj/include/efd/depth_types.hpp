#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "efd/graph.hpp"

namespace efd {

/// Back-and-forth type refinement over one shared class interner, so class ids are
/// comparable across every graph registered with the same oracle.
///
/// class_0(t)     = atomic type of t (colors, equalities, adjacencies)
/// class_{j+1}(t) = (class_j(t), set of class_j(t v) over all vertices v)
class TypeOracle {
 public:
  int add_graph(const ColoredGraph& g);
  int tuple_class(int graph, const std::vector<Vertex>& tuple, int depth);
  int sentence_code(int graph, int depth) { return tuple_class(graph, {}, depth); }
  int order(int graph) const { return graphs_.at(graph).order(); }

 private:
  int atomic(int graph, const std::vector<Vertex>& tuple);
  int intern(std::vector<std::int64_t> key);

  std::vector<ColoredGraph> graphs_;
  std::map<std::vector<std::int64_t>, int> interner_;
  std::map<std::tuple<int, int, std::vector<Vertex>>, int> memo_;
};

struct DepthTypes {
  int sentence_code = 0;
  /// Class of every vertex tuple of the requested arity.
  std::map<std::vector<Vertex>, int> classes;
};

DepthTypes depth_types(TypeOracle& oracle, int graph, int k, int arity);

/// Least k <= cap at which the pinned tuples get different classes, or -1.
int oracle_distinguishing_depth(const ColoredGraph& left, const ColoredGraph& right,
                                const std::vector<std::pair<Vertex, Vertex>>& pins, int cap);

}  // namespace efd
