#pragma once

#include <map>
#include <string>
#include <vector>

#include "efd/graph.hpp"

namespace efd {

/// Byte string with the usual lexicographic order.
using CanonicalCode = std::string;

/// AHU code of the colored tree rooted at `root`. Equal codes iff the rooted colored
/// trees are isomorphic. Pins are ignored.
CanonicalCode ahu_code(const ColoredGraph& tree, Vertex root);

/// Colored-tree isomorphism that maps the i-th pin to the i-th pin.
bool tree_isomorphic(const ColoredGraph& t1, const ColoredGraph& t2);

/// Exact isomorphism test respecting colors and pins, for graphs with at most 12 vertices.
bool graph_isomorphic_small(const ColoredGraph& g1, const ColoredGraph& g2);

inline constexpr int kSmallIsoCap = 12;

/// Interns rooted subtree shapes as dense integers. Two subtrees receive the same id
/// iff they are isomorphic as rooted colored trees, provided both were interned here.
class RootedCodeInterner {
 public:
  int intern(ColorSet label, std::vector<int> child_ids);
  int size() const { return static_cast<int>(table_.size()); }

 private:
  std::map<std::pair<ColorSet, std::vector<int>>, int> table_;
};

/// Rooted shape ids for every vertex of the subtree hanging below `root`, where the
/// traversal stays inside `allowed` (nullptr means everything). `label` overrides the
/// vertex colors when non-empty. Entries outside the subtree are -1.
std::vector<int> subtree_codes(const ColoredGraph& g, Vertex root, RootedCodeInterner& interner,
                               const std::vector<char>* allowed = nullptr,
                               const std::vector<ColorSet>* label = nullptr);

/// Stable 1-WL coloring starting from `initial` (vertex colors when empty). Color ids are
/// canonical across graphs refined together via `refine_jointly`.
std::vector<int> wl_refine(const ColoredGraph& g, std::vector<std::uint64_t> initial = {});

/// Joint refinement of two graphs so color ids are comparable. Returns colors for g1 then g2.
std::pair<std::vector<int>, std::vector<int>> refine_jointly(const ColoredGraph& g1,
                                                             std::vector<std::uint64_t> init1,
                                                             const ColoredGraph& g2,
                                                             std::vector<std::uint64_t> init2);

/// All pairwise non-isomorphic free trees on n vertices (n <= 16), built by leaf extension.
std::vector<ColoredGraph> enumerate_trees(int n);

/// All pairwise non-isomorphic graphs on n vertices (n <= 6).
std::vector<ColoredGraph> enumerate_graphs(int n);

/// Canonical code of a free uncolored or colored tree (minimum over its centers).
CanonicalCode free_tree_code(const ColoredGraph& tree);

/// Isomorphism of two graphs with distinguished root tuples (root i maps to root i),
/// by color refinement plus individualization backtracking. Intended for graphs of a
/// few hundred vertices.
bool rooted_graph_isomorphic(const ColoredGraph& g1, const std::vector<Vertex>& roots1,
                             const ColoredGraph& g2, const std::vector<Vertex>& roots2);

}  // namespace efd
