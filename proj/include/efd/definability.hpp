#pragma once

#include <optional>

#include "efd/graph.hpp"

namespace efd {

struct DefinabilityReport {
  /// Max over tree adversaries of D(T, T'); an adversary beating the depth cap counts cap + 1.
  int lower_bound = 0;
  int adversaries = 0;
  bool capped = false;
  std::optional<ColoredGraph> witness;
  /// floor(log2 n) + 3, the bound against any non-tree adversary.
  int nontree_ceiling = 0;
};

inline constexpr int kDefinabilitySizeCap = 10;

/// Lower bound on D(T) from all non-isomorphic trees with at most size_cap vertices.
DefinabilityReport tree_definability(const ColoredGraph& tree, int size_cap, int depth_cap);

}  // namespace efd
