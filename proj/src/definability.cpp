#include "efd/definability.hpp"

#include <bit>

#include "efd/canonical.hpp"
#include "efd/ef_engine.hpp"
#include "efd/metrics.hpp"

namespace efd {

DefinabilityReport tree_definability(const ColoredGraph& tree, int size_cap, int depth_cap) {
  if (!is_tree(tree)) throw StructuralError("tree_definability requires a tree");
  if (size_cap > kDefinabilitySizeCap) throw CapError("adversary enumeration is limited to 10 vertices");
  if (depth_cap < 0) throw ArgumentError("depth cap must be nonnegative");
  DefinabilityReport report;
  report.nontree_ceiling = std::bit_width(static_cast<unsigned>(tree.order())) - 1 + 3;
  auto own = free_tree_code(tree);
  for (int n = 1; n <= size_cap; ++n)
    for (const auto& adversary : enumerate_trees(n)) {
      if (adversary.order() == tree.order() && free_tree_code(adversary) == own) continue;
      ++report.adversaries;
      auto outcome = ef_value(tree, adversary, depth_cap);
      int value = outcome.spoiler_wins ? outcome.k : depth_cap + 1;
      report.capped |= !outcome.spoiler_wins;
      if (value > report.lower_bound || !report.witness) {
        report.lower_bound = std::max(report.lower_bound, value);
        if (value == report.lower_bound) report.witness = adversary;
      }
    }
  return report;
}

}  // namespace efd
