#pragma once

#include <optional>
#include <string>

#include "efd/graph.hpp"

namespace efd {

enum class ExtremalFamily { MaxDeg, PowerLaw };

struct ExtremalPair {
  ExtremalFamily family = ExtremalFamily::MaxDeg;
  ColoredGraph left;
  ColoredGraph right;
  int l = 0;
  int level = 0;  ///< i for MaxDeg, t for PowerLaw
  int k = 0;
  int a = 0;
  int b = 0;
  /// Rounds Duplicator is claimed to survive.
  int claimed_lower_bound = 0;
};

/// Constructions refuse to exceed this many vertices per tree.
inline constexpr long long kExtremalOrderCap = 1'000'000;
/// Combined order up to which verify_lower_bound runs the exact solver.
inline constexpr int kVerifyOrderCap = 30;

/// G_i and G_i' with k = floor(l/2) copies per level; roots are dropped.
ExtremalPair lb_pair_maxdeg(int l, int i);
/// (floor(l/2) - 1) * j + l - 2.
int g_bound(int l, int j);
/// T_t and T_t' with a = floor(l/2), b = ceil(l/2).
ExtremalPair lb_pair_powerlaw(int l, int t);

/// Orders (v(G_i), v(G_i')) without building the trees.
std::pair<long long, long long> maxdeg_orders(int l, int i);
/// Largest i with max(v(G_i), v(G_i')) <= n, or -1 when even i = 0 is too large.
int maxdeg_level_for(long long n, int l);

struct LowerBoundReport {
  int claimed = 0;
  int cap = 0;
  bool machine_checked = false;
  /// Exact D(left, right) when Spoiler wins within the cap.
  std::optional<int> exact;
  bool pass = false;
  std::string note;
};

/// Checks that Spoiler cannot win in fewer than the claimed number of rounds.
LowerBoundReport verify_lower_bound(const ExtremalPair& pair, int cap);

std::string lower_bound_json(const ExtremalPair& pair, const LowerBoundReport& report);

}  // namespace efd
