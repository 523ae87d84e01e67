#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

namespace efd {

/// Result of one experiment suite. `report` is the full machine-readable record; it embeds
/// the seed, the sample count and the build id for stochastic suites and never holds timings.
struct SuiteReport {
  std::string name;
  bool pass = false;
  std::string summary;
  nlohmann::json report;
};

std::string to_json(const SuiteReport& r);
/// One line per entry of report["rows"], columns from report["columns"]. Empty when absent.
std::string to_csv(const SuiteReport& r);

/// Exact solver against the type oracle on all pairs of non-isomorphic graphs.
SuiteReport oracle_equivalence_suite(int max_order = 5, int max_k = 4);

/// Lower bounds of the extremal tree pairs.
SuiteReport extremal_suite();

struct StrategySuiteConfig {
  std::uint64_t seed = 1;
  int instances = 100;
  int max_distance = 16;
  int max_tree_order = 64;
  int max_pair_order = 40;
  int max_degree = 6;
};

/// Halving, tree versus non-tree, median recursion and zero-alternation certificates
/// against the optimal Duplicator. Passes when every certificate passes.
SuiteReport strategy_suite(const StrategySuiteConfig& cfg);

/// f_bound(n, l) ln l / (l ln n) over a grid; passes when every ratio is in [lo, hi].
SuiteReport fbound_suite(double lo = 0.4, double hi = 1.1);

/// Isolated-root counts of uniform forests F(n, k).
SuiteReport forest_suite(int n, int k, long long samples, std::uint64_t seed);

/// Mean X_{l,m} / n over sampled trees for (l, m) in {(0,1), (1,1), (0,2)}.
SuiteReport pendant_suite(int n, int trees, std::uint64_t seed, double rel_tol = 0.05);

/// The four typicality bullets on sampled trees.
SuiteReport typicality_suite(int n, int trees, long long check_budget, std::uint64_t seed, int required);

/// Maximum degree inside [ln n / (2 ln ln n), 2 ln n / ln ln n].
SuiteReport degree_band_suite(int n, int trees, std::uint64_t seed, int required);

struct GiantSuiteConfig {
  int n = 100000;
  double c = 2.0;
  int samples = 20;
  int l = 0;  ///< 0 means ceil(2 ln ln n)
  std::uint64_t seed = 1;
  int required = 19;
  double length_constant = 30;
  /// Kernel parameters need the exact diameter; skipped above this giant order.
  int params_order_cap = 20000;
};

/// Core, kernel and structural predicates of giant components of G(n, c/n).
SuiteReport giant_suite(const GiantSuiteConfig& cfg);

/// Leaf-star witness on sampled giants: adding one leaf at the witness must survive
/// `cap` pinned rounds.
SuiteReport witness_suite(int n, double c, int samples, std::uint64_t seed, int required, int cap = 3);

}  // namespace efd
