#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "efd/graph.hpp"

namespace efd {

// ---- Samplers ----

/// Prüfer sequence of a labeled tree on n >= 2 vertices (length n - 2, entries in [0, n)).
std::vector<Vertex> prufer_encode(const ColoredGraph& tree);
ColoredGraph prufer_decode(std::span<const Vertex> seq, int n);

/// Uniform labeled tree on n vertices.
ColoredGraph sample_tree(int n, std::mt19937_64& rng);
ColoredGraph sample_tree(int n, std::uint64_t seed);

/// G(n, p) with independent edges.
ColoredGraph sample_gnp(int n, double p, std::mt19937_64& rng);
ColoredGraph sample_gnp(int n, double p, std::uint64_t seed);

/// Uniform forest on [0, n) made of k trees rooted at 0, ..., k-1.
ColoredGraph sample_forest(int n, int k, std::mt19937_64& rng);
ColoredGraph sample_forest(int n, int k, std::uint64_t seed);

// ---- Giant component pipeline ----

/// Largest component, ties broken by the smallest vertex. `original` receives the old ids.
ColoredGraph giant_component(const ColoredGraph& g, std::vector<Vertex>* original = nullptr);

/// The positive root of 1 - x = exp(-c x), or 0 when c <= 1.
double giant_fraction_limit(double c);

/// Iterated removal of vertices of degree <= 1. `original` receives the old ids.
ColoredGraph two_core(const ColoredGraph& g, std::vector<Vertex>* original = nullptr);

struct Kernel {
  /// Edge payload paths are in core vertex ids.
  Multigraph graph;
  /// Core vertex for each kernel vertex.
  std::vector<Vertex> core_vertex;
};

/// Serial reduction of a graph with minimum degree >= 2. A bare cycle becomes one
/// vertex with a loop.
Kernel kernelize(const ColoredGraph& core);

struct KernelDecomposition {
  ColoredGraph host;
  ColoredGraph core;
  /// Host vertex for each core vertex.
  std::vector<Vertex> core_to_host;
  /// Core vertex for each host vertex, -1 outside the core.
  std::vector<Vertex> host_to_core;
  Kernel kernel;
  /// Host vertices of the pendant tree T_x for each core vertex x, root first.
  std::vector<std::vector<Vertex>> pendant;
};

/// Core, kernel and pendant trees of a connected graph.
KernelDecomposition decompose(const ColoredGraph& component);

struct KernelParams {
  int u = 0;   ///< maximum degree of the host
  int d = 0;   ///< diameter of the host
  int t = 0;   ///< upper bound on the depth of the pendant trees
  int l = 0;
  long long k = 0;  ///< 2^(l-2)
  double b0 = 0;
  double b = 0;
  bool kernel_empty = false;
};

/// Move budgets b0 = l(ln u + ln ln n + l)/ln l + 2u + log2 d and b = b0 + t + u + 2 log2 d.
KernelParams kernel_params(const KernelDecomposition& dec, int l, long long n);

struct KernelNeighborhood {
  std::vector<Vertex> a;  ///< A_{x,y}, kernel vertices
  int height = 0;         ///< BFS levels added
};

/// BFS in K - x from y, adding whole levels until the process dies or reaches k vertices.
KernelNeighborhood neighborhood_Axy(const Multigraph& kernel, Vertex x, Vertex y, long long k);

/// No connected set of s <= 6l kernel vertices spans more than s edges. Searches for two
/// independent cycles through a common BFS root; every reported violation is genuine.
bool sparse_condition(const Multigraph& kernel, int l);

/// No two oriented kernel edges (x,x'), (y,y') with v(K_{x,x'}) >= 2^(l-2), disjoint
/// A-sets and isomorphic rooted host subgraphs.
bool kab_condition(const KernelDecomposition& dec, int l);

struct KabViolation {
  std::pair<Vertex, Vertex> first, second;  ///< oriented kernel edges (x, x'), (y, y')
  ColoredGraph first_gadget, second_gadget;  ///< G_{x,x'} and G_{y,y'}
  std::pair<Vertex, Vertex> first_roots, second_roots;
};

/// The first violating quadruple found by kab_condition, if any.
std::optional<KabViolation> kab_violation(const KernelDecomposition& dec, int l);

/// Core vertex (host id) adjacent to at least `threshold` leaves of the host, smallest first.
std::optional<Vertex> leaf_star_witness(const KernelDecomposition& dec, int threshold);

// ---- Trees ----

/// Check of the path v..w of length r: bit i is '0' iff the i-th path vertex has a leaf neighbor.
std::string check(const ColoredGraph& tree, Vertex v, Vertex w, int r);

struct CheckBook {
  Vertex center = 0;
  int radius = 0;
  std::set<std::string> checks;
};

CheckBook checkbook(const ColoredGraph& tree, Vertex v, int r);

struct CheckCollisionReport {
  long long violations = 0;
  long long pairs_examined = 0;
  bool exhaustive = false;
};

/// Counts pairs of length-r0 paths sharing at most one vertex with equal checks.
/// Exhaustive when the number of directed paths is at most `budget`, else `budget`
/// sampled pairs.
CheckCollisionReport checkbook_distinct_property(const ColoredGraph& tree, int r0, long long budget,
                                                 std::mt19937_64& rng);

/// Vertices with two length-r paths meeting only at the vertex.
std::vector<Vertex> yuppies(const ColoredGraph& tree, int r);

/// X_{l,m}: vertices with l leaf neighbors and m non-leaf neighbors.
using PendantProfile = std::map<std::pair<int, int>, long long>;
PendantProfile pendant_profile(const ColoredGraph& tree);

struct NeighborhoodStats {
  long long max_ball = 0;      ///< max |N_{<=r0}(v)|
  long long max_heavy = 0;     ///< max number of vertices of degree > threshold within r0
};

/// Exact maxima over all vertices; heavy means degree > heavy_degree.
NeighborhoodStats nbhd_stats(const ColoredGraph& tree, int r0, double heavy_degree);

enum class Bullet : std::uint8_t { Checked, Vacuous, Failed };
const char* to_string(Bullet b);

struct TypicalityReport {
  bool applicable = false;
  int r0 = 0;
  CheckCollisionReport checks;
  int max_degree = 0;
  double degree_low = 0, degree_high = 0;
  long long max_ball = -1;  ///< -1 when the bound is vacuous and was not computed
  double ball_bound = 0;
  long long max_heavy = 0;
  double heavy_bound = 0;
  Bullet bullets[4] = {Bullet::Failed, Bullet::Failed, Bullet::Failed, Bullet::Failed};
  bool typical() const;
};

/// The four typicality bullets with r0 = ceil(7 ln n). Not applicable below 16 vertices.
TypicalityReport typicality(const ColoredGraph& tree, long long check_budget, std::mt19937_64& rng);

// ---- Forest statistics ----

struct Estimate {
  double formula = 0;
  double empirical = 0;
  long long samples = 0;
  double stderr_ = 0;
  bool pass = false;
};

struct ForestStats {
  int n = 0, k = 0;
  double non_largest_mass = 0;        ///< mean order outside the largest tree
  std::vector<Estimate> isolated;     ///< per l = 0..k-1
  Estimate root_degree_tail;          ///< P(sum of root degrees > k(1+1/ln n) + 2 ln^2 n)
  Estimate joint_degree_tail;         ///< P(roots 0..ell-1 all have degree >= s) vs (2/(s-1)!)^ell
};

/// Streaming version of forest_stats for sample counts that do not fit in memory.
class ForestStatsAccumulator {
 public:
  ForestStatsAccumulator(int n, int k, int s = 4, int ell = 1);
  void add(const ColoredGraph& forest);
  ForestStats result() const;

 private:
  int n_, k_, s_, ell_;
  double threshold_ = 0;
  std::vector<long long> isolated_;
  long long tail_ = 0, joint_ = 0, samples_ = 0;
  double mass_ = 0;
};

/// Isolated counts pass within max(10% relative, 4 sigma); tails pass when at most the bound
/// plus 4 sigma.
ForestStats forest_stats(const std::vector<ColoredGraph>& forests, int n, int k, int s = 4, int ell = 1);

/// binom(k-1, l) e^-l (1 - e^-1)^(k-l-1).
double isolated_formula(int k, int l);
/// e^(-l-1)/l! (1 - e^-1)^(m-1)/(m-1)!.
double pendant_formula(int l, int m);

}  // namespace efd
