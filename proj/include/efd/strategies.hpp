#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "efd/ef_engine.hpp"
#include "efd/graph.hpp"

namespace efd {

/// A policy's precondition does not hold for the instance.
struct InstanceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Verdict : std::uint8_t { SpoilerWon, NoWin, BudgetExhausted, InstanceError };
const char* to_string(Verdict v);

struct TraceStep {
  int round = 0;
  Side side = Side::Left;
  Vertex spoiler = 0;
  Vertex duplicator = 0;
};

struct MoveTrace {
  std::vector<TraceStep> steps;
  Verdict verdict = Verdict::NoWin;
  int moves_used = 0;
  int alternations = 0;
  std::string note;
};

/// Duplicator's reply to a pending move. `pos.rounds_left` counts the current round.
using DuplicatorFn = std::function<Vertex(const GamePosition& pos, SpoilerMove move)>;

/// Referee for one game. Policies call play() and read the pins; the arena consults
/// Duplicator, records the trace and unwinds the policy once the game is decided.
class Arena {
 public:
  /// `alternation_budget` is forwarded to Duplicator; kUnlimited or 0.
  Arena(const ColoredGraph& left, const ColoredGraph& right, PinList pins, int budget, DuplicatorFn duplicator,
        int alternation_budget = kUnlimited);

  /// Plays one Spoiler move and returns Duplicator's reply.
  Vertex play(Side side, Vertex v);

  const ColoredGraph& graph(Side s) const { return s == Side::Left ? left_ : right_; }
  const PinList& pins() const { return pins_; }
  int pin_count() const { return static_cast<int>(pins_.size()); }
  Vertex pin(Side s, int i) const { return s == Side::Left ? pins_.at(i).first : pins_.at(i).second; }
  /// Index of a pin sitting on v, or -1.
  int pin_at(Side s, Vertex v) const;
  int moves() const { return trace_.moves_used; }
  int budget() const { return budget_; }
  const MoveTrace& trace() const { return trace_; }

 private:
  const ColoredGraph& left_;
  const ColoredGraph& right_;
  PinList pins_;
  int budget_;
  DuplicatorFn duplicator_;
  int alternation_budget_;
  MoveTrace trace_;
  std::optional<Side> last_side_;
};

struct SpoilerPolicy {
  std::string name;
  /// The named constant standing in for the O(1) slack of the bound.
  int slack = 0;
  /// Single-sided policies never move outside this graph.
  std::optional<Side> home_side;
  bool zero_alternation = false;
  std::function<int(const ColoredGraph& left, const ColoredGraph& right, const PinList& pins)> claimed_bound;
  /// Plays until the arena stops it. Returning normally means the policy gave up.
  std::function<void(Arena&)> run;
};

/// Walk constraints for path halving. Distances are over walks, so a missing walk on
/// one side is at least as strong as a missing path.
struct PathRule {
  int color = -1;                    ///< some vertex of the walk carries this color
  std::optional<ColorSet> internal;  ///< every internal vertex carries a color from this set
  std::vector<int> avoid_pins;       ///< the walk avoids these pinned vertices
};

/// Length of a shortest a-b walk obeying the rule in `side`, kInfinity when none.
int rule_distance(const Arena& arena, Side side, Vertex a, Vertex b, const PathRule& rule);

/// Halving between pins a and b while playing only in `side`. Requires the rule distance
/// on `side` to be strictly smaller than on the other side.
void halve(Arena& arena, Side side, int a, int b, const PathRule& rule);

inline constexpr int kCycleSlack = 3;
inline constexpr int kCoreSlack = 5;
inline constexpr int kMedianSlack = 3;

/// Pins 0 and 1 are x, y with dist(x, y) <= k on the left and a larger distance on the right.
SpoilerPolicy halving_distance_policy(int k);
/// Pins 0 and 1 are x, y; the left has a rule walk of length <= k and the right has none.
SpoilerPolicy colored_path_policy(int k, PathRule rule);
/// Pin 0 lies on a cycle of length <= k on the left; its image lies on none.
SpoilerPolicy cycle_policy(int k);
/// Left is a tree of order n, right is not a tree. No pins.
SpoilerPolicy tree_vs_nontree_policy(int n);
/// Left is a tree with maximum degree <= l (0 takes the tree's own). No pins.
SpoilerPolicy median_recursion_policy(int l = 0);
/// Left is a tree with maximum degree <= l (0 takes the tree's own). Never switches sides.
SpoilerPolicy zero_alternation_policy(int l = 0);
/// Pin 0 is in the 2-core on the left and outside it on the right; d is the left diameter.
SpoilerPolicy core_preservation_policy(int d);

/// Evaluation of the median recursion f(n, l). f_bound(1, l) = 0.
int f_bound(long long n, int l);
/// The same recursion for the single-sided strategy, where one level costs
/// 1 + min(l, (n-1)/n1) moves.
int f0_bound(long long n, int l);

struct BoundCertificate {
  std::string policy;
  std::string instance;
  int claimed_bound = 0;
  int slack = 0;
  MoveTrace optimal;
  std::optional<MoveTrace> random;
  std::uint64_t random_seed = 0;
  bool pass = false;
};

struct CertifyOptions {
  std::string instance;
  std::optional<std::uint64_t> random_seed;
};

/// One game of the policy against `duplicator` with `budget` moves.
MoveTrace play_game(const SpoilerPolicy& policy, const ColoredGraph& left, const ColoredGraph& right,
                    const PinList& pins, int budget, DuplicatorFn duplicator);

/// Policy factory by name: halving_distance, cycle, tree_vs_nontree, median_recursion,
/// zero_alternation, core_preservation. `param` is k, k, n, l, l and d respectively;
/// 0 picks the default derived from `left` where one exists.
SpoilerPolicy policy_by_name(const std::string& name, int param, const ColoredGraph& left);

/// Plays the policy against the optimal Duplicator (and a seeded random one when asked).
/// Passes iff Spoiler wins within the claimed bound against the optimal Duplicator.
BoundCertificate certify(const SpoilerPolicy& policy, const ColoredGraph& left, const ColoredGraph& right,
                         const PinList& pins = {}, const CertifyOptions& options = {});

/// Optimal Duplicator backed by the exact solver. The solver is shared across calls.
DuplicatorFn optimal_duplicator(const ColoredGraph& left, const ColoredGraph& right);
/// Uniform over replies that keep a partial isomorphism, else uniform over all vertices.
DuplicatorFn random_duplicator(std::uint64_t seed);

std::string certificate_json(const BoundCertificate& cert);

}  // namespace efd
