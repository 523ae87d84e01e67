#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "efd/graph.hpp"

namespace efd {

enum class Side : std::uint8_t { Left = 0, Right = 1 };

inline Side other(Side s) { return s == Side::Left ? Side::Right : Side::Left; }
inline const char* to_string(Side s) { return s == Side::Left ? "left" : "right"; }

using PinPair = std::pair<Vertex, Vertex>;
using PinList = std::vector<PinPair>;

inline constexpr int kUnlimited = -1;

struct ProtocolError : std::logic_error {
  using std::logic_error::logic_error;
};

struct GamePosition {
  const ColoredGraph* left = nullptr;
  const ColoredGraph* right = nullptr;
  PinList pinned;
  int rounds_left = 0;
  int alternation_budget = kUnlimited;
  std::optional<Side> last_side;
};

struct SpoilerMove {
  Side side = Side::Left;
  Vertex vertex = 0;
  friend bool operator==(const SpoilerMove&, const SpoilerMove&) = default;
};

struct GameOutcome {
  bool spoiler_wins = false;
  int k = 0;  // rounds needed when spoiler_wins
  int cap = 0;
  int alternations = kUnlimited;
  std::optional<SpoilerMove> first_move;
  std::uint64_t nodes_expanded = 0;
  double millis = 0;
};

struct DuplicatorReply {
  Vertex vertex = -1;
  /// Rounds Duplicator survives from here, counting the current one; equals the
  /// rounds left when Duplicator can no longer lose.
  int survival = 0;
};

/// The pinned correspondence respects equality, adjacency and colors.
bool partial_iso(const ColoredGraph& left, const ColoredGraph& right, const PinList& pins);
bool partial_iso(const GamePosition& pos);

/// Halving bound: rounds Spoiler needs to exploit a pin pair at distance k on one side and
/// a strictly larger distance on the other. R(1) = 0, R(k) = 1 + R(ceil(k/2)).
int halving_rounds(int k);

struct SolverOptions {
  /// Deduplicate moves by 1-WL classes when both graphs are forests of at most this order.
  int orbit_reduction_limit = 400;
  std::size_t memo_limit = std::size_t{1} << 22;
};

/// Exact minimax solver for one pair of graphs. The memo persists across calls.
class EfSolver {
 public:
  EfSolver(const ColoredGraph& left, const ColoredGraph& right, SolverOptions options = {});
  ~EfSolver();
  EfSolver(const EfSolver&) = delete;
  EfSolver& operator=(const EfSolver&) = delete;

  /// Whether Spoiler wins within `rounds` from the pinned position. Positions that already
  /// violate partial isomorphism count as won in 0 rounds.
  bool spoiler_wins_within(const PinList& pins, int rounds, int alternation_budget = kUnlimited,
                           std::optional<Side> last_side = std::nullopt);

  /// Least k <= cap with a Spoiler win, with a winning first move when k >= 1.
  GameOutcome value(const PinList& pins, int cap, int alternation_budget = kUnlimited,
                    std::optional<Side> last_side = std::nullopt);

  /// A Spoiler move that wins within `rounds`, if one exists.
  std::optional<SpoilerMove> winning_move(const PinList& pins, int rounds, int alternation_budget = kUnlimited,
                                          std::optional<Side> last_side = std::nullopt);

  /// Reply to `move` maximizing survival; ties go to the smallest vertex index.
  /// `rounds_left` counts the round being played.
  DuplicatorReply best_reply(const PinList& pins, SpoilerMove move, int rounds_left,
                             int alternation_budget = kUnlimited, std::optional<Side> last_side = std::nullopt);

  std::uint64_t nodes_expanded() const;
  const ColoredGraph& graph(Side s) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

GameOutcome ef_value(const ColoredGraph& left, const ColoredGraph& right, int cap);
GameOutcome ef_value_pinned(const ColoredGraph& left, const ColoredGraph& right, const PinList& pins, int cap);
GameOutcome ef_value_alternation(const ColoredGraph& left, const ColoredGraph& right, int cap, int r,
                                 const PinList& pins = {});

/// Reply for the pending Spoiler move. Throws ProtocolError when rounds_left < 1.
DuplicatorReply optimal_duplicator_move(const GamePosition& pos, SpoilerMove move);

}  // namespace efd
