#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "efd/ef_engine.hpp"
#include "efd/graph.hpp"
#include "efd/strategies.hpp"
#include "json.hpp"

namespace efd {

/// An interactive game: an engine plays Spoiler, the caller supplies Duplicator's replies.
struct SessionConfig {
  ColoredGraph left;
  ColoredGraph right;
  /// Text of both graphs as written by write_graph; kept so transcripts are self-contained.
  std::string left_text;
  std::string right_text;
  int rounds = 0;
  /// "solver" or a policy name accepted by policy_by_name.
  std::string spoiler = "solver";
  int policy_param = 0;
};

/// Duplicator's reply to the pending move, or nullopt to abort (end of input).
using ReplyProvider = std::function<std::optional<Vertex>(const GamePosition& pos, SpoilerMove move)>;

enum class SessionResult : std::uint8_t { EngineWon, UserSurvived, Aborted };
const char* to_string(SessionResult r);

struct SessionOutcome {
  SessionResult result = SessionResult::UserSurvived;
  MoveTrace trace;
  std::string note;
};

/// Pins come from the graphs' pin lists, matched by position. Replies outside the other
/// graph throw ArgumentError.
SessionOutcome run_session(const SessionConfig& config, const ReplyProvider& reply);

nlohmann::json transcript_json(const SessionConfig& config, const SessionOutcome& outcome);

/// Rebuilds the configuration from a transcript and replays its recorded replies.
/// Returns the replayed outcome; the caller compares it with the recorded verdict.
SessionOutcome replay_transcript(const nlohmann::json& transcript, SessionConfig* config_out = nullptr);

/// Pin list zipped from the pins stored in both graphs.
PinList stored_pins(const ColoredGraph& left, const ColoredGraph& right);

}  // namespace efd
