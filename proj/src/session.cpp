#include "efd/session.hpp"

#include <sstream>

#include "efd/graph_io.hpp"

namespace efd {

namespace {

struct Aborted {};

Vertex checked_reply(const GamePosition& pos, SpoilerMove move, Vertex v) {
  const ColoredGraph& other = move.side == Side::Left ? *pos.right : *pos.left;
  if (!other.valid(v)) throw ArgumentError("reply " + std::to_string(v) + " is not a vertex of the other graph");
  return v;
}

// Spoiler move when no win within the remaining rounds exists: the smallest unpinned
// vertex on the left, else the smallest on the right.
SpoilerMove fallback_move(const ColoredGraph& left, const ColoredGraph& right, const PinList& pins) {
  for (Side s : {Side::Left, Side::Right}) {
    const ColoredGraph& g = s == Side::Left ? left : right;
    for (Vertex v = 0; v < g.order(); ++v) {
      bool pinned = false;
      for (auto [a, b] : pins) pinned = pinned || (s == Side::Left ? a : b) == v;
      if (!pinned) return {s, v};
    }
  }
  return {Side::Left, 0};
}

SessionOutcome solver_session(const SessionConfig& cfg, const ReplyProvider& reply) {
  SessionOutcome out;
  PinList pins = stored_pins(cfg.left, cfg.right);
  if (!partial_iso(cfg.left, cfg.right, pins)) {
    out.result = SessionResult::EngineWon;
    out.note = "start position already violates partial isomorphism";
    out.trace.verdict = Verdict::SpoilerWon;
    return out;
  }
  if (cfg.left.order() == 0 || cfg.right.order() == 0) {
    out.note = "empty graph";
    return out;
  }
  EfSolver solver(cfg.left, cfg.right);
  std::optional<Side> last;
  for (int round = 1; round <= cfg.rounds; ++round) {
    int left_rounds = cfg.rounds - round + 1;
    auto move = solver.winning_move(pins, left_rounds);
    SpoilerMove m = move ? *move : fallback_move(cfg.left, cfg.right, pins);
    GamePosition pos{&cfg.left, &cfg.right, pins, left_rounds, kUnlimited, last};
    auto r = reply(pos, m);
    if (!r) {
      out.result = SessionResult::Aborted;
      out.note = "input ended";
      return out;
    }
    Vertex v = checked_reply(pos, m, *r);
    if (last && *last != m.side) ++out.trace.alternations;
    last = m.side;
    pins.push_back(m.side == Side::Left ? PinPair{m.vertex, v} : PinPair{v, m.vertex});
    out.trace.steps.push_back({round, m.side, m.vertex, v});
    out.trace.moves_used = round;
    if (!partial_iso(cfg.left, cfg.right, pins)) {
      out.result = SessionResult::EngineWon;
      out.trace.verdict = Verdict::SpoilerWon;
      out.note = "partial isomorphism violated";
      return out;
    }
  }
  out.trace.verdict = Verdict::BudgetExhausted;
  out.note = "round budget exhausted";
  return out;
}

}  // namespace

const char* to_string(SessionResult r) {
  switch (r) {
    case SessionResult::EngineWon: return "engine_won";
    case SessionResult::UserSurvived: return "user_survived";
    case SessionResult::Aborted: return "aborted";
  }
  return "?";
}

PinList stored_pins(const ColoredGraph& left, const ColoredGraph& right) {
  if (left.pins().size() != right.pins().size()) throw ArgumentError("both graphs must carry the same number of pins");
  PinList pins;
  for (std::size_t i = 0; i < left.pins().size(); ++i) pins.emplace_back(left.pins()[i], right.pins()[i]);
  return pins;
}

SessionOutcome run_session(const SessionConfig& cfg, const ReplyProvider& reply) {
  if (cfg.rounds < 1) throw ArgumentError("round budget must be positive");
  if (cfg.spoiler == "solver") return solver_session(cfg, reply);

  auto policy = policy_by_name(cfg.spoiler, cfg.policy_param, cfg.left);
  DuplicatorFn duplicator = [&](const GamePosition& pos, SpoilerMove move) {
    auto r = reply(pos, move);
    if (!r) throw Aborted{};
    return checked_reply(pos, move, *r);
  };
  SessionOutcome out;
  try {
    out.trace = play_game(policy, cfg.left, cfg.right, stored_pins(cfg.left, cfg.right), cfg.rounds, duplicator);
  } catch (const Aborted&) {
    out.result = SessionResult::Aborted;
    out.note = "input ended";
    return out;
  }
  out.result = out.trace.verdict == Verdict::SpoilerWon ? SessionResult::EngineWon : SessionResult::UserSurvived;
  out.note = out.trace.note;
  return out;
}

nlohmann::json transcript_json(const SessionConfig& cfg, const SessionOutcome& out) {
  nlohmann::json steps = nlohmann::json::array();
  for (auto& s : out.trace.steps)
    steps.push_back({{"round", s.round}, {"side", to_string(s.side)}, {"spoiler", s.spoiler}, {"duplicator", s.duplicator}});
  return {{"left", cfg.left_text},   {"right", cfg.right_text}, {"rounds", cfg.rounds},
          {"spoiler", cfg.spoiler},  {"policy_param", cfg.policy_param}, {"steps", steps},
          {"result", to_string(out.result)}, {"note", out.note},   {"build", EFD_BUILD_ID}};
}

SessionOutcome replay_transcript(const nlohmann::json& t, SessionConfig* config_out) {
  SessionConfig cfg;
  Palette palette;
  cfg.left_text = t.at("left").get<std::string>();
  cfg.right_text = t.at("right").get<std::string>();
  std::istringstream l(cfg.left_text), r(cfg.right_text);
  cfg.left = read_graph(l, palette);
  cfg.right = read_graph(r, palette);
  cfg.rounds = t.at("rounds").get<int>();
  cfg.spoiler = t.at("spoiler").get<std::string>();
  cfg.policy_param = t.value("policy_param", 0);
  std::vector<Vertex> replies;
  for (const auto& s : t.at("steps")) replies.push_back(s.at("duplicator").get<Vertex>());
  std::size_t next = 0;
  auto out = run_session(cfg, [&](const GamePosition&, SpoilerMove) -> std::optional<Vertex> {
    if (next >= replies.size()) return std::nullopt;
    return replies[next++];
  });
  if (config_out) *config_out = std::move(cfg);
  return out;
}

}  // namespace efd
