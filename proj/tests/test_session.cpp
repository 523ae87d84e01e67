#include <sstream>

#include "doctest.h"
#include "efd/ef_engine.hpp"
#include "efd/experiments.hpp"
#include "efd/graph_io.hpp"
#include "efd/session.hpp"

using namespace efd;

namespace {

SessionConfig config(const ColoredGraph& left, const ColoredGraph& right, int rounds,
                     const std::string& spoiler = "solver") {
  SessionConfig cfg;
  cfg.left = left;
  cfg.right = right;
  cfg.left_text = to_text(left);
  cfg.right_text = to_text(right);
  cfg.rounds = rounds;
  cfg.spoiler = spoiler;
  return cfg;
}

}  // namespace

TEST_CASE("solver Spoiler beats every reply sequence within the solved value") {
  auto k12 = star_graph(2), k13 = star_graph(3);
  int value = ef_value(k12, k13, 6).k;
  REQUIRE(value == 3);
  auto cfg = config(k12, k13, value);
  int sessions = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        int script[3] = {a, b, c}, next = 0;
        auto out = run_session(cfg, [&](const GamePosition& pos, SpoilerMove move) -> std::optional<Vertex> {
          const ColoredGraph& other = move.side == Side::Left ? *pos.right : *pos.left;
          return script[next++] % other.order();
        });
        CHECK(out.result == SessionResult::EngineWon);
        CHECK(out.trace.moves_used <= value);
        ++sessions;
      }
  CHECK(sessions == 64);
}

TEST_CASE("mirroring survives on isomorphic graphs") {
  auto cfg = config(path_graph(5), path_graph(5), 5);
  auto out = run_session(cfg, [](const GamePosition&, SpoilerMove move) -> std::optional<Vertex> { return move.vertex; });
  CHECK(out.result == SessionResult::UserSurvived);
  CHECK(out.trace.moves_used == 5);
}

TEST_CASE("end of input aborts and the transcript replays") {
  auto cfg = config(star_graph(2), star_graph(3), 3);
  int calls = 0;
  auto out = run_session(cfg, [&](const GamePosition&, SpoilerMove) -> std::optional<Vertex> {
    if (calls++ == 1) return std::nullopt;
    return 0;
  });
  CHECK(out.result == SessionResult::Aborted);
  auto t = transcript_json(cfg, out);
  auto again = replay_transcript(t);
  CHECK(again.result == SessionResult::Aborted);
  CHECK(transcript_json(cfg, again)["steps"] == t["steps"]);

  auto full = run_session(cfg, [](const GamePosition&, SpoilerMove) -> std::optional<Vertex> { return 1; });
  auto t2 = transcript_json(cfg, full);
  auto replayed = replay_transcript(t2);
  CHECK(to_string(replayed.result) == t2["result"].get<std::string>());
  CHECK(transcript_json(cfg, replayed) == t2);
}

TEST_CASE("policy Spoiler against an optimal user") {
  auto left = path_graph(5), right = cycle_graph(5);
  auto cfg = config(left, right, 5, "tree_vs_nontree");
  auto best = optimal_duplicator(left, right);
  auto out = run_session(cfg, [&](const GamePosition& pos, SpoilerMove move) -> std::optional<Vertex> {
    return best(pos, move);
  });
  CHECK(out.result == SessionResult::EngineWon);
  CHECK(out.trace.moves_used <= 5);
}

TEST_CASE("session arguments") {
  auto cfg = config(star_graph(2), star_graph(3), 3);
  CHECK_THROWS_AS(run_session(cfg, [](const GamePosition&, SpoilerMove) -> std::optional<Vertex> { return 9; }),
                  ArgumentError);
  cfg.rounds = 0;
  CHECK_THROWS_AS(run_session(cfg, [](const GamePosition&, SpoilerMove) -> std::optional<Vertex> { return 0; }),
                  ArgumentError);
  auto pinned = path_graph(3);
  pinned.add_pin(0);
  CHECK_THROWS_AS(stored_pins(pinned, path_graph(3)), ArgumentError);
  CHECK_THROWS_AS(policy_by_name("halving_distance", 0, pinned), ArgumentError);
  CHECK_THROWS_AS(policy_by_name("nope", 1, pinned), ArgumentError);
}

TEST_CASE("suite reports render as csv") {
  auto r = fbound_suite();
  auto csv = to_csv(r);
  CHECK(csv.rfind("n,l,f,ratio,pass\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
  SuiteReport plain;
  plain.report = {{"x", 1}};
  CHECK(to_csv(plain).empty());
}
