// efd: command-line front end.
//
//   efd solve --left a.g --right b.g --cap 6
//   efd certify --policy median_recursion --left a.g --right b.g
//   efd certify --suite --seed 1
//   efd extremal --family maxdeg --l 4 --level 1 --verify
//   efd sample --kind tree --n 100000 --samples 100 --seed 7
//   efd giant --n 100000 --c 2 --samples 20 --seed 7
//   efd trees --n 100000 --samples 100 --seed 7 --format csv
//   efd repl --left a.g --right b.g
//
// Exit codes: 0 success, 1 failed checks (reports are still written), 2 usage errors.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "efd/ef_engine.hpp"
#include "efd/experiments.hpp"
#include "efd/extremal.hpp"
#include "efd/graph_io.hpp"
#include "efd/metrics.hpp"
#include "efd/random_structs.hpp"
#include "efd/rng.hpp"
#include "efd/session.hpp"
#include "efd/strategies.hpp"

using namespace efd;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string out;
  std::string format = "json";
  bool timing = false;
};

std::string resolve(const std::string& path) {
  if (path.empty() || std::filesystem::path(path).is_absolute()) return path;
  if (const char* dir = std::getenv("EFD_OUT_DIR")) return (std::filesystem::path(dir) / path).string();
  return path;
}

void write_text(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  auto path = resolve(c.out);
  if (auto parent = std::filesystem::path(path).parent_path(); !parent.empty())
    std::filesystem::create_directories(parent);
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

void emit(const Common& c, json report, const std::string& summary, double millis) {
  if (c.timing) report["millis"] = millis;
  if (c.format == "json") {
    write_text(c, report.dump(2) + "\n");
  } else if (c.format == "csv") {
    SuiteReport r;
    r.report = report;
    auto csv = to_csv(r);
    if (csv.empty()) throw UsageError("this command has no tabular output; use --format json or text");
    write_text(c, csv);
  } else {
    std::string line = summary;
    if (report.contains("pass")) line += report["pass"].get<bool>() ? "  [pass]" : "  [FAIL]";
    write_text(c, line + "\n");
  }
}

int emit_suite(const Common& c, const SuiteReport& r, double millis) {
  emit(c, r.report, r.name + ": " + r.summary, millis);
  return r.pass ? 0 : 1;
}

ColoredGraph load(const std::string& path, Palette& palette) {
  try {
    return read_graph_file(path, palette);
  } catch (const FormatError& e) {
    throw UsageError(e.what());
  }
}

json pins_json(const PinList& pins) {
  json j = json::array();
  for (auto [a, b] : pins) j.push_back({a, b});
  return j;
}

class Stopwatch {
 public:
  double millis() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out, "Output path (default stdout; relative paths go under $EFD_OUT_DIR when set)");
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  sub->add_flag("--timing", c.timing, "Add wall-clock milliseconds to the report");
}

int ceil_fraction(int samples, double f) { return static_cast<int>(std::ceil(f * samples - 1e-9)); }

// ---- solve ----

struct SolveArgs {
  std::string left, right;
  int cap = 6;
  int alternations = -1;
};

int run_solve(const Common& c, const SolveArgs& a) {
  Stopwatch watch;
  Palette palette;
  auto left = load(a.left, palette), right = load(a.right, palette);
  auto pins = stored_pins(left, right);
  GameOutcome out = a.alternations >= 0 ? ef_value_alternation(left, right, a.cap, a.alternations, pins)
                                        : ef_value_pinned(left, right, pins, a.cap);
  json j{{"command", "solve"},
         {"left", a.left},
         {"right", a.right},
         {"cap", a.cap},
         {"alternations", a.alternations >= 0 ? json(a.alternations) : json(nullptr)},
         {"pins", pins_json(pins)},
         {"verdict", out.spoiler_wins ? "SpoilerWins" : "NotWithinCap"},
         {"k", out.spoiler_wins ? json(out.k) : json(nullptr)},
         {"first_move", out.first_move ? json{{"side", to_string(out.first_move->side)}, {"vertex", out.first_move->vertex}}
                                       : json(nullptr)},
         {"nodes_expanded", out.nodes_expanded},
         {"build", EFD_BUILD_ID}};
  std::string summary = out.spoiler_wins ? "Spoiler wins in " + std::to_string(out.k) + " rounds"
                                         : "no Spoiler win within " + std::to_string(a.cap) + " rounds";
  emit(c, j, summary, watch.millis());
  return 0;
}

// ---- certify ----

struct CertifyArgs {
  bool suite = false;
  std::string policy, left, right;
  int param = 0;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> random_seed;
  int instances = 100;
};

int run_certify(const Common& c, const CertifyArgs& a, bool have_seed) {
  Stopwatch watch;
  if (a.suite) {
    if (!have_seed) throw UsageError("certify --suite needs --seed");
    StrategySuiteConfig cfg;
    cfg.seed = a.seed;
    cfg.instances = a.instances;
    return emit_suite(c, strategy_suite(cfg), watch.millis());
  }
  if (a.policy.empty() || a.left.empty() || a.right.empty())
    throw UsageError("certify needs --policy, --left and --right (or --suite)");
  Palette palette;
  auto left = load(a.left, palette), right = load(a.right, palette);
  SpoilerPolicy policy;
  try {
    policy = policy_by_name(a.policy, a.param, left);
  } catch (const ArgumentError& e) {
    throw UsageError(e.what());
  }
  CertifyOptions opts;
  opts.instance = a.left + " vs " + a.right;
  opts.random_seed = a.random_seed;
  auto cert = certify(policy, left, right, stored_pins(left, right), opts);
  json j = json::parse(certificate_json(cert));
  j["command"] = "certify";
  j["build"] = EFD_BUILD_ID;
  std::string summary = cert.policy + ": " + to_string(cert.optimal.verdict) + " in " +
                        std::to_string(cert.optimal.moves_used) + " moves, bound " + std::to_string(cert.claimed_bound);
  emit(c, j, summary, watch.millis());
  return cert.pass ? 0 : 1;
}

// ---- extremal ----

struct ExtremalArgs {
  bool suite = false;
  std::string family = "maxdeg";
  int l = 4, level = 0;
  bool verify = false;
  int cap = 0;
  std::string emit_dir;
};

int run_extremal(const Common& c, const ExtremalArgs& a) {
  Stopwatch watch;
  if (a.suite) return emit_suite(c, extremal_suite(), watch.millis());
  ExtremalPair pair = a.family == "maxdeg" ? lb_pair_maxdeg(a.l, a.level) : lb_pair_powerlaw(a.l, a.level);
  if (!a.emit_dir.empty()) {
    auto dir = resolve(a.emit_dir);
    std::filesystem::create_directories(dir);
    std::ofstream(dir + "/left.g") << to_text(pair.left);
    std::ofstream(dir + "/right.g") << to_text(pair.right);
  }
  if (!a.verify) {
    json j{{"command", "extremal"},    {"family", a.family},       {"l", pair.l},
           {"level", pair.level},      {"k", pair.k},              {"a", pair.a},
           {"b", pair.b},              {"left_order", pair.left.order()}, {"right_order", pair.right.order()},
           {"claimed_lower_bound", pair.claimed_lower_bound},      {"build", EFD_BUILD_ID}};
    emit(c, j,
         a.family + " pair with orders " + std::to_string(pair.left.order()) + "/" +
             std::to_string(pair.right.order()) + ", claimed lower bound " + std::to_string(pair.claimed_lower_bound),
         watch.millis());
    return 0;
  }
  auto rep = verify_lower_bound(pair, a.cap > 0 ? a.cap : pair.claimed_lower_bound + 2);
  json j = json::parse(lower_bound_json(pair, rep));
  j["command"] = "extremal";
  j["build"] = EFD_BUILD_ID;
  std::string summary = rep.machine_checked
                            ? "exact " + (rep.exact ? std::to_string(*rep.exact) : "> " + std::to_string(rep.cap)) +
                                  ", claimed " + std::to_string(rep.claimed)
                            : rep.note;
  emit(c, j, summary, watch.millis());
  return rep.pass ? 0 : 1;
}

// ---- sample ----

struct SampleArgs {
  std::string kind = "tree";
  int n = 1000;
  long long samples = 1;
  std::uint64_t seed = 0;
  double p = -1, cc = -1;
  int k = 1;
  std::string emit_dir;
};

int run_sample(const Common& c, const SampleArgs& a) {
  Stopwatch watch;
  if (a.kind == "gnp" && (a.p < 0) == (a.cc < 0)) throw UsageError("sample --kind gnp needs exactly one of --p, --c");
  double p = a.p >= 0 ? a.p : a.cc / a.n;
  if (a.kind == "gnp" && p > 1) throw UsageError("edge probability above 1");
  if (a.kind == "forest" && (a.k < 1 || a.k > a.n)) throw UsageError("--k must be in [1, n]");
  auto draw = [&](long long i) {
    auto rng = make_rng(a.seed, static_cast<std::uint64_t>(i));
    if (a.kind == "tree") return sample_tree(a.n, rng);
    if (a.kind == "forest") return sample_forest(a.n, a.k, rng);
    return sample_gnp(a.n, p, rng);
  };
  if (!a.emit_dir.empty()) {
    auto dir = resolve(a.emit_dir);
    std::filesystem::create_directories(dir);
    for (long long i = 0; i < a.samples; ++i)
      std::ofstream(dir + "/sample_" + std::to_string(i) + ".g") << to_text(draw(i));
  }
  if (a.kind == "tree") return emit_suite(c, pendant_suite(a.n, static_cast<int>(a.samples), a.seed), watch.millis());
  if (a.kind == "forest") return emit_suite(c, forest_suite(a.n, a.k, a.samples, a.seed), watch.millis());
  json rows = json::array();
  double fraction = 0;
  for (long long i = 0; i < a.samples; ++i) {
    auto g = draw(i);
    int giant = giant_component(g).order();
    fraction += static_cast<double>(giant) / a.n;
    rows.push_back({{"index", i}, {"edges", g.size()}, {"giant_order", giant}});
  }
  double mean = fraction / static_cast<double>(a.samples);
  json j{{"suite", "gnp"},
         {"seed", a.seed},
         {"samples", a.samples},
         {"build", EFD_BUILD_ID},
         {"n", a.n},
         {"p", p},
         {"mean_giant_fraction", mean},
         {"giant_fraction_limit", giant_fraction_limit(p * a.n)},
         {"columns", {"index", "edges", "giant_order"}},
         {"rows", rows}};
  emit(c, j, "gnp: mean giant fraction " + std::to_string(mean), watch.millis());
  return 0;
}

// ---- giant / trees ----

struct GiantArgs {
  GiantSuiteConfig cfg;
  int required = -1;
  bool witness = false;
  int cap = 3;
};

int run_giant(const Common& c, GiantArgs a) {
  Stopwatch watch;
  if (a.witness) {
    int required = a.required >= 0 ? a.required : ceil_fraction(a.cfg.samples, 0.75);
    return emit_suite(c, witness_suite(a.cfg.n, a.cfg.c, a.cfg.samples, a.cfg.seed, required, a.cap), watch.millis());
  }
  a.cfg.required = a.required >= 0 ? a.required : ceil_fraction(a.cfg.samples, 0.95);
  return emit_suite(c, giant_suite(a.cfg), watch.millis());
}

struct TreesArgs {
  int n = 100000;
  int samples = 100;
  std::uint64_t seed = 0;
  std::string check = "typicality";
  long long budget = 100000;
  int required = -1;
};

int run_trees(const Common& c, const TreesArgs& a) {
  Stopwatch watch;
  int required = a.required >= 0 ? a.required : ceil_fraction(a.samples, 0.95);
  if (a.check == "typicality")
    return emit_suite(c, typicality_suite(a.n, a.samples, a.budget, a.seed, required), watch.millis());
  if (a.check == "degree") return emit_suite(c, degree_band_suite(a.n, a.samples, a.seed, required), watch.millis());
  return emit_suite(c, pendant_suite(a.n, a.samples, a.seed), watch.millis());
}

// ---- repl ----

struct ReplArgs {
  std::string left, right, spoiler = "solver", transcript = "efd_transcript.json", replay;
  int rounds = 0, param = 0, cap = 8;
};

int run_repl(const ReplArgs& a) {
  if (!a.replay.empty()) {
    std::ifstream f(a.replay);
    if (!f) throw UsageError("cannot read " + a.replay);
    json t;
    try {
      t = json::parse(f);
    } catch (const json::exception& e) {
      throw UsageError(a.replay + ": " + e.what());
    }
    SessionConfig cfg;
    auto out = replay_transcript(t, &cfg);
    auto again = transcript_json(cfg, out);
    bool same = again["result"] == t.at("result") && again["steps"] == t.at("steps");
    std::cout << "replayed result: " << to_string(out.result) << (same ? " (identical)" : " (DIFFERS)") << "\n";
    return same ? 0 : 1;
  }
  if (a.left.empty() || a.right.empty()) throw UsageError("repl needs --left and --right (or --replay)");
  SessionConfig cfg;
  Palette palette;
  cfg.left = load(a.left, palette);
  cfg.right = load(a.right, palette);
  cfg.left_text = to_text(cfg.left, &palette);
  cfg.right_text = to_text(cfg.right, &palette);
  cfg.spoiler = a.spoiler;
  cfg.policy_param = a.param;
  cfg.rounds = a.rounds;
  if (cfg.rounds <= 0 && cfg.spoiler == "solver") {
    auto v = ef_value_pinned(cfg.left, cfg.right, stored_pins(cfg.left, cfg.right), a.cap);
    cfg.rounds = v.spoiler_wins ? std::max(v.k, 1) : a.cap;
  } else if (cfg.rounds <= 0) {
    try {
      auto policy = policy_by_name(cfg.spoiler, cfg.policy_param, cfg.left);
      cfg.rounds = std::max(1, policy.claimed_bound(cfg.left, cfg.right, stored_pins(cfg.left, cfg.right)));
    } catch (const ArgumentError& e) {
      throw UsageError(e.what());
    }
  }
  std::cout << "left: " << cfg.left.order() << " vertices, right: " << cfg.right.order() << " vertices, "
            << cfg.rounds << " rounds, Spoiler: " << cfg.spoiler << "\n";
  auto ask = [&](const GamePosition& pos, SpoilerMove move) -> std::optional<Vertex> {
    const ColoredGraph& target = move.side == Side::Left ? *pos.right : *pos.left;
    int round = static_cast<int>(pos.pinned.size() - stored_pins(cfg.left, cfg.right).size()) + 1;
    std::cout << "round " << round << ": Spoiler takes " << to_string(move.side) << " vertex " << move.vertex
              << ". Your vertex in the " << to_string(other(move.side)) << " graph [0," << target.order() - 1
              << "]: " << std::flush;
    std::string line;
    while (std::getline(std::cin, line)) {
      std::istringstream in(line);
      long long v;
      std::string rest;
      if (in >> v && !(in >> rest) && v >= 0 && v < target.order()) return static_cast<Vertex>(v);
      std::cout << "not a vertex of that graph, try again: " << std::flush;
    }
    std::cout << "\n";
    return std::nullopt;
  };
  auto out = run_session(cfg, ask);
  switch (out.result) {
    case SessionResult::EngineWon: std::cout << "Spoiler wins: " << out.note << "\n"; break;
    case SessionResult::UserSurvived: std::cout << "you survived: " << out.note << "\n"; break;
    case SessionResult::Aborted: std::cout << "session aborted\n"; break;
  }
  auto path = resolve(a.transcript);
  std::ofstream(path) << transcript_json(cfg, out).dump(2) << "\n";
  std::cout << "transcript: " << path << "\n";
  return out.result == SessionResult::Aborted ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ehrenfeucht game solver and random-structure experiments"};
  app.require_subcommand(1);
  Common common;

  SolveArgs solve;
  auto* s_solve = app.add_subcommand("solve", "Exact game value of two graph files");
  s_solve->add_option("--left", solve.left, "Left graph file")->required()->check(CLI::ExistingFile);
  s_solve->add_option("--right", solve.right, "Right graph file")->required()->check(CLI::ExistingFile);
  s_solve->add_option("--cap", solve.cap, "Round cap")->check(CLI::PositiveNumber);
  s_solve->add_option("--alternations", solve.alternations, "Bound on Spoiler's side switches")
      ->check(CLI::NonNegativeNumber);
  add_common(s_solve, common);

  CertifyArgs cert;
  auto* s_cert = app.add_subcommand("certify", "Certify a Spoiler policy or run the strategy suite");
  s_cert->add_flag("--suite", cert.suite, "Run the randomized strategy suite");
  s_cert->add_option("--policy", cert.policy, "Policy name")
      ->check(CLI::IsMember({"halving_distance", "cycle", "tree_vs_nontree", "median_recursion", "zero_alternation",
                             "core_preservation"}));
  s_cert->add_option("--left", cert.left, "Left graph file")->check(CLI::ExistingFile);
  s_cert->add_option("--right", cert.right, "Right graph file")->check(CLI::ExistingFile);
  s_cert->add_option("--param", cert.param, "Policy parameter (k, n, l or d)")->check(CLI::NonNegativeNumber);
  s_cert->add_option("--random-seed", cert.random_seed, "Also play against a seeded random Duplicator");
  auto* cert_seed = s_cert->add_option("--seed", cert.seed, "Seed for --suite");
  s_cert->add_option("--instances", cert.instances, "Instances per family for --suite")->check(CLI::PositiveNumber);
  add_common(s_cert, common);

  ExtremalArgs ext;
  auto* s_ext = app.add_subcommand("extremal", "Extremal lower-bound tree pairs");
  s_ext->add_flag("--suite", ext.suite, "Run the fixed lower-bound suite");
  s_ext->add_option("--family", ext.family, "Construction")->check(CLI::IsMember({"maxdeg", "powerlaw"}));
  s_ext->add_option("--l", ext.l, "Degree parameter l")->check(CLI::PositiveNumber);
  s_ext->add_option("--level", ext.level, "Level i (maxdeg) or t (powerlaw)")->check(CLI::NonNegativeNumber);
  s_ext->add_flag("--verify", ext.verify, "Check the claimed bound with the exact solver");
  s_ext->add_option("--cap", ext.cap, "Solver round cap")->check(CLI::PositiveNumber);
  s_ext->add_option("--emit", ext.emit_dir, "Write left.g and right.g into this directory");
  add_common(s_ext, common);

  SampleArgs smp;
  auto* s_smp = app.add_subcommand("sample", "Random trees, forests and G(n,p)");
  s_smp->add_option("--kind", smp.kind, "tree, forest or gnp")->check(CLI::IsMember({"tree", "forest", "gnp"}));
  s_smp->add_option("--n", smp.n, "Order")->check(CLI::PositiveNumber);
  s_smp->add_option("--samples", smp.samples, "Sample count")->check(CLI::PositiveNumber);
  s_smp->add_option("--seed", smp.seed, "Seed")->required();
  s_smp->add_option("--p", smp.p, "Edge probability")->check(CLI::Range(0.0, 1.0));
  s_smp->add_option("--c", smp.cc, "Mean degree; p = c/n")->check(CLI::NonNegativeNumber);
  s_smp->add_option("--k", smp.k, "Number of roots (forest)")->check(CLI::PositiveNumber);
  s_smp->add_option("--emit", smp.emit_dir, "Write every sample into this directory");
  add_common(s_smp, common);

  GiantArgs gi;
  auto* s_gi = app.add_subcommand("giant", "Giant component, core and kernel predicates");
  s_gi->add_option("--n", gi.cfg.n, "Order")->check(CLI::PositiveNumber);
  s_gi->add_option("--c", gi.cfg.c, "Mean degree")->check(CLI::PositiveNumber);
  s_gi->add_option("--samples", gi.cfg.samples, "Sample count")->check(CLI::PositiveNumber);
  s_gi->add_option("--seed", gi.cfg.seed, "Seed")->required();
  s_gi->add_option("--l", gi.cfg.l, "Parameter l (0: ceil(2 ln ln n))")->check(CLI::NonNegativeNumber);
  s_gi->add_option("--required", gi.required, "Samples that must pass")->check(CLI::NonNegativeNumber);
  s_gi->add_option("--length-constant", gi.cfg.length_constant, "Allowed max length / ln n")
      ->check(CLI::PositiveNumber);
  s_gi->add_flag("--witness", gi.witness, "Run the leaf-star witness check instead");
  s_gi->add_option("--cap", gi.cap, "Round cap of the witness check")->check(CLI::PositiveNumber);
  add_common(s_gi, common);

  TreesArgs tr;
  auto* s_tr = app.add_subcommand("trees", "Random tree sweeps");
  s_tr->add_option("--n", tr.n, "Order")->check(CLI::PositiveNumber);
  s_tr->add_option("--samples", tr.samples, "Tree count")->check(CLI::PositiveNumber);
  s_tr->add_option("--seed", tr.seed, "Seed")->required();
  s_tr->add_option("--check", tr.check, "typicality, degree or pendant")
      ->check(CLI::IsMember({"typicality", "degree", "pendant"}));
  s_tr->add_option("--budget", tr.budget, "Checkbook path-pair budget")->check(CLI::PositiveNumber);
  s_tr->add_option("--required", tr.required, "Trees that must pass")->check(CLI::NonNegativeNumber);
  add_common(s_tr, common);

  ReplArgs rp;
  auto* s_rp = app.add_subcommand("repl", "Play Duplicator against an engine Spoiler");
  s_rp->add_option("--left", rp.left, "Left graph file")->check(CLI::ExistingFile);
  s_rp->add_option("--right", rp.right, "Right graph file")->check(CLI::ExistingFile);
  s_rp->add_option("--rounds", rp.rounds, "Round budget (default: solved value up to --cap)")
      ->check(CLI::PositiveNumber);
  s_rp->add_option("--cap", rp.cap, "Cap for the default round budget")->check(CLI::PositiveNumber);
  s_rp->add_option("--spoiler", rp.spoiler, "solver or a policy name");
  s_rp->add_option("--param", rp.param, "Policy parameter")->check(CLI::NonNegativeNumber);
  s_rp->add_option("--transcript", rp.transcript, "Transcript path");
  s_rp->add_option("--replay", rp.replay, "Replay a transcript and compare verdicts")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*s_solve) return run_solve(common, solve);
    if (*s_cert) return run_certify(common, cert, cert_seed->count() > 0);
    if (*s_ext) return run_extremal(common, ext);
    if (*s_smp) return run_sample(common, smp);
    if (*s_gi) return run_giant(common, gi);
    if (*s_tr) return run_trees(common, tr);
    if (*s_rp) return run_repl(rp);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
