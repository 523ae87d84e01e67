// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--only 1,5,...] [--out DIR] [--known-failures 7,8,...]
//
// The exit code is nonzero when a criterion fails that is not listed as a known failure.
// Known failures still print FAIL.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "efd/experiments.hpp"

using namespace efd;

namespace {

// Pinned thresholds.
constexpr int kOracleMaxOrder = 5;
constexpr int kOracleMaxK = 4;
constexpr double kRatioLo = 0.4, kRatioHi = 1.1;
constexpr int kForestN = 3000, kForestK = 6;
constexpr long long kForestSamples = 10000;
constexpr int kPendantN = 100000, kPendantTrees = 50;
constexpr double kPendantRelTol = 0.05;
constexpr int kTreeN = 100000, kTreeSamples = 100, kTreeRequired = 95;
constexpr long long kCheckBudget = 100000;
constexpr int kGiantN = 100000, kGiantSamples = 20, kGiantRequired = 19;
constexpr double kGiantC = 2.0, kLengthConstant = 30;
constexpr int kWitnessN = 2000, kWitnessSamples = 20, kWitnessRequired = 15, kWitnessCap = 3;
constexpr std::uint64_t kSeed = 20240611;

// Exact values of the extremal pairs, recorded from the first run.
struct Golden {
  const char* family;
  int l, level, exact;
};
constexpr Golden kExtremalGoldens[] = {
    {"maxdeg", 4, 0, 3}, {"maxdeg", 5, 0, 4}, {"maxdeg", 4, 1, 5}, {"powerlaw", 5, 1, 4}};

std::string out_dir;

void save(const SuiteReport& r) {
  if (out_dir.empty()) return;
  std::filesystem::create_directories(out_dir);
  std::ofstream(out_dir + "/" + r.name + ".json") << to_json(r);
}

struct Line {
  bool pass;
  std::string detail;
};

Line from_suite(const SuiteReport& r) {
  save(r);
  return {r.pass, r.summary};
}

Line criterion1() { return from_suite(oracle_equivalence_suite(kOracleMaxOrder, kOracleMaxK)); }

Line criterion2() {
  auto r = extremal_suite();
  save(r);
  bool goldens = true;
  for (const auto& row : r.report["rows"]) {
    for (const auto& g : kExtremalGoldens)
      if (row["family"] == g.family && row["l"] == g.l && row["level"] == g.level)
        goldens = goldens && row["exact"].is_number() && row["exact"].get<int>() == g.exact;
  }
  return {r.pass && goldens, r.summary + (goldens ? "goldens match" : "golden mismatch")};
}

Line criterion3() {
  StrategySuiteConfig cfg;
  cfg.seed = kSeed;
  return from_suite(strategy_suite(cfg));
}

Line criterion4() { return from_suite(fbound_suite(kRatioLo, kRatioHi)); }

Line criterion5() { return from_suite(forest_suite(kForestN, kForestK, kForestSamples, kSeed)); }

Line criterion6() { return from_suite(pendant_suite(kPendantN, kPendantTrees, kSeed, kPendantRelTol)); }

Line criterion7() { return from_suite(typicality_suite(kTreeN, kTreeSamples, kCheckBudget, kSeed, kTreeRequired)); }

Line criterion8() { return from_suite(degree_band_suite(kTreeN, kTreeSamples, kSeed + 1, kTreeRequired)); }

Line criterion9() {
  GiantSuiteConfig cfg;
  cfg.n = kGiantN;
  cfg.c = kGiantC;
  cfg.samples = kGiantSamples;
  cfg.required = kGiantRequired;
  cfg.length_constant = kLengthConstant;
  cfg.seed = kSeed;
  return from_suite(giant_suite(cfg));
}

Line criterion10() {
  return from_suite(witness_suite(kWitnessN, kGiantC, kWitnessSamples, kSeed, kWitnessRequired, kWitnessCap));
}

// Every suite twice at reduced scale with the same seed; reports must be byte-identical.
Line criterion11() {
  std::vector<std::pair<std::string, std::function<SuiteReport()>>> suites = {
      {"oracle", [] { return oracle_equivalence_suite(4, 3); }},
      {"extremal", [] { return extremal_suite(); }},
      {"strategies",
       [] {
         StrategySuiteConfig cfg;
         cfg.seed = 99;
         cfg.instances = 8;
         return strategy_suite(cfg);
       }},
      {"f_bound", [] { return fbound_suite(); }},
      {"forest", [] { return forest_suite(300, 4, 500, 99); }},
      {"pendant", [] { return pendant_suite(5000, 5, 99); }},
      {"typicality", [] { return typicality_suite(5000, 3, 2000, 99, 3); }},
      {"degree", [] { return degree_band_suite(5000, 10, 99, 9); }},
      {"giant",
       [] {
         GiantSuiteConfig cfg;
         cfg.n = 5000;
         cfg.samples = 3;
         cfg.seed = 99;
         return giant_suite(cfg);
       }},
      {"witness", [] { return witness_suite(1000, 2.0, 3, 99, 1); }},
  };
  int identical = 0;
  std::string differing;
  for (auto& [name, run] : suites) {
    auto a = to_json(run()), b = to_json(run());
    if (a == b)
      ++identical;
    else
      differing += " " + name;
  }
  bool pass = identical == static_cast<int>(suites.size());
  return {pass, std::to_string(identical) + "/" + std::to_string(suites.size()) + " suites byte-identical" +
                    (differing.empty() ? "" : "; differ:" + differing)};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only, known;
  auto parse_list = [](const char* text, std::set<int>& into) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) into.insert(std::stoi(item));
  };
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) {
      parse_list(argv[++i], only);
    } else if (a == "--known-failures" && i + 1 < argc) {
      parse_list(argv[++i], known);
    } else if (a == "--out" && i + 1 < argc) {
      out_dir = argv[++i];
    } else {
      std::fprintf(stderr, "usage: acceptance [--only 1,2,...] [--out DIR] [--known-failures 7,8,...]\n");
      return 2;
    }
  }
  const std::vector<std::function<Line()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                       criterion5, criterion6, criterion7, criterion8,
                                                       criterion9, criterion10, criterion11};
  int failed = 0, tolerated = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    auto start = std::chrono::steady_clock::now();
    Line line;
    try {
      line = criteria[i]();
    } catch (const std::exception& e) {
      line = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool excused = !line.pass && known.count(id);
    failed += !line.pass && !excused;
    tolerated += excused;
    std::printf("criterion %2d: %s  %s  [%.1fs]%s\n", id, line.pass ? "PASS" : "FAIL", line.detail.c_str(), secs,
                excused ? "  (known failure)" : "");
    std::fflush(stdout);
  }
  std::printf("%d unexpected failure(s), %d known failure(s)\n", failed, tolerated);
  return failed ? 1 : 0;
}
