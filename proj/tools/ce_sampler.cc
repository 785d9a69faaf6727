// Copyright 2026 The ce_sampler Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: solve-ce, run, play, analyze, reproduce.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ce_sampler/acceptance.h"
#include "ce_sampler/adversary_analysis.h"
#include "ce_sampler/ce_solver.h"
#include "ce_sampler/extended_game.h"
#include "ce_sampler/game_io.h"
#include "ce_sampler/monte_carlo.h"
#include "ce_sampler/protocol.h"

namespace {

using nlohmann::json;
using namespace ce_sampler;

// Flags shared by the subcommands that build a protocol session.
struct SessionFlags {
  std::string game_path;
  std::string dist_path;
  std::string objective = "max-fair";
  std::string epsilon = "1/10";
  std::string delta = "1/8";
  std::string rule = "honest-continuation";
};

void AddSessionFlags(CLI::App* cmd, SessionFlags* f) {
  cmd->add_option("--game", f->game_path, "Game JSON file")->required();
  cmd->add_option("--dist", f->dist_path,
                  "Distribution JSON file; solved from --objective when omitted");
  cmd->add_option("--objective", f->objective, "max-fair | max-total-lex | feasible")
      ->capture_default_str();
  cmd->add_option("--epsilon", f->epsilon, "Security parameter")->capture_default_str();
  cmd->add_option("--delta", f->delta, "Emulation precision")->capture_default_str();
  cmd->add_option("--rule", f->rule,
                  "Preference rule: honest-continuation | emulated-conditional")
      ->capture_default_str();
}

Rational RequireRational(const std::string& text, const std::string& flag) {
  auto v = ParseRational(text);
  if (!v) throw CLI::ValidationError(flag, "not a rational number: " + text);
  return *v;
}

CeObjective RequireObjective(const std::string& name) {
  auto o = ParseCeObjective(name);
  if (!o) throw CLI::ValidationError("--objective", "unknown objective " + name);
  return *o;
}

PreferenceRule RequireRule(const std::string& name) {
  if (name == "honest-continuation") return PreferenceRule::kHonestContinuation;
  if (name == "emulated-conditional") return PreferenceRule::kEmulatedConditional;
  throw CLI::ValidationError("--rule", "unknown rule " + name);
}

struct Setup {
  Game game;
  JointDistribution p;
  Rational epsilon;
  Rational delta;
  PreferenceRule rule;
};

Setup Load(const SessionFlags& f) {
  Game game = ParseGameFile(f.game_path);
  JointDistribution p = f.dist_path.empty()
                            ? SolveCe(game, RequireObjective(f.objective))
                            : ParseDistributionFile(f.dist_path, game);
  return {std::move(game), std::move(p), RequireRational(f.epsilon, "--epsilon"),
          RequireRational(f.delta, "--delta"), RequireRule(f.rule)};
}

json SessionJson(const SessionFlags& f, const ProtocolSession& s) {
  json out = s.config().ToJson();
  out["game"] = f.game_path;
  out["distribution"] = DistributionToJson(s.p());
  out["distribution_source"] = f.dist_path.empty() ? "objective:" + f.objective : f.dist_path;
  out["p_is_ce"] = s.p_is_ce();
  out["emulation"] = s.emulation().ToJson();
  return out;
}

std::uint64_t ResolveSeed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  const std::uint64_t fresh = (std::uint64_t{rd()} << 32) | rd();
  std::cerr << "seed: " << fresh << std::endl;
  return fresh;
}

json BitDistributionJson(const BitDistribution& d) {
  json out = json::object();
  for (std::size_t i = 0; i < d.probs.size(); ++i) {
    if (d.probs[i] == 0) continue;
    std::string key;
    for (int b = d.bits - 1; b >= 0; --b) key.push_back((i >> b) & 1 ? '1' : '0');
    out[key] = ToString(d.probs[i]);
  }
  return out;
}

void Emit(const json& report, const std::string& path) {
  if (path.empty()) {
    std::cout << report.dump(2) << std::endl;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << report.dump(2) << '\n';
}

void WriteTranscripts(const std::string& path, const std::vector<Transcript>& runs) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    for (json line : runs[i].ToJsonLines()) {
      line["trial"] = i;
      out << line.dump() << '\n';
    }
  }
}

struct TrialFlags {
  std::string party1 = "honest";
  std::string party2 = "honest";
  std::uint64_t trials = 1000;
  std::optional<std::uint64_t> seed;
  int jobs = 0;
  std::string transcript;
  std::uint64_t transcript_limit = 1;
  std::string report;
};

void AddTrialFlags(CLI::App* cmd, TrialFlags* f) {
  cmd->add_option("--party1", f->party1, "honest | greedy | deviate | script:<file>")
      ->capture_default_str();
  cmd->add_option("--party2", f->party2, "honest | greedy | deviate | script:<file>")
      ->capture_default_str();
  cmd->add_option("--trials", f->trials, "Number of runs")->capture_default_str();
  cmd->add_option("--seed", f->seed, "Random seed; a fresh one is printed if omitted");
  cmd->add_option("--jobs", f->jobs, "Worker threads (default: CE_SAMPLER_JOBS or all cores)");
  cmd->add_option("--transcript", f->transcript, "Write JSON-lines transcripts here");
  cmd->add_option("--transcript-limit", f->transcript_limit,
                  "Number of runs to include in the transcript file")
      ->capture_default_str();
  cmd->add_option("--report", f->report, "Write the JSON report here instead of stdout");
}

int CmdSolveCe(const SessionFlags& f, const std::string& out) {
  const Game game = ParseGameFile(f.game_path);
  const JointDistribution p = SolveCe(game, RequireObjective(f.objective));
  Emit(DistributionToJson(p), out);
  return 0;
}

int CmdRun(const SessionFlags& f, const TrialFlags& t) {
  Setup s = Load(f);
  const ProtocolSession session(s.game, s.p, s.epsilon, s.delta, s.rule);
  const auto one = MakeBehavior(t.party1);
  const auto two = MakeBehavior(t.party2);
  const std::uint64_t seed = ResolveSeed(t.seed);

  if (!t.transcript.empty()) {
    std::vector<Transcript> runs;
    for (std::uint64_t i = 0; i < std::min(t.transcript_limit, t.trials); ++i) {
      RandomStream rng = RandomStream(seed).Split(i);
      runs.push_back(session.Run(*one, *two, rng));
    }
    WriteTranscripts(t.transcript, runs);
  }
  const TrialStats stats = RunTrials(session, *one, *two, t.trials, seed, t.jobs);
  const BitDistribution exact = session.ExactOutputDistribution(*one, *two);
  json report{{"command", "run"},
              {"seed", seed},
              {"config", SessionJson(f, session)},
              {"parties", {t.party1, t.party2}},
              {"empirical", stats.ToJson(session.game())},
              {"exact_output_distribution", BitDistributionJson(exact)},
              {"p_h", BitDistributionJson(ComputePh(session.tree()))},
              {"total_variation", t.trials ? TotalVariation(stats.leaf_counts, exact) : 0.0}};
  Emit(report, t.report);
  return 0;
}

int CmdPlay(const SessionFlags& f, const TrialFlags& t) {
  Setup s = Load(f);
  const ProtocolSession session(s.game, s.p, s.epsilon, s.delta, s.rule);
  const auto one = MakeBehavior(t.party1);
  const auto two = MakeBehavior(t.party2);
  const std::uint64_t seed = ResolveSeed(t.seed);

  if (!t.transcript.empty()) {
    std::vector<Transcript> runs;
    for (std::uint64_t i = 0; i < std::min(t.transcript_limit, t.trials); ++i) {
      RandomStream rng = RandomStream(seed).Split(i);
      runs.push_back(PlayExtendedGame(session, *one, *two, rng).transcript);
    }
    WriteTranscripts(t.transcript, runs);
  }
  const TrialStats stats = RunTrials(session, *one, *two, t.trials, seed, t.jobs);
  const auto exact = ExactExtendedPayoffs(session, *one, *two);
  const EquilibriumReport eq =
      VerifyEquilibrium(session.emulation(), session.game(), session.config());
  json report{{"command", "play"},
              {"seed", seed},
              {"config", SessionJson(f, session)},
              {"parties", {t.party1, t.party2}},
              {"empirical", stats.ToJson(session.game())},
              {"exact_payoffs",
               {{{"exact", ToString(exact[0])}, {"float", ToDouble(exact[0])}},
                {{"exact", ToString(exact[1])}, {"float", ToDouble(exact[1])}}}},
              {"equilibrium_normalized", eq.ToJson()}};
  Emit(report, t.report);
  return 0;
}

int CmdAnalyze(const SessionFlags& f, int dishonest, const std::string& report_path) {
  Setup s = Load(f);
  const ProtocolSession session(s.game, s.p, s.epsilon, s.delta, s.rule);
  const Player j = dishonest == 1 ? Player::kOne : Player::kTwo;
  const MultisetEmulation& em = session.emulation();
  const Claim1Report claim1 = VerifyClaim1(em, session.game(), s.epsilon, j, s.rule);
  const CssReport css = VerifyCssProperties(em, session.game(), session.config());
  const EquilibriumReport eq = VerifyEquilibrium(em, session.game(), session.config());
  const WlogReport wlog = CompareAnnouncementClasses(em, session.game(), s.epsilon, s.rule);
  const WorstCase worst = ComputeWorstCaseQ(RoundTree(em, Normalize(session.game()), s.rule),
                                            session.config().per_round_bias(), j);
  const bool ok = claim1.ok() && css.ok() && eq.nash_ok() && eq.floor_ok() &&
                  wlog.holds();
  json report{{"command", "analyze"},
              {"config", SessionJson(f, session)},
              {"dishonest", dishonest},
              {"claim1", claim1.ToJson()},
              {"css", css.ToJson()},
              {"equilibrium", eq.ToJson()},
              {"wlog",
               {{"truthful", {ToString(wlog.truthful[0]), ToString(wlog.truthful[1])}},
                {"arbitrary", {ToString(wlog.arbitrary[0]), ToString(wlog.arbitrary[1])}},
                {"holds", wlog.holds()}}},
              {"worst_case_policy", worst.policy.ToJson()},
              {"ok", ok}};
  Emit(report, report_path);
  return ok ? 0 : 1;
}

int CmdReproduce(const AcceptanceOptions& options) {
  int failed = 0;
  for (const auto& r : RunAcceptance(options)) {
    std::cout << FormatResult(r) << std::endl;
    if (!r.passed) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlated strategy sampling without a mediator"};
  app.require_subcommand(1);

  SessionFlags solve_flags;
  std::string solve_out;
  auto* solve = app.add_subcommand("solve-ce", "Solve for a correlated equilibrium");
  solve->add_option("--game", solve_flags.game_path, "Game JSON file")->required();
  solve->add_option("--objective", solve_flags.objective,
                    "max-fair | max-total-lex | feasible")
      ->capture_default_str();
  solve->add_option("--out", solve_out, "Write the distribution here instead of stdout");

  SessionFlags run_flags;
  TrialFlags run_trials;
  auto* run = app.add_subcommand("run", "Run the sampling protocol");
  AddSessionFlags(run, &run_flags);
  AddTrialFlags(run, &run_trials);

  SessionFlags play_flags;
  TrialFlags play_trials;
  auto* play = app.add_subcommand("play", "Play the extended game");
  AddSessionFlags(play, &play_flags);
  AddTrialFlags(play, &play_trials);

  SessionFlags analyze_flags;
  int dishonest = 1;
  std::string analyze_report;
  auto* analyze = app.add_subcommand("analyze", "Exact worst-case analysis");
  AddSessionFlags(analyze, &analyze_flags);
  analyze->add_option("--dishonest", dishonest, "Dishonest player")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  analyze->add_option("--report", analyze_report, "Write the JSON report here");

  AcceptanceOptions acceptance;
  acceptance.data_dir = CE_SAMPLER_DATA_DIR;
  auto* reproduce = app.add_subcommand("reproduce", "Run the acceptance suite");
  reproduce->add_option("--only", acceptance.only, "Criteria to run")
      ->check(CLI::IsMember(CriterionNames()));
  reproduce->add_option("--data-dir", acceptance.data_dir, "Directory with bos.json etc.")
      ->capture_default_str();
  reproduce->add_option("--jobs", acceptance.jobs, "Worker threads for the Monte Carlo check");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return CmdSolveCe(solve_flags, solve_out);
    if (*run) return CmdRun(run_flags, run_trials);
    if (*play) return CmdPlay(play_flags, play_trials);
    if (*analyze) return CmdAnalyze(analyze_flags, dishonest, analyze_report);
    if (*reproduce) return CmdReproduce(acceptance);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
  return 0;
}
