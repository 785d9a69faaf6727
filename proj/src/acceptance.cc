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

#include "ce_sampler/acceptance.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "ce_sampler/adversary_analysis.h"
#include "ce_sampler/ce_solver.h"
#include "ce_sampler/emulation.h"
#include "ce_sampler/extended_game.h"
#include "ce_sampler/game_io.h"
#include "ce_sampler/lp.h"
#include "ce_sampler/monte_carlo.h"
#include "ce_sampler/protocol.h"

namespace ce_sampler {

namespace {

// Tolerances. Everything not listed here is compared exactly.
constexpr double kMonteCarloTvTolerance = 0.02;

std::string Fmt(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return buf;
}

std::string Describe(const BatteryInstance& inst, int index) {
  std::ostringstream out;
  out << "instance " << index << " (" << inst.game.rows() << "x" << inst.game.cols()
      << ", delta=" << ToString(inst.delta) << ", eps=" << ToString(inst.epsilon) << ")";
  return out.str();
}

struct Prepared {
  const BatteryInstance* instance;
  MultisetEmulation em;
  ProtocolConfig config;
};

class Suite {
 public:
  explicit Suite(const AcceptanceOptions& options) : options_(options) {}

  CriterionResult Run(int id, const std::string& name) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
      r.passed = Dispatch(name, &r.detail);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  }

 private:
  bool Dispatch(const std::string& name, std::string* detail) {
    if (name == "bos-equilibria") return BosEquilibria(detail);
    if (name == "bos-fair-ce") return BosFairCe(detail);
    if (name == "coin-flip-ce") return CoinFlipCe(detail);
    if (name == "cheating-bound") return CheatingBound(detail);
    if (name == "claim1") return Claim1(detail);
    if (name == "css") return Css(detail);
    if (name == "epsilon-nash") return EpsilonNash(detail);
    if (name == "honest-floor") return HonestFloor(detail);
    if (name == "monte-carlo") return MonteCarlo(detail);
    if (name == "wlog") return Wlog(detail);
    throw std::logic_error("unhandled criterion " + name);
  }

  Game Load(const std::string& file) const {
    return ParseGameFile(std::filesystem::path(options_.data_dir) / file);
  }

  JointDistribution BosFair() const {
    return JointDistribution(2, 2, {Rational(1, 2), 0, 0, Rational(1, 2)});
  }

  const std::vector<Prepared>& Battery() {
    if (!battery_) {
      instances_ = MakeBattery(options_.battery_seed, options_.battery_size);
      battery_.emplace();
      for (const auto& inst : instances_) {
        MultisetEmulation em = MultisetEmulation::Build(inst.p, inst.delta);
        ProtocolConfig config(inst.epsilon, inst.delta, em.k());
        battery_->push_back({&inst, std::move(em), std::move(config)});
      }
    }
    return *battery_;
  }

  std::string BatterySummary() {
    const auto& battery = Battery();
    int kmin = 64, kmax = 0;
    for (const auto& b : battery) {
      kmin = std::min(kmin, b.em.k());
      kmax = std::max(kmax, b.em.k());
    }
    return std::to_string(battery.size()) + " instances, k in [" + std::to_string(kmin) +
           ", " + std::to_string(kmax) + "]";
  }

  bool BosEquilibria(std::string* detail) {
    const Game bos = Load("bos.json");
    bool ok = true;
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        if (CheckPureNe(bos, {r, c}) != (r == c)) ok = false;
      }
    }
    const ProductDistribution mixed{{Rational(2, 3), Rational(1, 3)},
                                    {Rational(1, 3), Rational(2, 3)}};
    const bool mixed_ok = CheckMixedNe(bos, mixed, 0);
    const JointDistribution joint = mixed.ToJoint();
    const Rational u1 = ExpectedUtility(bos, joint, Player::kOne);
    const Rational u2 = ExpectedUtility(bos, joint, Player::kTwo);
    const Rational miss = joint({0, 1}) + joint({1, 0});
    ok = ok && mixed_ok && u1 == Rational(4, 3) && u2 == Rational(4, 3) &&
         miss == Rational(5, 9);
    *detail = "pure NE = {(A,A),(B,B)}; mixed NE " + std::string(mixed_ok ? "accepted" : "rejected") +
              ", payoffs (" + ToString(u1) + ", " + ToString(u2) + "), miscoordination " +
              ToString(miss);
    return ok;
  }

  bool BosFairCe(std::string* detail) {
    const Game bos = Load("bos.json");
    const JointDistribution p = SolveCe(bos, CeObjective::kMaxFair);
    const Rational u1 = ExpectedUtility(bos, p, Player::kOne);
    const Rational u2 = ExpectedUtility(bos, p, Player::kTwo);
    *detail = "max-fair CE probs [" + ToString(p.at(0)) + ", " + ToString(p.at(1)) + ", " +
              ToString(p.at(2)) + ", " + ToString(p.at(3)) + "], payoffs (" + ToString(u1) +
              ", " + ToString(u2) + ")";
    return p == BosFair() && u1 == 3 && u2 == 3;
  }

  // CE polytope of `game` cut by E[u1] = E[u2] and E[u1] + E[u2] = 1.
  static LpProblem FairTotalOne(const Game& game) {
    LpProblem lp = BuildCeLp(game, CeObjective::kFeasible);
    std::vector<Rational> diff = PayoffRow(game, Player::kOne, lp.num_vars);
    const std::vector<Rational> two = PayoffRow(game, Player::kTwo, lp.num_vars);
    for (int i = 0; i < lp.num_vars; ++i) diff[i] -= two[i];
    lp.Add(std::move(diff), Relation::kEqual, 0);
    lp.Add(TotalPayoffRow(game, lp.num_vars), Relation::kEqual, 1);
    return lp;
  }

  bool CoinFlipCe(std::string* detail) {
    const Game coin = Load("coinflip.json");
    // 2x2: the face is a polytope, so a single vertex means a single point.
    const auto vertices = EnumerateVertices(FairTotalOne(coin));
    const std::vector<Rational> expected{Rational(1, 2), 0, 0, Rational(1, 2)};
    const bool small_ok = vertices.size() == 1 && vertices[0] == expected;

    // 4x4 augmented game: every coordinate's range over the face collapses.
    const Game aug = AugmentedNormalForm(coin);
    const auto ranges = CoordinateRanges(FairTotalOne(aug));
    std::vector<Rational> aug_expected(aug.NumJoint(), Rational(0));
    const int n = coin.rows();
    aug_expected[aug.Flat({AugmentedIndex(0, CheckMove::kAccept, n),
                           AugmentedIndex(0, CheckMove::kAccept, n)})] = Rational(1, 2);
    aug_expected[aug.Flat({AugmentedIndex(1, CheckMove::kAccept, n),
                           AugmentedIndex(1, CheckMove::kAccept, n)})] = Rational(1, 2);
    bool aug_ok = ranges.size() == aug_expected.size();
    for (std::size_t i = 0; aug_ok && i < ranges.size(); ++i) {
      aug_ok = ranges[i].min == aug_expected[i] && ranges[i].max == aug_expected[i];
    }
    *detail = std::to_string(vertices.size()) + " fair total-1 vertex in the 2x2 game" +
              (small_ok ? " (1/2 on (0,0), 1/2 on (1,1))" : "") + "; augmented 4x4 face " +
              (aug_ok ? "is the single point 1/2 (0A,0A) + 1/2 (1A,1A)" : "is not that point");
    return small_ok && aug_ok;
  }

  bool CheatingBound(std::string* detail) {
    const Game bos = Load("bos.json");
    const MultisetEmulation em = MultisetEmulation::Build(BosFair(), Rational(1, 2));
    const RoundTree tree(em, bos);
    bool ok = em.k() == 3;
    std::string values;
    for (const Rational& bias : {Rational(0), Rational(1, 60), Rational(1, 600),
                                 Rational(1, 10), Rational(1, 4)}) {
      const WorstCase wc = ComputeWorstCaseQ(tree, bias, Player::kOne);
      const Rational expected = 3 + 2 * bias;
      BitDistribution q = BitDistribution::Zero(3);
      q.probs[0b000] = Rational(1, 2) + bias;
      q.probs[0b100] = Rational(1, 2) - bias;
      // Independent route: replay the returned policy against an honest party.
      ProtocolSession session(bos, BosFair(), bias == 0 ? Rational(1, 10) : Rational(6 * bias),
                              Rational(1, 2));
      const PolicyBehavior adversary(wc.policy);
      const HonestBehavior honest;
      const Rational replay = ExactExtendedPayoffs(session, adversary, honest)[0];
      ok = ok && wc.value == expected && wc.q == q && replay == expected;
      if (!values.empty()) values += ", ";
      values += "eps'=" + ToString(bias) + " -> " + ToString(wc.value);
    }
    *detail = "dishonest player 1 payoff " + values;
    return ok;
  }

  bool Claim1(std::string* detail) {
    int failures = 0;
    double worst = 0.0;
    std::string first;
    for (std::size_t i = 0; i < Battery().size(); ++i) {
      const Prepared& b = Battery()[i];
      if (!CheckCe(b.instance->game, b.instance->p)) {
        ++failures;
        if (first.empty()) first = Describe(*b.instance, i) + ": p is not a CE";
        continue;
      }
      for (Player j : {Player::kOne, Player::kTwo}) {
        const Claim1Report r = VerifyClaim1(b.em, b.instance->game, b.instance->epsilon, j);
        worst = std::max(worst, ToDouble(r.l1_per_round.back() / r.epsilon));
        if (!r.ok()) {
          ++failures;
          if (first.empty()) first = Describe(*b.instance, i) + ", dishonest " + std::to_string(Number(j));
        }
      }
    }
    *detail = BatterySummary() + ", both players; max ||q - p_h|| / eps = " + Fmt(worst) +
              (failures ? "; " + std::to_string(failures) + " failures, first: " + first : "");
    return failures == 0;
  }

  bool Css(std::string* detail) {
    int failures = 0;
    std::string first;
    for (std::size_t i = 0; i < Battery().size(); ++i) {
      const Prepared& b = Battery()[i];
      const CssReport r = VerifyCssProperties(b.em, b.instance->game, b.config);
      if (!r.ok()) {
        ++failures;
        if (first.empty()) first = Describe(*b.instance, i) + ": " + r.ToJson().dump();
      }
    }
    *detail = BatterySummary() + ", normalized games" +
              (failures ? "; " + std::to_string(failures) + " failures, first: " + first : "");
    return failures == 0;
  }

  const std::vector<EquilibriumReport>& Equilibria() {
    if (!equilibria_) {
      equilibria_.emplace();
      for (const Prepared& b : Battery()) {
        equilibria_->push_back(VerifyEquilibrium(b.em, b.instance->game, b.config));
      }
    }
    return *equilibria_;
  }

  bool EpsilonNash(std::string* detail) {
    int failures = 0;
    double worst = 0.0;
    std::string first;
    for (std::size_t i = 0; i < Battery().size(); ++i) {
      const EquilibriumReport& r = Equilibria()[i];
      const Rational& eps = Battery()[i].instance->epsilon;
      for (int j = 0; j < 2; ++j) {
        const Rational gain = Max(r.deviation_truthful[j], r.deviation_arbitrary[j]) -
                              r.honest_payoff[j];
        worst = std::max(worst, ToDouble(gain / eps));
      }
      if (!r.nash_ok()) {
        ++failures;
        if (first.empty()) first = Describe(*Battery()[i].instance, i);
      }
    }
    *detail = BatterySummary() + ", both players; max gain / eps = " + Fmt(worst) +
              (failures ? "; " + std::to_string(failures) + " failures, first: " + first : "");
    return failures == 0;
  }

  bool HonestFloor(std::string* detail) {
    int failures = 0;
    int spiteful_liar = 0;
    std::string first;
    for (std::size_t i = 0; i < Battery().size(); ++i) {
      const EquilibriumReport& r = Equilibria()[i];
      const Prepared& b = Battery()[i];
      const RoundTree tree(b.em, Normalize(b.instance->game));
      if (!r.floor_ok()) {
        ++failures;
        if (first.empty()) first = Describe(*b.instance, i);
      }
      for (Player j : {Player::kOne, Player::kTwo}) {
        const Rational floor = tree.HonestValueAt(1, Other(j)) - b.instance->epsilon;
        if (r.honest_vs_spiteful_arbitrary[Index(j)] < floor) ++spiteful_liar;
      }
    }
    *detail = BatterySummary() +
              ", self-interested adversaries (both announcement classes) and truthful "
              "spiteful adversary" +
              (failures ? "; " + std::to_string(failures) + " failures, first: " + first : "") +
              "; not gated: a spiteful adversary that lies breaks the floor in " +
              std::to_string(spiteful_liar) + "/" + std::to_string(2 * Battery().size()) +
              " cases";
    return failures == 0;
  }

  bool MonteCarlo(std::string* detail) {
    const Game bos = Load("bos.json");
    const ProtocolSession session(bos, BosFair(), Rational(1, 10), Rational(1, 2));
    const HonestBehavior honest;
    const GreedyBehavior greedy;

    const TrialStats hh = RunTrials(session, honest, honest, options_.monte_carlo_trials,
                                    options_.monte_carlo_seed, options_.jobs);
    const double tv_honest = TotalVariation(hh.leaf_counts, ComputePh(session.tree()));

    const TrialStats gh = RunTrials(session, greedy, honest, options_.monte_carlo_trials,
                                    options_.monte_carlo_seed + 1, options_.jobs);
    const BitDistribution q =
        ComputeWorstCaseQ(session.tree(), session.config().per_round_bias(), Player::kOne).q;
    const double tv_greedy = TotalVariation(gh.leaf_counts, q);

    *detail = std::to_string(options_.monte_carlo_trials) + " trials each, k=" +
              std::to_string(session.config().k()) + "; TV honest/p_h = " + Fmt(tv_honest) +
              ", TV greedy/q = " + Fmt(tv_greedy) + " (tolerance " + Fmt(kMonteCarloTvTolerance) + ")";
    return hh.disagreements == 0 && gh.disagreements == 0 &&
           tv_honest <= kMonteCarloTvTolerance && tv_greedy <= kMonteCarloTvTolerance;
  }

  bool Wlog(std::string* detail) {
    int failures = 0;
    std::string cases;
    for (std::size_t i = 0; i < Battery().size(); ++i) {
      const Prepared& b = Battery()[i];
      const WlogReport r = CompareAnnouncementClasses(b.em, b.instance->game, b.instance->epsilon);
      for (int j = 0; j < 2; ++j) {
        if (r.truthful[j] == r.arbitrary[j]) continue;
        ++failures;
        cases += "; " + Describe(*b.instance, i) + ", dishonest " + std::to_string(j + 1) +
                 ": truthful " + Fmt(ToDouble(r.truthful[j]), 8) + " < arbitrary " +
                 Fmt(ToDouble(r.arbitrary[j]), 8);
      }
    }
    *detail = BatterySummary() + ", both players; " + std::to_string(failures) +
              " counterexamples" + cases;
    return failures == 0;
  }

  AcceptanceOptions options_;
  std::vector<BatteryInstance> instances_;
  std::optional<std::vector<Prepared>> battery_;
  std::optional<std::vector<EquilibriumReport>> equilibria_;
};

}  // namespace

Game RandomGame(RandomStream& rng) {
  const int rows = 2 + static_cast<int>(rng.NextBelow(3));
  const int cols = 2 + static_cast<int>(rng.NextBelow(3));
  std::vector<std::vector<Rational>> u1(rows, std::vector<Rational>(cols));
  std::vector<std::vector<Rational>> u2 = u1;
  for (auto* u : {&u1, &u2}) {
    for (auto& row : *u) {
      for (auto& x : row) x = static_cast<long>(rng.NextBelow(10));
    }
  }
  return Game(std::move(u1), std::move(u2));
}

JointDistribution RandomCePoint(const Game& game, RandomStream& rng) {
  const int cells = game.NumJoint();
  std::vector<Rational> mix(cells, Rational(0));
  std::vector<Rational> weights;
  Rational total = 0;
  for (int v = 0; v < 3; ++v) {
    weights.emplace_back(static_cast<long>(1 + rng.NextBelow(10)));
    total += weights.back();
  }
  for (int v = 0; v < 3; ++v) {
    LpProblem lp = BuildCeLp(game, CeObjective::kFeasible);
    lp.objective.assign(lp.num_vars, Rational(0));
    for (int i = 0; i < cells; ++i) {
      lp.objective[i] = static_cast<long>(rng.NextBelow(11)) - 5;
    }
    const LpSolution sol = SimplexSolve(lp);
    if (sol.status != LpStatus::kOptimal) {
      throw std::logic_error("CE polytope LP not optimal: " + ToString(sol.status));
    }
    for (int i = 0; i < cells; ++i) mix[i] += weights[v] / total * sol.x[i];
  }
  return JointDistribution(game.rows(), game.cols(), std::move(mix));
}

std::vector<BatteryInstance> MakeBattery(std::uint64_t seed, int size) {
  const RandomStream root(seed);
  std::vector<BatteryInstance> out;
  out.reserve(size);
  for (int i = 0; i < size; ++i) {
    RandomStream rng = root.Split(i);
    Game game = RandomGame(rng);
    JointDistribution p = RandomCePoint(game, rng);
    out.push_back({std::move(game), std::move(p),
                   i % 2 == 0 ? Rational(1, 2) : Rational(1, 8),
                   (i / 2) % 2 == 0 ? Rational(1, 10) : Rational(1, 100)});
  }
  return out;
}

const std::vector<std::string>& CriterionNames() {
  static const std::vector<std::string> names{
      "bos-equilibria", "bos-fair-ce", "coin-flip-ce", "cheating-bound", "claim1",
      "css",            "epsilon-nash", "honest-floor", "monte-carlo",    "wlog"};
  return names;
}

std::vector<CriterionResult> RunAcceptance(const AcceptanceOptions& options) {
  const auto& names = CriterionNames();
  for (const auto& n : options.only) {
    if (std::find(names.begin(), names.end(), n) == names.end()) {
      throw std::invalid_argument("unknown criterion \"" + n + "\"");
    }
  }
  Suite suite(options);
  std::vector<CriterionResult> results;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!options.only.empty() &&
        std::find(options.only.begin(), options.only.end(), names[i]) == options.only.end()) {
      continue;
    }
    results.push_back(suite.Run(static_cast<int>(i) + 1, names[i]));
  }
  return results;
}

std::string FormatResult(const CriterionResult& r) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s  [%d] %s  (%.2f s)  ", r.passed ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds);
  return buf + r.detail;
}

}  // namespace ce_sampler
