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

#include "ce_sampler/monte_carlo.h"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

#include "ce_sampler/extended_game.h"
#include "ce_sampler/random.h"

namespace ce_sampler {

int ResolveJobs(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CE_SAMPLER_JOBS")) {
    try {
      const int jobs = std::stoi(env);
      if (jobs > 0) return jobs;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument(std::string("CE_SAMPLER_JOBS must be a positive integer, got \"") +
                                env + "\"");
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

BitDistribution TrialStats::Empirical() const {
  BitDistribution d;
  d.probs.reserve(leaf_counts.size());
  for (auto c : leaf_counts) d.probs.emplace_back(Rational(c, trials));
  for (std::uint64_t n = leaf_counts.size(); n > 1; n >>= 1) ++d.bits;
  for (auto& p : d.probs) p.canonicalize();
  return d;
}

namespace {

Rational OutcomePayoff(const Game& game, std::size_t slot, Player p) {
  if (slot % 2 == 1) return 0;
  return game.Utility(p, game.Unflat(static_cast<int>(slot / 2)));
}

}  // namespace

std::array<Rational, 2> TrialStats::MeanPayoffs(const Game& game) const {
  std::array<Rational, 2> mean{Rational(0), Rational(0)};
  if (trials == 0) return mean;
  for (std::size_t slot = 0; slot < outcome_counts.size(); ++slot) {
    if (outcome_counts[slot] == 0) continue;
    for (Player p : {Player::kOne, Player::kTwo}) {
      mean[Index(p)] += OutcomePayoff(game, slot, p) * outcome_counts[slot];
    }
  }
  for (auto& m : mean) m /= trials;
  return mean;
}

std::array<double, 2> TrialStats::PayoffHalfWidths(const Game& game) const {
  std::array<double, 2> out{0.0, 0.0};
  if (trials < 2) return out;
  const auto mean = MeanPayoffs(game);
  for (Player p : {Player::kOne, Player::kTwo}) {
    const double mu = ToDouble(mean[Index(p)]);
    double ss = 0.0;
    for (std::size_t slot = 0; slot < outcome_counts.size(); ++slot) {
      const double x = ToDouble(OutcomePayoff(game, slot, p)) - mu;
      ss += x * x * static_cast<double>(outcome_counts[slot]);
    }
    const double var = ss / static_cast<double>(trials - 1);
    out[Index(p)] = 1.96 * std::sqrt(var / static_cast<double>(trials));
  }
  return out;
}

nlohmann::json TrialStats::ToJson(const Game& game) const {
  using nlohmann::json;
  const auto mean = MeanPayoffs(game);
  const auto half = PayoffHalfWidths(game);
  json leaves = json::object();
  const BitDistribution emp = Empirical();
  for (std::size_t i = 0; i < leaf_counts.size(); ++i) {
    if (leaf_counts[i] == 0) continue;
    std::string key;
    for (int b = emp.bits - 1; b >= 0; --b) key.push_back((i >> b) & 1 ? '1' : '0');
    leaves[key] = leaf_counts[i];
  }
  json payoffs = json::array();
  for (int i = 0; i < 2; ++i) {
    payoffs.push_back({{"mean", ToString(mean[i])},
                       {"mean_float", ToDouble(mean[i])},
                       {"half_width_95", half[i]}});
  }
  std::uint64_t rejected = 0;
  for (std::size_t slot = 1; slot < outcome_counts.size(); slot += 2) {
    rejected += outcome_counts[slot];
  }
  return json{{"trials", trials},
              {"leaf_counts", leaves},
              {"rejected", rejected},
              {"disagreements", disagreements},
              {"payoffs", payoffs}};
}

TrialStats RunTrials(const ProtocolSession& session, const PartyBehavior& one,
                     const PartyBehavior& two, std::uint64_t trials,
                     std::uint64_t seed, int jobs) {
  const int workers = static_cast<int>(
      std::min<std::uint64_t>(ResolveJobs(jobs), std::max<std::uint64_t>(trials, 1)));
  const std::size_t leaves = std::size_t{1} << session.config().k();
  const std::size_t slots = 2 * static_cast<std::size_t>(session.game().NumJoint());
  const RandomStream root(seed);

  std::vector<TrialStats> partial(workers);
  auto work = [&](int w) {
    TrialStats& s = partial[w];
    s.leaf_counts.assign(leaves, 0);
    s.outcome_counts.assign(slots, 0);
    for (std::uint64_t i = w; i < trials; i += workers) {
      RandomStream rng = root.Split(i);
      ExtendedPlay play = PlayExtendedGame(session, one, two, rng);
      const Transcript& t = play.transcript;
      if (t.ell[0] != t.ell[1]) ++s.disagreements;
      ++s.leaf_counts[t.ell[0]];
      const bool rejected = play.outcome.checks[0] == CheckMove::kReject ||
                            play.outcome.checks[1] == CheckMove::kReject;
      ++s.outcome_counts[2 * session.game().Flat(play.outcome.stage2) + (rejected ? 1 : 0)];
      ++s.trials;
    }
  };
  std::vector<std::thread> threads;
  for (int w = 1; w < workers; ++w) threads.emplace_back(work, w);
  work(0);
  for (auto& t : threads) t.join();

  TrialStats total;
  total.leaf_counts.assign(leaves, 0);
  total.outcome_counts.assign(slots, 0);
  for (const TrialStats& s : partial) {
    total.trials += s.trials;
    total.disagreements += s.disagreements;
    for (std::size_t i = 0; i < leaves; ++i) total.leaf_counts[i] += s.leaf_counts[i];
    for (std::size_t i = 0; i < slots; ++i) total.outcome_counts[i] += s.outcome_counts[i];
  }
  return total;
}

double TotalVariation(const std::vector<std::uint64_t>& counts,
                      const BitDistribution& exact) {
  if (counts.size() != exact.probs.size()) {
    throw std::invalid_argument("count and distribution sizes differ");
  }
  std::uint64_t n = 0;
  for (auto c : counts) n += c;
  if (n == 0) throw std::invalid_argument("no trials");
  double sum = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    sum += std::abs(static_cast<double>(counts[i]) / static_cast<double>(n) -
                    ToDouble(exact.probs[i]));
  }
  return sum / 2;
}

}  // namespace ce_sampler
