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

#include <cmath>
#include <cstdlib>

#include "ce_sampler/acceptance.h"
#include "ce_sampler/adversary_analysis.h"
#include "ce_sampler/monte_carlo.h"
#include "doctest.h"
#include "test_util.h"

namespace ce_sampler {
namespace {

using testing::Bos;
using testing::BosFair;

TEST_CASE("job count resolution") {
  CHECK(ResolveJobs(3) == 3);
  setenv("CE_SAMPLER_JOBS", "2", 1);
  CHECK(ResolveJobs(0) == 2);
  setenv("CE_SAMPLER_JOBS", "zero", 1);
  CHECK_THROWS_AS(ResolveJobs(0), std::invalid_argument);
  unsetenv("CE_SAMPLER_JOBS");
  CHECK(ResolveJobs(0) >= 1);
}

TEST_CASE("results do not depend on the number of workers") {
  const ProtocolSession session(Bos(), BosFair(), Rational(1, 10), Rational(1, 2));
  const HonestBehavior honest;
  const GreedyBehavior greedy;
  const TrialStats a = RunTrials(session, greedy, honest, 3000, 17, 1);
  const TrialStats b = RunTrials(session, greedy, honest, 3000, 17, 4);
  CHECK(a.leaf_counts == b.leaf_counts);
  CHECK(a.outcome_counts == b.outcome_counts);
  CHECK(a.ToJson(session.game()) == b.ToJson(session.game()));
  const TrialStats c = RunTrials(session, greedy, honest, 3000, 18, 1);
  CHECK(a.leaf_counts != c.leaf_counts);
  CHECK(a.trials == 3000);
}

TEST_CASE("empirical payoffs") {
  const ProtocolSession session(Bos(), BosFair(), Rational(1, 10), Rational(1, 2));
  const HonestBehavior honest;
  const TrialStats s = RunTrials(session, honest, honest, 20000, 19, 2);
  const auto mean = s.MeanPayoffs(session.game());
  const auto half = s.PayoffHalfWidths(session.game());
  // Payoffs are 4 or 2 with equal odds: standard deviation 1.
  CHECK(std::abs(half[0] - 1.96 / std::sqrt(20000.0)) < 1e-3);
  CHECK(std::abs(ToDouble(mean[0]) - 3) < 3 * half[0]);
  CHECK(mean[0] + mean[1] == 6);
  CHECK(s.disagreements == 0);
  CHECK(s.Empirical().Total() == 1);
  CHECK_THROWS_AS(TotalVariation({1, 2}, BitDistribution::Zero(3)), std::invalid_argument);
}

// Empirical L1 distance to p_h stays below 4 sqrt(2^k / trials).
TEST_CASE("honest runs agree with p_h") {
  const HonestBehavior honest;
  const std::uint64_t trials = 200000;
  int checked = 0;
  for (const auto& inst : MakeBattery(61, 40)) {
    if (inst.delta != Rational(1, 2) || inst.game.NumJoint() > 8) continue;
    if (++checked > 2) break;
    const ProtocolSession session(inst.game, inst.p, inst.epsilon, inst.delta);
    REQUIRE(session.config().k() <= 4);
    const TrialStats s = RunTrials(session, honest, honest, trials, 1000 + checked);
    const double l1 = 2 * TotalVariation(s.leaf_counts, ComputePh(session.tree()));
    CHECK(l1 <= 4 * std::sqrt(std::ldexp(1.0, session.config().k()) / trials));
  }
  CHECK(checked >= 2);
}

}  // namespace
}  // namespace ce_sampler
