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

// Seeded, parallel repetition of the extended game. Trial i draws from
// RandomStream(seed).Split(i), so results do not depend on the number of
// workers or on scheduling.

#ifndef CE_SAMPLER_MONTE_CARLO_H_
#define CE_SAMPLER_MONTE_CARLO_H_

#include <array>
#include <cstdint>
#include <vector>

#include "ce_sampler/emulation.h"
#include "ce_sampler/protocol.h"
#include "json.hpp"

namespace ce_sampler {

// requested > 0 wins; otherwise CE_SAMPLER_JOBS, otherwise the hardware
// concurrency. Always at least 1.
int ResolveJobs(int requested);

struct TrialStats {
  std::uint64_t trials = 0;
  // Count of each protocol output index (length 2^k).
  std::vector<std::uint64_t> leaf_counts;
  // Count of each settled (stage-two cell, rejected) pair; cell-major with
  // the accepted count at 2 * cell and the rejected count at 2 * cell + 1.
  std::vector<std::uint64_t> outcome_counts;
  std::uint64_t disagreements = 0;  // runs where the two outputs differed

  BitDistribution Empirical() const;
  // Exact mean payoff over the trials.
  std::array<Rational, 2> MeanPayoffs(const Game& game) const;
  // 95% normal-approximation half-widths of the mean payoffs.
  std::array<double, 2> PayoffHalfWidths(const Game& game) const;
  nlohmann::json ToJson(const Game& game) const;
};

TrialStats RunTrials(const ProtocolSession& session, const PartyBehavior& one,
                     const PartyBehavior& two, std::uint64_t trials,
                     std::uint64_t seed, int jobs = 0);

// Total variation distance between observed frequencies and an exact
// distribution over the same indices.
double TotalVariation(const std::vector<std::uint64_t>& counts,
                      const BitDistribution& exact);

}  // namespace ce_sampler

#endif  // CE_SAMPLER_MONTE_CARLO_H_
