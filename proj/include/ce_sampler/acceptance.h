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

// The reproduction suite behind `ce_sampler reproduce` and the acceptance
// test binary.

#ifndef CE_SAMPLER_ACCEPTANCE_H_
#define CE_SAMPLER_ACCEPTANCE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "ce_sampler/game.h"
#include "ce_sampler/random.h"

namespace ce_sampler {

// Random instance for the exact checks.
struct BatteryInstance {
  Game game;
  JointDistribution p;
  Rational delta;
  Rational epsilon;
};

// rows, cols uniform in [2, 4]; integer utilities in [0, 9].
Game RandomGame(RandomStream& rng);

// A random convex combination of three CE-polytope vertices, each the
// optimum of a random integer objective.
JointDistribution RandomCePoint(const Game& game, RandomStream& rng);

// Instance i uses delta = {1/2, 1/8}[i % 2] and epsilon = {1/10, 1/100}[(i / 2) % 2].
std::vector<BatteryInstance> MakeBattery(std::uint64_t seed, int size);

struct AcceptanceOptions {
  std::string data_dir;
  std::uint64_t battery_seed = 0x5EED;
  int battery_size = 128;
  std::uint64_t monte_carlo_seed = 0xC0FFEE;
  std::uint64_t monte_carlo_trials = 200000;
  int jobs = 0;
  // Criterion names to run; empty runs all.
  std::vector<std::string> only;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

// Names in order: bos-equilibria, bos-fair-ce, coin-flip-ce, cheating-bound,
// claim1, css, epsilon-nash, honest-floor, monte-carlo, wlog.
const std::vector<std::string>& CriterionNames();

// Throws std::invalid_argument on an unknown name in `only`.
std::vector<CriterionResult> RunAcceptance(const AcceptanceOptions& options);

// "PASS  [5] claim1  (1.23 s)  detail"
std::string FormatResult(const CriterionResult& result);

}  // namespace ce_sampler

#endif  // CE_SAMPLER_ACCEPTANCE_H_
