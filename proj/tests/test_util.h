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

// Small helpers shared by the unit tests.

#ifndef CE_SAMPLER_TESTS_TEST_UTIL_H_
#define CE_SAMPLER_TESTS_TEST_UTIL_H_

#include <string>
#include <vector>

#include "ce_sampler/game.h"
#include "ce_sampler/game_io.h"
#include "ce_sampler/random.h"

namespace ce_sampler::testing {

inline std::string DataPath(const std::string& file) {
  return std::string(CE_SAMPLER_DATA_DIR) + "/" + file;
}

inline Game Bos() { return ParseGameFile(DataPath("bos.json")); }
inline Game CoinFlip() { return ParseGameFile(DataPath("coinflip.json")); }

inline JointDistribution BosFair() {
  return JointDistribution(2, 2, {Rational(1, 2), 0, 0, Rational(1, 2)});
}

inline Game MakeGame(const std::vector<std::vector<long>>& u1,
                     const std::vector<std::vector<long>>& u2) {
  auto convert = [](const std::vector<std::vector<long>>& m) {
    std::vector<std::vector<Rational>> out;
    for (const auto& row : m) {
      out.emplace_back();
      for (long x : row) out.back().emplace_back(x);
    }
    return out;
  };
  return Game(convert(u1), convert(u2));
}

// A random distribution with small-denominator rational entries.
inline JointDistribution RandomDistribution(int rows, int cols, RandomStream& rng) {
  std::vector<Rational> w(rows * cols);
  Rational total = 0;
  for (auto& x : w) {
    x = static_cast<long>(rng.NextBelow(5));
    total += x;
  }
  if (total == 0) {
    w[0] = 1;
    total = 1;
  }
  for (auto& x : w) x /= total;
  return JointDistribution(rows, cols, std::move(w));
}

}  // namespace ce_sampler::testing

#endif  // CE_SAMPLER_TESTS_TEST_UTIL_H_
