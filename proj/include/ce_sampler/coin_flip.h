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

// Ideal weak coin flip WCF(a, bias).
//
// Alice wins when the coin lands on `alice_wins_on`, Bob wins otherwise.
// With both parties honest each wins with probability exactly 1/2. A single
// cheater may ask for any winning probability w; the functionality grants
// min(w, 1/2 + bias). Asking for w = 0 loses with certainty. Nobody aborts,
// so both parties always receive the same bit.

#ifndef CE_SAMPLER_COIN_FLIP_H_
#define CE_SAMPLER_COIN_FLIP_H_

#include <array>
#include <optional>

#include "ce_sampler/random.h"
#include "ce_sampler/rational.h"

namespace ce_sampler {

enum class WcfRole { kAlice, kBob };

class WcfSpec {
 public:
  // Throws std::invalid_argument unless alice_wins_on is a bit and
  // 0 <= bias < 1/2.
  WcfSpec(int alice_wins_on, Rational bias);

  int alice_wins_on() const { return alice_wins_on_; }
  int WinningBit(WcfRole role) const {
    return role == WcfRole::kAlice ? alice_wins_on_ : 1 - alice_wins_on_;
  }
  const Rational& bias() const { return bias_; }
  Rational MaxWinProbability() const { return Rational(1, 2) + bias_; }

 private:
  int alice_wins_on_;
  Rational bias_;
};

struct CheaterRequest {
  Rational win_probability;
};

struct WcfOutcome {
  int alice_bit = 0;
  int bob_bit = 0;
  // nullopt stands for the disagreement symbol; never produced here.
  std::optional<int> resolved;
};

// Probability granted to a cheater: min(w, 1/2 + bias), floored at 0.
Rational GrantedWinProbability(const WcfSpec& spec, const CheaterRequest& request);

// Exact probabilities of the coin landing on 0 and on 1.
std::array<Rational, 2> HonestDistribution(const WcfSpec& spec);
std::array<Rational, 2> CheaterDistribution(const WcfSpec& spec, WcfRole cheater,
                                            const CheaterRequest& request);

WcfOutcome RunHonest(const WcfSpec& spec, RandomStream& rng);
WcfOutcome RunWithCheater(const WcfSpec& spec, WcfRole cheater,
                          const CheaterRequest& request, RandomStream& rng);

// Dispatches on which party (if any) cheats. Throws std::invalid_argument if
// both do; the functionality only defines one cheater against an honest party.
WcfOutcome Run(const WcfSpec& spec, const std::optional<CheaterRequest>& alice,
               const std::optional<CheaterRequest>& bob, RandomStream& rng);
std::array<Rational, 2> Distribution(const WcfSpec& spec,
                                     const std::optional<CheaterRequest>& alice,
                                     const std::optional<CheaterRequest>& bob);

}  // namespace ce_sampler

#endif  // CE_SAMPLER_COIN_FLIP_H_
