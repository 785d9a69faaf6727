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

#include "ce_sampler/coin_flip.h"

#include <stdexcept>

namespace ce_sampler {
namespace {

WcfOutcome Resolve(int bit) { return {bit, bit, bit}; }

WcfOutcome Sample(const std::array<Rational, 2>& dist, RandomStream& rng) {
  return Resolve(rng.Bernoulli(dist[1]) ? 1 : 0);
}

}  // namespace

WcfSpec::WcfSpec(int alice_wins_on, Rational bias)
    : alice_wins_on_(alice_wins_on), bias_(std::move(bias)) {
  if (alice_wins_on != 0 && alice_wins_on != 1) {
    throw std::invalid_argument("WcfSpec: winning value must be 0 or 1");
  }
  if (bias_ < 0 || bias_ >= Rational(1, 2)) {
    throw std::invalid_argument("WcfSpec: bias must lie in [0, 1/2)");
  }
}

Rational GrantedWinProbability(const WcfSpec& spec, const CheaterRequest& request) {
  if (request.win_probability <= 0) return 0;
  return Min(request.win_probability, spec.MaxWinProbability());
}

std::array<Rational, 2> HonestDistribution(const WcfSpec&) {
  return {Rational(1, 2), Rational(1, 2)};
}

std::array<Rational, 2> CheaterDistribution(const WcfSpec& spec, WcfRole cheater,
                                            const CheaterRequest& request) {
  const Rational win = GrantedWinProbability(spec, request);
  std::array<Rational, 2> dist;
  const int bit = spec.WinningBit(cheater);
  dist[bit] = win;
  dist[1 - bit] = 1 - win;
  return dist;
}

WcfOutcome RunHonest(const WcfSpec& spec, RandomStream& rng) {
  return Sample(HonestDistribution(spec), rng);
}

WcfOutcome RunWithCheater(const WcfSpec& spec, WcfRole cheater,
                          const CheaterRequest& request, RandomStream& rng) {
  return Sample(CheaterDistribution(spec, cheater, request), rng);
}

std::array<Rational, 2> Distribution(const WcfSpec& spec,
                                     const std::optional<CheaterRequest>& alice,
                                     const std::optional<CheaterRequest>& bob) {
  if (alice && bob) {
    throw std::invalid_argument(
        "weak coin flip: at most one party may deviate from the honest protocol");
  }
  if (alice) return CheaterDistribution(spec, WcfRole::kAlice, *alice);
  if (bob) return CheaterDistribution(spec, WcfRole::kBob, *bob);
  return HonestDistribution(spec);
}

WcfOutcome Run(const WcfSpec& spec, const std::optional<CheaterRequest>& alice,
               const std::optional<CheaterRequest>& bob, RandomStream& rng) {
  return Sample(Distribution(spec, alice, bob), rng);
}

}  // namespace ce_sampler
