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
#include <set>

#include "ce_sampler/coin_flip.h"
#include "ce_sampler/random.h"
#include "doctest.h"

namespace ce_sampler {
namespace {

TEST_CASE("random streams are reproducible and independent") {
  RandomStream a(42), b(42), c(43);
  for (int i = 0; i < 10; ++i) {
    const auto x = a.NextU64();
    CHECK(x == b.NextU64());
    CHECK(x != c.NextU64());
  }
  const RandomStream root(7);
  RandomStream s1 = root.Split(1), s1b = root.Split(1), s2 = root.Split(2);
  CHECK(s1.NextU64() == s1b.NextU64());
  CHECK(s1.NextU64() != s2.NextU64());
  CHECK(root.counter() == 0);

  std::set<std::uint64_t> seen;
  RandomStream r(5);
  for (int i = 0; i < 1000; ++i) {
    const auto v = r.NextBelow(6);
    CHECK(v < 6);
    seen.insert(v);
  }
  CHECK(seen.size() == 6);
  CHECK_THROWS(r.NextBelow(0));
}

TEST_CASE("bernoulli draws") {
  RandomStream r(9);
  int ones = 0;
  for (int i = 0; i < 1000; ++i) {
    CHECK_FALSE(r.Bernoulli(0));
    CHECK(r.Bernoulli(1));
    CHECK(r.Bernoulli(Rational(3, 2)));
  }
  const int n = 100000;
  for (int i = 0; i < n; ++i) ones += r.Bernoulli(Rational(1, 3)) ? 1 : 0;
  // Five standard deviations.
  CHECK(std::abs(ones / double(n) - 1.0 / 3) < 5 * std::sqrt(2.0 / 9 / n));
  // Every draw consumes exactly one word.
  RandomStream x(3), y(3);
  x.Bernoulli(Rational(1, 2));
  y.NextU64();
  CHECK(x.counter() == y.counter());
}

TEST_CASE("weak coin flip specification") {
  CHECK_THROWS_AS(WcfSpec(2, Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(WcfSpec(0, Rational(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(WcfSpec(0, Rational(-1, 10)), std::invalid_argument);
  const WcfSpec spec(1, Rational(1, 10));
  CHECK(spec.WinningBit(WcfRole::kAlice) == 1);
  CHECK(spec.WinningBit(WcfRole::kBob) == 0);
  CHECK(spec.MaxWinProbability() == Rational(3, 5));
}

TEST_CASE("ideal functionality distributions") {
  const WcfSpec spec(0, Rational(1, 10));
  CHECK(Distribution(spec, std::nullopt, std::nullopt) ==
        std::array<Rational, 2>{Rational(1, 2), Rational(1, 2)});
  // Cheating to win is capped at 1/2 + bias.
  CHECK(Distribution(spec, CheaterRequest{1}, std::nullopt) ==
        std::array<Rational, 2>{Rational(3, 5), Rational(2, 5)});
  CHECK(Distribution(spec, std::nullopt, CheaterRequest{1}) ==
        std::array<Rational, 2>{Rational(2, 5), Rational(3, 5)});
  // Losing on purpose is not restricted.
  CHECK(Distribution(spec, CheaterRequest{0}, std::nullopt) ==
        std::array<Rational, 2>{Rational(0), Rational(1)});
  CHECK(Distribution(spec, std::nullopt, CheaterRequest{Rational(1, 5)}) ==
        std::array<Rational, 2>{Rational(4, 5), Rational(1, 5)});
  CHECK(GrantedWinProbability(spec, CheaterRequest{Rational(-1)}) == 0);
  CHECK_THROWS_AS(Distribution(spec, CheaterRequest{1}, CheaterRequest{1}),
                  std::invalid_argument);
  RandomStream rng(1);
  CHECK_THROWS_AS(Run(spec, CheaterRequest{1}, CheaterRequest{0}, rng), std::invalid_argument);
}

TEST_CASE("sampled outcomes follow the ideal distribution") {
  const WcfSpec spec(1, Rational(1, 4));
  RandomStream rng(2);
  const int n = 100000;
  int alice_wins = 0;
  for (int i = 0; i < n; ++i) {
    const WcfOutcome o = RunWithCheater(spec, WcfRole::kAlice, CheaterRequest{1}, rng);
    CHECK(o.alice_bit == o.bob_bit);
    alice_wins += o.alice_bit == 1 ? 1 : 0;
  }
  CHECK(std::abs(alice_wins / double(n) - 0.75) < 5 * std::sqrt(0.75 * 0.25 / n));
  int ones = 0;
  for (int i = 0; i < n; ++i) ones += RunHonest(spec, rng).alice_bit;
  CHECK(std::abs(ones / double(n) - 0.5) < 5 * std::sqrt(0.25 / n));
}

}  // namespace
}  // namespace ce_sampler
