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

#include <algorithm>
#include <numeric>
#include <vector>

#include "ce_sampler/acceptance.h"
#include "ce_sampler/emulation.h"
#include "doctest.h"
#include "test_util.h"

namespace ce_sampler {
namespace {

using testing::BosFair;

// Independent largest-remainder apportionment.
std::vector<std::uint64_t> OracleCounts(const JointDistribution& p, int k) {
  const Rational scale = Rational(std::uint64_t{1} << k);
  std::vector<std::uint64_t> counts(p.size());
  std::vector<std::pair<Rational, int>> remainders;
  std::uint64_t used = 0;
  for (int i = 0; i < p.size(); ++i) {
    const Rational x = p.at(i) * scale;
    const mpz_class floor = x.get_num() / x.get_den();
    counts[i] = floor.get_ui();
    used += counts[i];
    remainders.emplace_back(x - Rational(floor), i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::uint64_t j = 0; used < (std::uint64_t{1} << k); ++j, ++used) {
    ++counts[remainders[j].second];
  }
  return counts;
}

TEST_CASE("bit prefixes") {
  const BitPrefix p = BitPrefix::FromString("101");
  CHECK(p.size() == 3);
  CHECK(p.Value() == 5);
  CHECK(p.ToString() == "101");
  CHECK(p.Append(1).Value() == 11);
  CHECK(BitPrefix::FromString("").size() == 0);
  CHECK_THROWS_AS(BitPrefix::FromString("12"), std::invalid_argument);
  CHECK(BitPrefix::FromString("01") < BitPrefix::FromString("1"));
}

TEST_CASE("battle of the sexes emulation") {
  const MultisetEmulation em = MultisetEmulation::Build(BosFair(), Rational(1, 2));
  CHECK(em.k() == 3);
  CHECK(em.size() == 8);
  CHECK(em.counts() == std::vector<std::uint64_t>{4, 0, 0, 4});
  for (std::uint64_t i = 0; i < 8; ++i) {
    CHECK(em.entry(i) == (i < 4 ? JointStrategy{0, 0} : JointStrategy{1, 1}));
  }
  CHECK(em.ToJson().dump() ==
        R"({"k":3,"table":["0,0","0,0","0,0","0,0","1,1","1,1","1,1","1,1"]})");
  CHECK(em.Induced() == BosFair());
  CHECK(em.Block(BitPrefix::FromString("1")) == std::pair<std::uint64_t, std::uint64_t>{4, 8});
  const Game bos = testing::Bos();
  CHECK(em.ConditionalExpectedUtility(bos, BitPrefix(), 0, Player::kOne) == 4);
  CHECK(em.ConditionalExpectedUtility(bos, BitPrefix(), 1, Player::kTwo) == 4);
}

TEST_CASE("point mass and layouts") {
  const JointDistribution point = JointDistribution::PointMass(2, 2, {1, 0});
  const MultisetEmulation em = MultisetEmulation::Build(point, Rational(1, 8));
  CHECK(em.k() == 5);
  for (const auto& s : em.table()) CHECK(s == JointStrategy{1, 0});

  const MultisetEmulation swapped =
      MultisetEmulation::Build(BosFair(), Rational(1, 2), std::vector<int>{3, 1, 2, 0});
  CHECK(swapped.entry(0) == JointStrategy{1, 1});
  CHECK(swapped.entry(7) == JointStrategy{0, 0});
  CHECK_THROWS_AS(MultisetEmulation::Build(BosFair(), Rational(1, 2), std::vector<int>{0, 0, 1, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(MultisetEmulation::Build(BosFair(), Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(MultisetEmulation::Build(BosFair(), Rational(1, 1L << 40)),
                  std::invalid_argument);
}

TEST_CASE("round count is the least k with 2^k delta >= |S|") {
  for (int cells : {1, 2, 3, 4, 9, 16}) {
    for (const Rational& delta : {Rational(1), Rational(1, 2), Rational(1, 3), Rational(1, 8),
                                  Rational(1, 100), Rational(3, 2)}) {
      int k = 0;
      while (Rational(1L << k) * delta < cells) ++k;
      CHECK(RoundsFor(cells, delta) == k);
    }
  }
}

TEST_CASE("emulation properties on random distributions") {
  RandomStream root(31);
  for (int t = 0; t < 100; ++t) {
    RandomStream rng = root.Split(t);
    const int rows = 1 + static_cast<int>(rng.NextBelow(4));
    const int cols = 1 + static_cast<int>(rng.NextBelow(4));
    const JointDistribution p = testing::RandomDistribution(rows, cols, rng);
    const Rational delta = t % 2 ? Rational(1, 4) : Rational(1, 10);
    const MultisetEmulation em = MultisetEmulation::Build(p, delta);
    const std::uint64_t n = std::uint64_t{1} << em.k();
    CHECK(em.k() == RoundsFor(rows * cols, delta));
    CHECK(em.counts() == OracleCounts(p, em.k()));
    CHECK(std::accumulate(em.counts().begin(), em.counts().end(), std::uint64_t{0}) == n);
    CHECK(L1Distance(em.Induced(), p) <= delta);
    for (int i = 0; i < p.size(); ++i) {
      CHECK(Abs(Rational(em.counts()[i]) - p.at(i) * Rational(n)) < 1);
    }
    // Copies are contiguous in row-major order.
    std::uint64_t index = 0;
    for (int cell = 0; cell < p.size(); ++cell) {
      for (std::uint64_t c = 0; c < em.counts()[cell]; ++c) {
        CHECK(em.entry(index++) == JointStrategy{cell / cols, cell % cols});
      }
    }
  }
}

TEST_CASE("marginal distances grow with the prefix length") {
  RandomStream root(32);
  for (int t = 0; t < 50; ++t) {
    RandomStream rng = root.Split(t);
    const int bits = 1 + static_cast<int>(rng.NextBelow(5));
    auto random_bits = [&] {
      BitDistribution d = BitDistribution::Zero(bits);
      Rational total = 0;
      for (auto& x : d.probs) {
        x = static_cast<long>(rng.NextBelow(4));
        total += x;
      }
      if (total == 0) {
        d.probs[0] = 1;
        total = 1;
      }
      for (auto& x : d.probs) x /= total;
      return d;
    };
    const BitDistribution a = random_bits(), b = random_bits();
    CHECK(Marginal(a, 0).probs == std::vector<Rational>{1});
    CHECK(Marginal(a, bits) == a);
    for (int m = 1; m <= bits; ++m) {
      CHECK(L1Distance(Marginal(a, m - 1), Marginal(b, m - 1)) <=
            L1Distance(Marginal(a, m), Marginal(b, m)));
      CHECK(Marginal(a, m).Total() == 1);
    }
  }
}

}  // namespace
}  // namespace ce_sampler
