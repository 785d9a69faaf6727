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

#include <functional>
#include <vector>

#include "ce_sampler/acceptance.h"
#include "ce_sampler/adversary_analysis.h"
#include "ce_sampler/extended_game.h"
#include "doctest.h"
#include "test_util.h"

namespace ce_sampler {
namespace {

using testing::Bos;
using testing::BosFair;

MultisetEmulation BosEmulation() { return MultisetEmulation::Build(BosFair(), Rational(1, 2)); }

TEST_CASE("cheating in the battle of the sexes") {
  const MultisetEmulation em = BosEmulation();
  for (const Rational& bias : {Rational(0), Rational(1, 60), Rational(1, 7)}) {
    const WorstCase one = ComputeWorstCaseQ(em, Bos(), bias, Player::kOne);
    CHECK(one.value == 3 + 2 * bias);
    CHECK(one.q.probs[0b000] == Rational(1, 2) + bias);
    CHECK(one.q.probs[0b100] == Rational(1, 2) - bias);
    const WorstCase two = ComputeWorstCaseQ(em, Bos(), bias, Player::kTwo);
    CHECK(two.value == 3 + 2 * bias);
    CHECK(two.q.probs[0b100] == Rational(1, 2) + bias);
    CHECK(ComputeWorstCaseQ(em, Bos(), bias, Player::kOne, AnnouncementClass::kTruthful).value ==
          one.value);
  }
  CHECK_THROWS_AS(ComputeWorstCaseQ(em, Bos(), Rational(1, 2), Player::kOne),
                  std::invalid_argument);
  CHECK_THROWS_AS(ComputeWorstCaseQ(em, Bos(), Rational(-1, 2), Player::kOne),
                  std::invalid_argument);
  CHECK(TestWlogHonestAnnouncement(em, Bos(), Rational(1, 10)));
}

TEST_CASE("battle of the sexes reports") {
  const MultisetEmulation em = BosEmulation();
  const Claim1Report r = VerifyClaim1(em, Bos(), Rational(1, 10), Player::kOne);
  CHECK(r.ok());
  CHECK(r.k == 3);
  CHECK(r.l1_per_round ==
        std::vector<Rational>{0, Rational(1, 30), Rational(1, 30), Rational(1, 30)});
  CHECK(r.bounds == std::vector<Rational>{0, Rational(1, 30), Rational(1, 15), Rational(1, 10)});
  const auto doc = r.ToJson();
  CHECK(doc["l1_per_round"][1] == "1/30");
  CHECK(doc["ok"] == true);

  const ProtocolConfig config(Rational(1, 10), Rational(1, 2), 3);
  const CssReport css = VerifyCssProperties(em, Bos(), config);
  CHECK(css.ok());
  // Property 1 holds with slack 0.
  CHECK(css.utility_ph == css.utility_p);
  // Normalized leaf values 1 and 1/2: shifting eps' of mass gains eps' / 2.
  CHECK(css.utility_q[0][0] - css.utility_ph[0] == config.per_round_bias() / 2);

  const EquilibriumReport eq = VerifyEquilibrium(em, Bos(), config);
  CHECK(eq.nash_ok());
  CHECK(eq.floor_ok());
  CHECK(eq.honest_payoff[0] == Rational(3, 4));
}

TEST_CASE("without bias the adversary gains nothing") {
  for (const auto& inst : MakeBattery(51, 60)) {
    const MultisetEmulation em = MultisetEmulation::Build(inst.p, inst.delta);
    const RoundTree tree(em, Normalize(inst.game));
    const BitDistribution ph = ComputePh(tree);
    for (Player j : {Player::kOne, Player::kTwo}) {
      for (AnnouncementClass cls : {AnnouncementClass::kTruthful, AnnouncementClass::kArbitrary}) {
        const WorstCase wc = ComputeWorstCaseQ(tree, 0, j, cls);
        CHECK(wc.q == ph);
        CHECK(wc.value == tree.HonestValueAt(1, j));
      }
    }
  }
}

TEST_CASE("point masses cannot be steered") {
  const MultisetEmulation em =
      MultisetEmulation::Build(JointDistribution::PointMass(2, 2, {1, 0}), Rational(1, 4));
  const BitDistribution ph = ComputePh(em, Bos());
  for (const Rational& bias : {Rational(0), Rational(1, 10), Rational(2, 5)}) {
    CHECK(ComputeWorstCaseQ(em, Bos(), bias, Player::kOne).q == ph);
    CHECK(ComputeWorstCaseQ(em, Bos(), bias, Player::kTwo).q == ph);
  }
  CHECK(TestWlogHonestAnnouncement(em, Bos(), Rational(1, 10)));
}

TEST_CASE("adversary value is nondecreasing in the bias") {
  const std::vector<Rational> biases{0, Rational(1, 100), Rational(1, 20), Rational(1, 10),
                                     Rational(1, 4), Rational(49, 100)};
  for (const auto& inst : MakeBattery(52, 40)) {
    const MultisetEmulation em = MultisetEmulation::Build(inst.p, inst.delta);
    const RoundTree tree(em, Normalize(inst.game));
    for (Player j : {Player::kOne, Player::kTwo}) {
      Rational last = -1, last_spite = 2;
      for (const Rational& b : biases) {
        const Rational v = ComputeWorstCaseQ(tree, b, j).value;
        const Rational s =
            ComputeWorstCaseQ(tree, b, j, AnnouncementClass::kArbitrary, AdversaryGoal::kSpiteful)
                .value;
        CHECK(v >= last);
        CHECK(s <= last_spite);
        last = v;
        last_spite = s;
      }
    }
  }
}

TEST_CASE("marginal distance bound on random three-by-three games") {
  RandomStream root(53);
  int instances = 0;
  for (int t = 0; instances < 100; ++t) {
    RandomStream rng = root.Split(t);
    const Game g = RandomGame(rng);
    if (g.rows() != 3 || g.cols() != 3) continue;
    ++instances;
    const JointDistribution p = RandomCePoint(g, rng);
    const Rational delta = instances % 2 ? Rational(1, 8) : Rational(1, 4);
    const Rational eps = instances % 3 ? Rational(1, 10) : Rational(1, 3);
    const MultisetEmulation em = MultisetEmulation::Build(p, delta);
    REQUIRE(em.k() <= 8);
    for (Player j : {Player::kOne, Player::kTwo}) {
      const Claim1Report r = VerifyClaim1(em, g, eps, j);
      CHECK(r.ok());
      CHECK(r.l1_per_round[0] == 0);
      for (int m = 1; m <= r.k; ++m) {
        CHECK(r.l1_per_round[m] - r.l1_per_round[m - 1] <= 2 * r.per_round_bias);
      }
    }
  }
}

// Every deterministic policy drawn from a finite action menu, evaluated by
// running the protocol exactly, is dominated by the backward induction.
TEST_CASE("backward induction dominates enumerated policies") {
  const std::vector<PolicyAction> menu{
      {std::nullopt, std::nullopt},
      {std::nullopt, Rational(0)},
      {std::nullopt, Rational(1)},
      {std::nullopt, Rational(1, 4)},
      {PreferenceSign::kPlus, Rational(1)},
      {PreferenceSign::kMinus, Rational(1)},
      {PreferenceSign::kPlus, Rational(0)},
      {PreferenceSign::kMinus, std::nullopt},
  };
  const HonestBehavior honest;
  int instances = 0;
  for (const auto& inst : MakeBattery(54, 200)) {
    if (inst.game.NumJoint() != 4) continue;
    if (++instances > 12) break;
    // delta = 1 gives k = 2 and three internal nodes.
    const Game g = Normalize(inst.game);
    const ProtocolSession session(g, inst.p, Rational(3, 10), Rational(1));
    REQUIRE(session.config().k() == 2);
    const std::vector<BitPrefix> nodes{BitPrefix::FromString(""), BitPrefix::FromString("0"),
                                       BitPrefix::FromString("1")};
    for (Player j : {Player::kOne, Player::kTwo}) {
      const Rational bias = session.config().per_round_bias();
      const Rational best = ComputeWorstCaseQ(session.tree(), bias, j).value;
      const Rational best_truthful =
          ComputeWorstCaseQ(session.tree(), bias, j, AnnouncementClass::kTruthful).value;
      const Rational worst_for_honest =
          ComputeWorstCaseQ(session.tree(), bias, j, AnnouncementClass::kArbitrary,
                            AdversaryGoal::kSpiteful).value;
      bool attained = false;
      std::vector<std::size_t> choice(nodes.size(), 0);
      std::function<void(std::size_t)> rec = [&](std::size_t n) {
        if (n < nodes.size()) {
          for (std::size_t a = 0; a < menu.size(); ++a) {
            choice[n] = a;
            rec(n + 1);
          }
          return;
        }
        AdversaryPolicy policy;
        bool announces = false;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
          policy.actions[nodes[i]] = menu[choice[i]];
          announces = announces || menu[choice[i]].announce.has_value();
        }
        for (bool best_response : {false, true}) {
          policy.best_response_in_game = best_response;
          const PolicyBehavior adversary(policy);
          const auto pay = j == Player::kOne ? ExactExtendedPayoffs(session, adversary, honest)
                                             : ExactExtendedPayoffs(session, honest, adversary);
          CHECK(pay[Index(j)] <= best);
          if (!announces) CHECK(pay[Index(j)] <= best_truthful);
          if (!best_response) CHECK(pay[Index(Other(j))] >= worst_for_honest);
          attained = attained || pay[Index(j)] == best;
        }
      };
      rec(0);
      CHECK(attained);
    }
  }
  CHECK(instances > 5);
}

}  // namespace
}  // namespace ce_sampler
