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

// Exact analysis of the sampling protocol against one dishonest party.
//
// Against an honest party that prefers bit b at some node, whatever the
// dishonest party does (agree, disagree and flip, cheat, or lose on
// purpose) moves the next bit to 1 - b with some probability w in
// [0, 1/2 + bias], and every such w is reachable. Backward induction over
// the round tree is therefore exact, and the optimum is bang-bang.

#ifndef CE_SAMPLER_ADVERSARY_ANALYSIS_H_
#define CE_SAMPLER_ADVERSARY_ANALYSIS_H_

#include <array>
#include <string>
#include <vector>

#include "ce_sampler/emulation.h"
#include "ce_sampler/game.h"
#include "ce_sampler/protocol.h"
#include "ce_sampler/round_tree.h"
#include "json.hpp"

namespace ce_sampler {

enum class AnnouncementClass {
  // Announce the true preference; only the coin request is free. At nodes
  // where both parties agree the bit is forced.
  kTruthful,
  // Any announcement. Lying at an agreed node forces a coin flip.
  kArbitrary,
};

enum class AdversaryGoal {
  // Maximize the dishonest party's own payoff. A stage-two deviation is
  // rejected and pays 0, so a leaf is worth max(u, 0). On normalized games
  // that is u and the returned policy, which always obeys, attains it.
  kSelfInterested,
  // Minimize the honest party's payoff while always obeying the suggestion.
  kSpiteful,
};

// Utilities are read from the game as given; the Verify* entry points
// normalize first.

// Output distribution of the protocol with both parties honest.
BitDistribution ComputePh(const RoundTree& tree);
BitDistribution ComputePh(const MultisetEmulation& em, const Game& game);

struct WorstCase {
  BitDistribution q;
  AdversaryPolicy policy;
  // Self-interested: the dishonest party's expected extended-game payoff.
  // Spiteful: the honest party's expected payoff.
  Rational value;
};

WorstCase ComputeWorstCaseQ(const RoundTree& tree, const Rational& per_round_bias,
                            Player dishonest,
                            AnnouncementClass announcements = AnnouncementClass::kArbitrary,
                            AdversaryGoal goal = AdversaryGoal::kSelfInterested);
WorstCase ComputeWorstCaseQ(const MultisetEmulation& em, const Game& game,
                            const Rational& per_round_bias, Player dishonest,
                            AnnouncementClass announcements = AnnouncementClass::kArbitrary,
                            AdversaryGoal goal = AdversaryGoal::kSelfInterested);

Rational ExpectedUtility(const RoundTree& tree, const BitDistribution& leaves,
                         Player player);

// Marginal L1 distances ||q^m - p_h^m|| against the worst-case truthful
// adversary, for m = 0..k, checked against m * epsilon / k.
struct Claim1Report {
  Player dishonest = Player::kOne;
  Rational epsilon;
  Rational per_round_bias;
  int k = 0;
  BitDistribution p_h;
  BitDistribution q;
  std::vector<Rational> l1_per_round;
  std::vector<Rational> bounds;
  // Same sequence for the unrestricted adversary; reported, not checked.
  std::vector<Rational> l1_per_round_arbitrary;
  bool cumulative_ok = true;   // every m
  bool growth_ok = true;       // each step adds at most epsilon / k
  bool final_ok = true;        // ||q - p_h|| <= epsilon
  std::array<Rational, 2> utility_ph;
  std::array<Rational, 2> utility_q;

  bool ok() const { return cumulative_ok && growth_ok && final_ok; }
  nlohmann::json ToJson() const;
};

// Utilities are taken on the normalized game.
Claim1Report VerifyClaim1(const MultisetEmulation& em, const Game& game,
                          const Rational& epsilon, Player dishonest,
                          PreferenceRule rule = PreferenceRule::kHonestContinuation);

struct CssReport {
  std::array<Rational, 2> utility_p;
  std::array<Rational, 2> utility_ph;
  // Indexed by the dishonest player.
  std::array<std::array<Rational, 2>, 2> utility_q;
  std::array<bool, 2> property1;        // per player
  std::array<bool, 2> dishonest_bound;  // E_q[u_j] <= E_ph[u_j] + eps
  std::array<bool, 2> honest_bound;     // E_q[u_other] >= E_ph[u_other] - eps

  bool ok() const;
  nlohmann::json ToJson() const;
};

// On the normalized game, against the unrestricted self-interested adversary.
CssReport VerifyCssProperties(const MultisetEmulation& em, const Game& game,
                              const ProtocolConfig& config);

struct EquilibriumReport {
  std::array<Rational, 2> utility_p;
  std::array<Rational, 2> honest_payoff;  // both follow the honest strategy
  // Indexed by the dishonest player.
  std::array<Rational, 2> deviation_truthful;
  std::array<Rational, 2> deviation_arbitrary;
  std::array<bool, 2> epsilon_nash;   // max deviation - honest <= eps
  std::array<bool, 2> payoff_floor;   // honest payoff >= E_p - delta
  // Honest party's payoff (indexed by the dishonest player) against the
  // self-interested optimum of each class and the truthful spiteful one.
  std::array<Rational, 2> honest_vs_selfish_truthful;
  std::array<Rational, 2> honest_vs_selfish_arbitrary;
  std::array<Rational, 2> honest_vs_spiteful_truthful;
  std::array<bool, 2> honest_floor;   // all three >= E_ph[u_h] - eps
  // Spiteful and lying: reported only.
  std::array<Rational, 2> honest_vs_spiteful_arbitrary;

  bool nash_ok() const;
  bool floor_ok() const;
  nlohmann::json ToJson() const;
};

EquilibriumReport VerifyEquilibrium(const MultisetEmulation& em, const Game& game,
                                    const ProtocolConfig& config);

struct WlogReport {
  std::array<Rational, 2> truthful;
  std::array<Rational, 2> arbitrary;
  bool holds() const { return truthful == arbitrary; }
};

// Whether lying about preferences never helps a self-interested adversary:
// the two announcement classes have the same optimum for both players.
WlogReport CompareAnnouncementClasses(const MultisetEmulation& em, const Game& game,
                                      const Rational& epsilon,
                                      PreferenceRule rule = PreferenceRule::kHonestContinuation);
bool TestWlogHonestAnnouncement(const MultisetEmulation& em, const Game& game,
                                const Rational& epsilon);

}  // namespace ce_sampler

#endif  // CE_SAMPLER_ADVERSARY_ANALYSIS_H_
