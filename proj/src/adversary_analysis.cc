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

#include "ce_sampler/adversary_analysis.h"

#include <stdexcept>

namespace ce_sampler {

using nlohmann::json;

namespace {

json ToJsonArray(const std::vector<Rational>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(ToString(v));
  return out;
}

json ToJsonPair(const std::array<Rational, 2>& values) {
  return json::array({ToString(values[0]), ToString(values[1])});
}

json ToJsonPair(const std::array<bool, 2>& values) {
  return json::array({values[0], values[1]});
}

json ToJson(const BitDistribution& d) {
  json out = json::object();
  for (std::uint64_t i = 0; i < d.probs.size(); ++i) {
    if (d.probs[i] == 0) continue;
    std::string key;
    for (int b = d.bits - 1; b >= 0; --b) key.push_back((i >> b) & 1 ? '1' : '0');
    out[key] = ToString(d.probs[i]);
  }
  return out;
}

Rational PerRoundBias(const Rational& epsilon, int k) {
  return k == 0 ? Rational(0) : Rational(epsilon / (2 * k));
}

// Probability the dishonest party steers a node's bit away from the honest
// party's preference.
struct NodeChoice {
  Rational w;
  bool lie = false;      // announce the honest party's losing bit at an agreed node
  bool request = false;  // send an explicit coin request
};

class WorstCaseSolver {
 public:
  WorstCaseSolver(const RoundTree& tree, const Rational& bias, Player dishonest,
                  AnnouncementClass announcements, AdversaryGoal goal)
      : tree_(tree), bias_(bias), dishonest_(dishonest),
        honest_(Other(dishonest)), announcements_(announcements), goal_(goal),
        choice_(std::size_t{1} << tree.k()) {}

  WorstCase Solve() {
    WorstCase out;
    out.value = Value(1, 0);
    out.q = BitDistribution::Zero(tree_.k());
    Propagate(1, BitPrefix(), Rational(1), &out);
    return out;
  }

 private:
  bool Better(const Rational& a, const Rational& b) const {
    return goal_ == AdversaryGoal::kSelfInterested ? a > b : a < b;
  }

  Rational Value(std::uint64_t node, int depth) {
    if (depth == tree_.k()) {
      const std::uint64_t leaf = node ^ (std::uint64_t{1} << depth);
      if (goal_ == AdversaryGoal::kSpiteful) return tree_.LeafUtility(leaf, honest_);
      // Deviating in stage two is rejected and pays 0.
      return Max(tree_.LeafUtility(leaf, dishonest_), Rational(0));
    }
    const int b = PreferredBit(tree_.PreferenceAt(node, honest_));
    const bool agreed = tree_.Agreed(node);
    const Rational vb = Value(2 * node + b, depth + 1);
    const Rational vo = Value(2 * node + 1 - b, depth + 1);
    NodeChoice& c = choice_[node];
    const bool forced = agreed && announcements_ == AnnouncementClass::kTruthful;
    if (!forced && Better(vo, vb)) {
      c.w = Rational(1, 2) + bias_;
      c.lie = agreed;
      c.request = true;
      return (1 - c.w) * vb + c.w * vo;
    }
    if (!agreed && Better(vb, vo)) {
      // Lose the flip on purpose.
      c.w = 0;
      c.request = true;
      return vb;
    }
    // Ties and forced nodes: behave honestly.
    c.w = agreed ? Rational(0) : Rational(1, 2);
    return agreed ? vb : Rational((vb + vo) / 2);
  }

  void Propagate(std::uint64_t node, const BitPrefix& prefix, const Rational& mass,
                 WorstCase* out) {
    if (prefix.size() == tree_.k()) {
      out->q.probs[prefix.Value()] += mass;
      return;
    }
    const NodeChoice& c = choice_[node];
    const int b = PreferredBit(tree_.PreferenceAt(node, honest_));
    if (c.request) {
      PolicyAction action;
      if (c.lie) action.announce = SignForBit(1 - b);
      action.win_probability = c.w;
      out->policy.actions[prefix] = action;
    }
    Propagate(2 * node + b, prefix.Append(b), mass * (1 - c.w), out);
    Propagate(2 * node + 1 - b, prefix.Append(1 - b), mass * c.w, out);
  }

  const RoundTree& tree_;
  Rational bias_;
  Player dishonest_;
  Player honest_;
  AnnouncementClass announcements_;
  AdversaryGoal goal_;
  std::vector<NodeChoice> choice_;
};

}  // namespace

BitDistribution ComputePh(const RoundTree& tree) {
  BitDistribution out = BitDistribution::Zero(tree.k());
  auto walk = [&](auto&& self, std::uint64_t node, const BitPrefix& prefix,
                  const Rational& mass) -> void {
    if (prefix.size() == tree.k()) {
      out.probs[prefix.Value()] += mass;
      return;
    }
    if (tree.Agreed(node)) {
      const int b = PreferredBit(tree.PreferenceAt(node, Player::kOne));
      self(self, 2 * node + b, prefix.Append(b), mass);
      return;
    }
    const Rational half = mass / 2;
    self(self, 2 * node, prefix.Append(0), half);
    self(self, 2 * node + 1, prefix.Append(1), half);
  };
  walk(walk, 1, BitPrefix(), Rational(1));
  return out;
}

BitDistribution ComputePh(const MultisetEmulation& em, const Game& game) {
  return ComputePh(RoundTree(em, game));
}

WorstCase ComputeWorstCaseQ(const RoundTree& tree, const Rational& per_round_bias,
                            Player dishonest, AnnouncementClass announcements,
                            AdversaryGoal goal) {
  if (per_round_bias < 0 || per_round_bias >= Rational(1, 2)) {
    throw std::invalid_argument("per-round bias must lie in [0, 1/2)");
  }
  return WorstCaseSolver(tree, per_round_bias, dishonest, announcements, goal).Solve();
}

WorstCase ComputeWorstCaseQ(const MultisetEmulation& em, const Game& game,
                            const Rational& per_round_bias, Player dishonest,
                            AnnouncementClass announcements, AdversaryGoal goal) {
  return ComputeWorstCaseQ(RoundTree(em, game), per_round_bias, dishonest,
                           announcements, goal);
}

Rational ExpectedUtility(const RoundTree& tree, const BitDistribution& leaves,
                         Player player) {
  Rational total = 0;
  for (std::uint64_t i = 0; i < leaves.probs.size(); ++i) {
    if (leaves.probs[i] != 0) total += leaves.probs[i] * tree.LeafUtility(i, player);
  }
  return total;
}

json Claim1Report::ToJson() const {
  return json{{"dishonest", Number(dishonest)},
              {"epsilon", ToString(epsilon)},
              {"per_round_bias", ToString(per_round_bias)},
              {"k", k},
              {"p_h", ce_sampler::ToJson(p_h)},
              {"q", ce_sampler::ToJson(q)},
              {"l1_per_round", ToJsonArray(l1_per_round)},
              {"bounds", ToJsonArray(bounds)},
              {"l1_per_round_arbitrary", ToJsonArray(l1_per_round_arbitrary)},
              {"cumulative_ok", cumulative_ok},
              {"growth_ok", growth_ok},
              {"final_ok", final_ok},
              {"utility_ph", ToJsonPair(utility_ph)},
              {"utility_q", ToJsonPair(utility_q)},
              {"ok", ok()}};
}

Claim1Report VerifyClaim1(const MultisetEmulation& em, const Game& game,
                          const Rational& epsilon, Player dishonest,
                          PreferenceRule rule) {
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  const RoundTree tree(em, Normalize(game), rule);
  Claim1Report r;
  r.dishonest = dishonest;
  r.epsilon = epsilon;
  r.k = tree.k();
  r.per_round_bias = PerRoundBias(epsilon, r.k);
  r.p_h = ComputePh(tree);
  r.q = ComputeWorstCaseQ(tree, r.per_round_bias, dishonest,
                          AnnouncementClass::kTruthful).q;
  const BitDistribution q_any =
      ComputeWorstCaseQ(tree, r.per_round_bias, dishonest).q;
  const Rational step = r.k == 0 ? Rational(0) : Rational(epsilon / r.k);
  for (int m = 0; m <= r.k; ++m) {
    const BitDistribution ph_m = Marginal(r.p_h, m);
    r.l1_per_round.push_back(L1Distance(Marginal(r.q, m), ph_m));
    r.l1_per_round_arbitrary.push_back(L1Distance(Marginal(q_any, m), ph_m));
    r.bounds.push_back(step * m);
    if (r.l1_per_round[m] > r.bounds[m]) r.cumulative_ok = false;
    if (m > 0 && r.l1_per_round[m] - r.l1_per_round[m - 1] > step) r.growth_ok = false;
  }
  r.final_ok = r.l1_per_round.back() <= epsilon;
  for (Player p : {Player::kOne, Player::kTwo}) {
    r.utility_ph[Index(p)] = ExpectedUtility(tree, r.p_h, p);
    r.utility_q[Index(p)] = ExpectedUtility(tree, r.q, p);
  }
  return r;
}

bool CssReport::ok() const {
  for (int i = 0; i < 2; ++i) {
    if (!property1[i] || !dishonest_bound[i] || !honest_bound[i]) return false;
  }
  return true;
}

json CssReport::ToJson() const {
  return json{{"utility_p", ToJsonPair(utility_p)},
              {"utility_ph", ToJsonPair(utility_ph)},
              {"utility_q_dishonest_1", ToJsonPair(utility_q[0])},
              {"utility_q_dishonest_2", ToJsonPair(utility_q[1])},
              {"property1", ToJsonPair(property1)},
              {"dishonest_bound", ToJsonPair(dishonest_bound)},
              {"honest_bound", ToJsonPair(honest_bound)},
              {"ok", ok()}};
}

CssReport VerifyCssProperties(const MultisetEmulation& em, const Game& game,
                              const ProtocolConfig& config) {
  const Game normalized = Normalize(game);
  const RoundTree tree(em, normalized, config.rule());
  const BitDistribution p_h = ComputePh(tree);
  const Rational& eps = config.epsilon();
  CssReport r;
  for (Player p : {Player::kOne, Player::kTwo}) {
    const int i = Index(p);
    r.utility_p[i] = ExpectedUtility(normalized, em.source(), p);
    r.utility_ph[i] = ExpectedUtility(tree, p_h, p);
    r.property1[i] = r.utility_ph[i] >= r.utility_p[i] - config.delta();
  }
  for (Player j : {Player::kOne, Player::kTwo}) {
    const int i = Index(j);
    const BitDistribution q = ComputeWorstCaseQ(tree, config.per_round_bias(), j).q;
    for (Player p : {Player::kOne, Player::kTwo}) {
      r.utility_q[i][Index(p)] = ExpectedUtility(tree, q, p);
    }
    r.dishonest_bound[i] = r.utility_q[i][i] <= r.utility_ph[i] + eps;
    const int h = Index(Other(j));
    r.honest_bound[i] = r.utility_q[i][h] >= r.utility_ph[h] - eps;
  }
  return r;
}

bool EquilibriumReport::nash_ok() const {
  return epsilon_nash[0] && epsilon_nash[1] && payoff_floor[0] && payoff_floor[1];
}

bool EquilibriumReport::floor_ok() const { return honest_floor[0] && honest_floor[1]; }

json EquilibriumReport::ToJson() const {
  return json{{"utility_p", ToJsonPair(utility_p)},
              {"honest_payoff", ToJsonPair(honest_payoff)},
              {"deviation_truthful", ToJsonPair(deviation_truthful)},
              {"deviation_arbitrary", ToJsonPair(deviation_arbitrary)},
              {"epsilon_nash", ToJsonPair(epsilon_nash)},
              {"payoff_floor", ToJsonPair(payoff_floor)},
              {"honest_vs_selfish_truthful", ToJsonPair(honest_vs_selfish_truthful)},
              {"honest_vs_selfish_arbitrary", ToJsonPair(honest_vs_selfish_arbitrary)},
              {"honest_vs_spiteful_truthful", ToJsonPair(honest_vs_spiteful_truthful)},
              {"honest_vs_spiteful_arbitrary", ToJsonPair(honest_vs_spiteful_arbitrary)},
              {"honest_floor", ToJsonPair(honest_floor)},
              {"nash_ok", nash_ok()},
              {"floor_ok", floor_ok()}};
}

EquilibriumReport VerifyEquilibrium(const MultisetEmulation& em, const Game& game,
                                    const ProtocolConfig& config) {
  const Game normalized = Normalize(game);
  const RoundTree tree(em, normalized, config.rule());
  const Rational& eps = config.epsilon();
  const Rational& bias = config.per_round_bias();
  EquilibriumReport r;
  for (Player j : {Player::kOne, Player::kTwo}) {
    const int i = Index(j);
    const Player h = Other(j);
    r.utility_p[i] = ExpectedUtility(normalized, em.source(), j);
    r.honest_payoff[i] = tree.HonestValueAt(1, j);
    r.payoff_floor[i] = r.honest_payoff[i] >= r.utility_p[i] - config.delta();

    const WorstCase truthful =
        ComputeWorstCaseQ(tree, bias, j, AnnouncementClass::kTruthful);
    const WorstCase arbitrary =
        ComputeWorstCaseQ(tree, bias, j, AnnouncementClass::kArbitrary);
    r.deviation_truthful[i] = truthful.value;
    r.deviation_arbitrary[i] = arbitrary.value;
    r.epsilon_nash[i] =
        Max(truthful.value, arbitrary.value) - r.honest_payoff[i] <= eps;

    r.honest_vs_selfish_truthful[i] = ExpectedUtility(tree, truthful.q, h);
    r.honest_vs_selfish_arbitrary[i] = ExpectedUtility(tree, arbitrary.q, h);
    r.honest_vs_spiteful_truthful[i] =
        ComputeWorstCaseQ(tree, bias, j, AnnouncementClass::kTruthful,
                          AdversaryGoal::kSpiteful).value;
    r.honest_vs_spiteful_arbitrary[i] =
        ComputeWorstCaseQ(tree, bias, j, AnnouncementClass::kArbitrary,
                          AdversaryGoal::kSpiteful).value;
    const Rational floor = tree.HonestValueAt(1, h) - eps;
    r.honest_floor[i] = r.honest_vs_selfish_truthful[i] >= floor &&
                        r.honest_vs_selfish_arbitrary[i] >= floor &&
                        r.honest_vs_spiteful_truthful[i] >= floor;
  }
  return r;
}

WlogReport CompareAnnouncementClasses(const MultisetEmulation& em, const Game& game,
                                      const Rational& epsilon, PreferenceRule rule) {
  const RoundTree tree(em, Normalize(game), rule);
  const Rational bias = PerRoundBias(epsilon, tree.k());
  WlogReport r;
  for (Player j : {Player::kOne, Player::kTwo}) {
    r.truthful[Index(j)] =
        ComputeWorstCaseQ(tree, bias, j, AnnouncementClass::kTruthful).value;
    r.arbitrary[Index(j)] =
        ComputeWorstCaseQ(tree, bias, j, AnnouncementClass::kArbitrary).value;
  }
  return r;
}

bool TestWlogHonestAnnouncement(const MultisetEmulation& em, const Game& game,
                                const Rational& epsilon) {
  return CompareAnnouncementClasses(em, game, epsilon).holds();
}

}  // namespace ce_sampler
