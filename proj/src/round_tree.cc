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

#include "ce_sampler/round_tree.h"

#include <stdexcept>

namespace ce_sampler {

std::string ToString(PreferenceRule rule) {
  switch (rule) {
    case PreferenceRule::kHonestContinuation: return "honest-continuation";
    case PreferenceRule::kEmulatedConditional: return "emulated-conditional";
  }
  return "unknown";
}

RoundTree::RoundTree(const MultisetEmulation& em, const Game& game,
                     PreferenceRule rule)
    : k_(em.k()), rule_(rule) {
  const std::uint64_t leaves = std::uint64_t{1} << k_;
  nodes_.resize(2 * leaves);

  // For the emulated rule: block sums of each player's utility per node.
  std::vector<std::array<Rational, 2>> block_sum;
  if (rule == PreferenceRule::kEmulatedConditional) block_sum.resize(2 * leaves);

  for (std::uint64_t leaf = 0; leaf < leaves; ++leaf) {
    Node& n = nodes_[leaves | leaf];
    for (Player p : {Player::kOne, Player::kTwo}) {
      n.honest_value[Index(p)] = game.Utility(p, em.entry(leaf));
      if (!block_sum.empty()) block_sum[leaves | leaf][Index(p)] = n.honest_value[Index(p)];
    }
  }
  for (std::uint64_t id = leaves - 1; id >= 1; --id) {
    Node& n = nodes_[id];
    const Node& zero = nodes_[2 * id];
    const Node& one = nodes_[2 * id + 1];
    for (int i = 0; i < 2; ++i) {
      if (rule == PreferenceRule::kHonestContinuation) {
        n.preference[i] = SignOf(zero.honest_value[i] - one.honest_value[i]);
      } else {
        // Both children cover blocks of equal size, so comparing sums
        // compares averages.
        block_sum[id][i] = block_sum[2 * id][i] + block_sum[2 * id + 1][i];
        n.preference[i] = SignOf(block_sum[2 * id][i] - block_sum[2 * id + 1][i]);
      }
    }
    if (n.preference[0] == n.preference[1]) {
      const Node& chosen = PreferredBit(n.preference[0]) == 0 ? zero : one;
      n.honest_value = chosen.honest_value;
    } else {
      for (int i = 0; i < 2; ++i) {
        n.honest_value[i] = (zero.honest_value[i] + one.honest_value[i]) / 2;
      }
    }
  }
}

PreferenceSign RoundTree::Preference(const BitPrefix& prefix, Player player) const {
  if (prefix.size() >= k_) {
    throw std::invalid_argument("RoundTree::Preference: prefix must be shorter than k");
  }
  return PreferenceAt(NodeOf(prefix), player);
}

}  // namespace ce_sampler
