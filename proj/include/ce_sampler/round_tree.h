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

// The complete binary tree of protocol rounds over an emulation table.
//
// A node is a bit prefix; its two children extend it by 0 and by 1. At each
// internal node both players announce which child they prefer. Under the
// default rule a player prefers the child whose honest continuation gives
// him the higher expected utility, i.e. the conditional of the honest
// output distribution p_h on that child. That conditional only depends on
// deeper nodes, so the whole tree is evaluated bottom-up in one pass.

#ifndef CE_SAMPLER_ROUND_TREE_H_
#define CE_SAMPLER_ROUND_TREE_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ce_sampler/emulation.h"
#include "ce_sampler/game.h"

namespace ce_sampler {

// +1 prefers the next bit to be 0, -1 prefers 1. A zero difference counts
// as +1.
enum class PreferenceSign { kPlus = 1, kMinus = -1 };

inline int PreferredBit(PreferenceSign s) { return s == PreferenceSign::kPlus ? 0 : 1; }
inline PreferenceSign SignForBit(int bit) {
  return bit == 0 ? PreferenceSign::kPlus : PreferenceSign::kMinus;
}
inline PreferenceSign SignOf(const Rational& difference) {
  return difference >= 0 ? PreferenceSign::kPlus : PreferenceSign::kMinus;
}
inline int Value(PreferenceSign s) { return static_cast<int>(s); }

enum class PreferenceRule {
  // Conditional of the honest output distribution p_h (default).
  kHonestContinuation,
  // Conditional of the uniform distribution over the emulation table.
  kEmulatedConditional,
};

std::string ToString(PreferenceRule rule);

class RoundTree {
 public:
  RoundTree(const MultisetEmulation& em, const Game& game,
            PreferenceRule rule = PreferenceRule::kHonestContinuation);

  int k() const { return k_; }
  PreferenceRule rule() const { return rule_; }

  // Heap numbering: the root is 1, children of n are 2n and 2n+1, and the
  // node for prefix c^1..c^m is 2^m + value(c).
  static std::uint64_t NodeOf(const BitPrefix& prefix) {
    return (std::uint64_t{1} << prefix.size()) | prefix.Value();
  }

  // Valid for internal nodes (prefix shorter than k).
  PreferenceSign Preference(const BitPrefix& prefix, Player player) const;
  PreferenceSign PreferenceAt(std::uint64_t node, Player player) const {
    return nodes_[node].preference[Index(player)];
  }
  bool Agreed(std::uint64_t node) const {
    return nodes_[node].preference[0] == nodes_[node].preference[1];
  }

  // Expected utility of the honest protocol started at this node.
  const Rational& HonestValue(const BitPrefix& prefix, Player player) const {
    return nodes_[NodeOf(prefix)].honest_value[Index(player)];
  }
  const Rational& HonestValueAt(std::uint64_t node, Player player) const {
    return nodes_[node].honest_value[Index(player)];
  }

  // Utility of the table entry at a leaf index in [0, 2^k).
  const Rational& LeafUtility(std::uint64_t leaf, Player player) const {
    return HonestValueAt((std::uint64_t{1} << k_) | leaf, player);
  }

 private:
  struct Node {
    std::array<Rational, 2> honest_value;
    std::array<PreferenceSign, 2> preference{PreferenceSign::kPlus,
                                             PreferenceSign::kPlus};
  };

  int k_;
  PreferenceRule rule_;
  std::vector<Node> nodes_;
};

}  // namespace ce_sampler

#endif  // CE_SAMPLER_ROUND_TREE_H_
