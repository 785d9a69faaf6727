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

// The three-stage extended game: sample a suggestion with the protocol,
// play the original game, then each player (one, then two) accepts or
// rejects. Any reject zeroes both payoffs.

#ifndef CE_SAMPLER_EXTENDED_GAME_H_
#define CE_SAMPLER_EXTENDED_GAME_H_

#include <array>

#include "ce_sampler/game.h"
#include "ce_sampler/protocol.h"

namespace ce_sampler {

struct ExtendedOutcome {
  JointStrategy stage2;
  std::array<CheckMove, 2> checks{CheckMove::kAccept, CheckMove::kAccept};
  std::array<Rational, 2> payoffs;
};

std::array<Rational, 2> Settle(const Game& game, JointStrategy stage2,
                               const std::array<CheckMove, 2>& checks);

struct ExtendedPlay {
  ExtendedOutcome outcome;
  Transcript transcript;
};

// One full play. Stage-two and stage-three messages are appended to the
// transcript, which also records the payoffs.
ExtendedPlay PlayExtendedGame(const ProtocolSession& session,
                              const PartyBehavior& one, const PartyBehavior& two,
                              RandomStream& rng);

// Stages two and three for a fixed protocol output index.
ExtendedOutcome SettleFromLeaf(const ProtocolSession& session, std::uint64_t leaf,
                               const PartyBehavior& one, const PartyBehavior& two);

// Exact expected payoffs of the extended game under two deterministic
// behaviors, by enumerating the protocol's output distribution.
std::array<Rational, 2> ExactExtendedPayoffs(const ProtocolSession& session,
                                             const PartyBehavior& one,
                                             const PartyBehavior& two);

// Normal form of "original game then accept/reject": player i's strategies
// are (s_i, A) for every s_i followed by (s_i, R) for every s_i. Labels are
// "<label>,Accept" and "<label>,Reject".
Game AugmentedNormalForm(const Game& game);

// Index of (s, check) in the augmented game's strategy list for a player
// with `n` original strategies.
inline int AugmentedIndex(int s, CheckMove check, int n) {
  return check == CheckMove::kAccept ? s : n + s;
}

}  // namespace ce_sampler

#endif  // CE_SAMPLER_EXTENDED_GAME_H_
