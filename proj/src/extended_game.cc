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

#include "ce_sampler/extended_game.h"

namespace ce_sampler {

std::array<Rational, 2> Settle(const Game& game, JointStrategy stage2,
                               const std::array<CheckMove, 2>& checks) {
  if (checks[0] == CheckMove::kReject || checks[1] == CheckMove::kReject) {
    return {Rational(0), Rational(0)};
  }
  return {game.Utility(Player::kOne, stage2), game.Utility(Player::kTwo, stage2)};
}

namespace {

// Runs stages two and three given each party's own protocol output.
ExtendedOutcome PlayStages(const Game& game,
                           const std::array<JointStrategy, 2>& suggestions,
                           const std::array<const PartyBehavior*, 2>& parties,
                           int k, Channel* channel) {
  ExtendedOutcome out;
  std::array<int, 2> moves;
  for (Player p : {Player::kOne, Player::kTwo}) {
    GameContext ctx{p, game, suggestions[Index(p)]};
    moves[Index(p)] = parties[Index(p)]->GameMove(ctx);
    if (channel) channel->Send({MessageKind::kGameMove, p, k + 1, moves[Index(p)]});
  }
  out.stage2 = {moves[0], moves[1]};
  // Checks are sequential: player one, then player two.
  for (Player p : {Player::kOne, Player::kTwo}) {
    GameContext ctx{p, game, suggestions[Index(p)]};
    out.checks[Index(p)] = parties[Index(p)]->Check(ctx, moves[Index(Other(p))]);
    if (channel) {
      channel->Send({MessageKind::kCheckMove, p, k + 2,
                     out.checks[Index(p)] == CheckMove::kAccept ? 0 : 1});
    }
  }
  out.payoffs = Settle(game, out.stage2, out.checks);
  return out;
}

}  // namespace

ExtendedPlay PlayExtendedGame(const ProtocolSession& session,
                              const PartyBehavior& one, const PartyBehavior& two,
                              RandomStream& rng) {
  ExtendedPlay play;
  play.transcript = session.Run(one, two, rng);
  Transcript& t = play.transcript;

  // Continue the stage-one channel log so round ordering is still checked.
  Channel channel;
  for (const Message& m : t.messages) channel.Send(m);
  play.outcome = PlayStages(session.game(), t.outputs, {&one, &two},
                            session.config().k(), &channel);
  t.messages = channel.log();
  t.game_moves = std::array<int, 2>{play.outcome.stage2.row, play.outcome.stage2.col};
  t.checks = play.outcome.checks;
  t.payoffs = play.outcome.payoffs;
  return play;
}

ExtendedOutcome SettleFromLeaf(const ProtocolSession& session, std::uint64_t leaf,
                               const PartyBehavior& one, const PartyBehavior& two) {
  const JointStrategy s = session.emulation().entry(leaf);
  return PlayStages(session.game(), {s, s}, {&one, &two}, session.config().k(), nullptr);
}

std::array<Rational, 2> ExactExtendedPayoffs(const ProtocolSession& session,
                                             const PartyBehavior& one,
                                             const PartyBehavior& two) {
  BitDistribution q = session.ExactOutputDistribution(one, two);
  std::array<Rational, 2> expected{Rational(0), Rational(0)};
  for (std::uint64_t leaf = 0; leaf < q.probs.size(); ++leaf) {
    if (q.probs[leaf] == 0) continue;
    ExtendedOutcome out = SettleFromLeaf(session, leaf, one, two);
    for (int i = 0; i < 2; ++i) expected[i] += q.probs[leaf] * out.payoffs[i];
  }
  return expected;
}

Game AugmentedNormalForm(const Game& game) {
  const int n1 = game.rows(), n2 = game.cols();
  std::vector<std::string> labels_one, labels_two;
  for (CheckMove c : {CheckMove::kAccept, CheckMove::kReject}) {
    const std::string suffix = c == CheckMove::kAccept ? ",Accept" : ",Reject";
    for (const auto& l : game.labels(Player::kOne)) labels_one.push_back(l + suffix);
    for (const auto& l : game.labels(Player::kTwo)) labels_two.push_back(l + suffix);
  }
  std::vector<std::vector<Rational>> u1(2 * n1, std::vector<Rational>(2 * n2));
  std::vector<std::vector<Rational>> u2 = u1;
  for (int r = 0; r < 2 * n1; ++r) {
    for (int c = 0; c < 2 * n2; ++c) {
      const std::array<CheckMove, 2> checks{
          r < n1 ? CheckMove::kAccept : CheckMove::kReject,
          c < n2 ? CheckMove::kAccept : CheckMove::kReject};
      auto pay = Settle(game, {r % n1, c % n2}, checks);
      u1[r][c] = pay[0];
      u2[r][c] = pay[1];
    }
  }
  return Game(std::move(labels_one), std::move(labels_two), std::move(u1),
              std::move(u2));
}

}  // namespace ce_sampler
