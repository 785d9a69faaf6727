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

// Bit-by-bit correlated strategy sampling between two parties.
//
// Both parties emulate p by the same 2^k table. In each of k rounds they
// announce which next bit they prefer; if they agree the bit is set, and if
// they disagree a weak coin flip with bias epsilon / (2k) decides it, with
// player one as Alice winning on his announced bit. After k rounds each
// party outputs the table entry at the index spelled by its bits.

#ifndef CE_SAMPLER_PROTOCOL_H_
#define CE_SAMPLER_PROTOCOL_H_

#include <array>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ce_sampler/coin_flip.h"
#include "ce_sampler/emulation.h"
#include "ce_sampler/game.h"
#include "ce_sampler/random.h"
#include "ce_sampler/round_tree.h"
#include "json.hpp"

namespace ce_sampler {

class ProtocolConfig {
 public:
  // Throws std::invalid_argument unless epsilon > 0, delta > 0, k >= 0 and
  // the per-round bias is below 1/2.
  ProtocolConfig(Rational epsilon, Rational delta, int k,
                 PreferenceRule rule = PreferenceRule::kHonestContinuation);

  const Rational& epsilon() const { return epsilon_; }
  const Rational& delta() const { return delta_; }
  int k() const { return k_; }
  PreferenceRule rule() const { return rule_; }
  // epsilon / (2k); zero when k == 0 since no coin is ever flipped.
  const Rational& per_round_bias() const { return per_round_bias_; }

  nlohmann::json ToJson() const;

 private:
  Rational epsilon_;
  Rational delta_;
  int k_;
  PreferenceRule rule_;
  Rational per_round_bias_;
};

enum class CheckMove { kAccept, kReject };
std::string ToString(CheckMove move);

enum class MessageKind { kPreference, kCoinResult, kGameMove, kCheckMove };
std::string ToString(MessageKind kind);

struct Message {
  MessageKind kind;
  Player sender;
  // 1-based protocol round for preferences and coin results; k + 1 for the
  // game move and k + 2 for the check move.
  int round;
  // Sign (+1/-1), bit, strategy index, or 0 = Accept / 1 = Reject.
  int value;

  nlohmann::json ToJson() const;
};

// Synchronous, lossless channel. Every message is logged and queued for the
// other party. Throws std::logic_error if a sender's rounds go backwards or
// a (kind, round, sender) triple repeats.
class Channel {
 public:
  void Send(const Message& message);
  // Next undelivered message addressed to `recipient`; throws
  // std::logic_error if there is none.
  Message Receive(Player recipient);

  const std::vector<Message>& log() const { return log_; }

 private:
  std::vector<Message> log_;
  std::array<std::deque<Message>, 2> inbox_;
  std::array<int, 2> last_round_{0, 0};
};

// What a party sees when asked for a stage-one decision.
struct RoundContext {
  Player self;
  const BitPrefix& prefix;
  const RoundTree& tree;
  const ProtocolConfig& config;
  // Set when asked for a coin request: the opponent's announcement.
  std::optional<PreferenceSign> opponent_announcement;

  PreferenceSign Truthful() const { return tree.Preference(prefix, self); }
};

struct GameContext {
  Player self;
  const Game& game;
  // This party's protocol output.
  JointStrategy suggestion;
};

// A party's strategy in the extended game. Implementations must be
// deterministic functions of their arguments; all randomness lives in the
// coin flip. That is what makes exact outcome distributions computable.
class PartyBehavior {
 public:
  virtual ~PartyBehavior() = default;
  virtual std::string name() const = 0;
  virtual PreferenceSign Announce(const RoundContext& ctx) const = 0;
  // Called only in rounds where the announcements differ. nullopt follows
  // the honest coin-flip protocol.
  virtual std::optional<CheaterRequest> CoinRequest(const RoundContext& ctx) const = 0;
  virtual int GameMove(const GameContext& ctx) const = 0;
  virtual CheckMove Check(const GameContext& ctx, int opponent_move) const = 0;
};

// The honest strategy: announce the true preference, flip honestly, play
// the suggested strategy, and accept iff the opponent played his.
class HonestBehavior : public PartyBehavior {
 public:
  std::string name() const override { return "honest"; }
  PreferenceSign Announce(const RoundContext& ctx) const override;
  std::optional<CheaterRequest> CoinRequest(const RoundContext& ctx) const override;
  int GameMove(const GameContext& ctx) const override;
  CheckMove Check(const GameContext& ctx, int opponent_move) const override;
};

// Announces truthfully and asks to win every coin flip it takes part in.
class GreedyBehavior : public HonestBehavior {
 public:
  std::string name() const override { return "greedy"; }
  std::optional<CheaterRequest> CoinRequest(const RoundContext& ctx) const override;
};

// Honest in the protocol, but in the game stage best-responds to the
// opponent's suggested strategy whenever that strictly beats obeying.
class DeviatorBehavior : public HonestBehavior {
 public:
  std::string name() const override { return "deviate"; }
  int GameMove(const GameContext& ctx) const override;
};

// Per-prefix stage-one instructions. Missing prefixes, or missing fields,
// fall back to honest behavior.
struct PolicyAction {
  std::optional<PreferenceSign> announce;
  std::optional<Rational> win_probability;
};

struct AdversaryPolicy {
  std::map<BitPrefix, PolicyAction> actions;
  bool best_response_in_game = false;

  // {"actions": {"": {"announce": "+", "w": "11/20"}, "01": {...}},
  //  "stage2": "follow" | "best-response"}
  static AdversaryPolicy FromJson(const nlohmann::json& doc);
  nlohmann::json ToJson() const;
};

class PolicyBehavior : public HonestBehavior {
 public:
  explicit PolicyBehavior(AdversaryPolicy policy, std::string name = "policy")
      : policy_(std::move(policy)), name_(std::move(name)) {}

  std::string name() const override { return name_; }
  PreferenceSign Announce(const RoundContext& ctx) const override;
  std::optional<CheaterRequest> CoinRequest(const RoundContext& ctx) const override;
  int GameMove(const GameContext& ctx) const override;

  const AdversaryPolicy& policy() const { return policy_; }

 private:
  AdversaryPolicy policy_;
  std::string name_;
};

// "honest", "greedy", "deviate", or "script:<path>" (a policy JSON file).
std::unique_ptr<PartyBehavior> MakeBehavior(const std::string& spec);

enum class Resolution { kAgreed, kCoinFlipped };

struct RoundRecord {
  int round = 0;
  std::array<PreferenceSign, 2> announced{PreferenceSign::kPlus, PreferenceSign::kPlus};
  Resolution resolution = Resolution::kAgreed;
  std::array<int, 2> bits{0, 0};
  // Set on coin-flipped rounds.
  std::optional<Rational> bias;
  int alice_wins_on = 0;
};

struct Transcript {
  nlohmann::json config;
  std::vector<RoundRecord> rounds;
  std::array<std::uint64_t, 2> ell{0, 0};
  std::array<JointStrategy, 2> outputs;
  // nullopt when the parties' outputs differ.
  std::optional<JointStrategy> output;
  std::optional<std::array<int, 2>> game_moves;
  std::optional<std::array<CheckMove, 2>> checks;
  std::optional<std::array<Rational, 2>> payoffs;
  std::vector<Message> messages;

  // One JSON object per message followed by a summary record.
  std::vector<nlohmann::json> ToJsonLines() const;
};

// Everything both parties compute locally before the first round: the
// emulation table and the round tree.
class ProtocolSession {
 public:
  // The protocol runs on any p; `p_is_ce()` reports whether it should.
  ProtocolSession(Game game, JointDistribution p, const Rational& epsilon,
                  const Rational& delta,
                  PreferenceRule rule = PreferenceRule::kHonestContinuation,
                  std::optional<std::vector<int>> layout = std::nullopt);

  const Game& game() const { return game_; }
  const JointDistribution& p() const { return p_; }
  const ProtocolConfig& config() const { return config_; }
  const MultisetEmulation& emulation() const { return emulation_; }
  const RoundTree& tree() const { return tree_; }
  bool p_is_ce() const { return p_is_ce_; }

  // One run of stage one. Stage-two and stage-three fields stay empty.
  Transcript Run(const PartyBehavior& one, const PartyBehavior& two,
                 RandomStream& rng) const;

  // Exact distribution of the common output index, by enumerating the
  // round tree. Requires behaviors under which the outputs always agree,
  // which holds for every behavior against the ideal coin flip.
  BitDistribution ExactOutputDistribution(const PartyBehavior& one,
                                          const PartyBehavior& two) const;

 private:
  Game game_;
  JointDistribution p_;
  MultisetEmulation emulation_;
  ProtocolConfig config_;
  RoundTree tree_;
  bool p_is_ce_;
};

// Announcements, coin flip if needed, and the resulting bits for round
// `round` (1-based). Messages go through `channel`.
RoundRecord RunRound(const ProtocolSession& session, int round,
                     const std::array<BitPrefix, 2>& views,
                     const std::array<const PartyBehavior*, 2>& parties,
                     RandomStream& rng, Channel& channel);

// Builds a session and runs it once.
Transcript RunProtocol(const Game& game, const JointDistribution& p,
                       const Rational& epsilon, const Rational& delta,
                       const PartyBehavior& one, const PartyBehavior& two,
                       RandomStream& rng);

// The truthful preference, exposed for callers outside a run.
PreferenceSign ComputePreference(const RoundTree& tree, const BitPrefix& prefix,
                                 Player player);

}  // namespace ce_sampler

#endif  // CE_SAMPLER_PROTOCOL_H_
