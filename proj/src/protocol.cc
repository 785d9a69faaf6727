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

#include "ce_sampler/protocol.h"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "ce_sampler/game_io.h"

namespace ce_sampler {

using nlohmann::json;

ProtocolConfig::ProtocolConfig(Rational epsilon, Rational delta, int k,
                               PreferenceRule rule)
    : epsilon_(std::move(epsilon)), delta_(std::move(delta)), k_(k), rule_(rule) {
  if (epsilon_ <= 0) throw std::invalid_argument("epsilon must be positive");
  if (delta_ <= 0) throw std::invalid_argument("delta must be positive");
  if (k_ < 0) throw std::invalid_argument("k must be nonnegative");
  per_round_bias_ = k_ == 0 ? Rational(0) : Rational(epsilon_ / (2 * k_));
  if (per_round_bias_ >= Rational(1, 2)) {
    throw std::invalid_argument("epsilon / (2k) must be below 1/2");
  }
}

json ProtocolConfig::ToJson() const {
  return {{"epsilon", ToString(epsilon_)},
          {"delta", ToString(delta_)},
          {"k", k_},
          {"per_round_bias", ToString(per_round_bias_)},
          {"preference_rule", ToString(rule_)}};
}

std::string ToString(CheckMove move) {
  return move == CheckMove::kAccept ? "A" : "R";
}

std::string ToString(MessageKind kind) {
  switch (kind) {
    case MessageKind::kPreference: return "preference";
    case MessageKind::kCoinResult: return "coin";
    case MessageKind::kGameMove: return "game_move";
    case MessageKind::kCheckMove: return "check";
  }
  return "unknown";
}

json Message::ToJson() const {
  json j{{"kind", ToString(kind)}, {"sender", Number(sender)}, {"round", round}};
  switch (kind) {
    case MessageKind::kPreference: j["sign"] = value; break;
    case MessageKind::kCoinResult: j["bit"] = value; break;
    case MessageKind::kGameMove: j["strategy"] = value; break;
    case MessageKind::kCheckMove: j["move"] = value == 0 ? "A" : "R"; break;
  }
  return j;
}

void Channel::Send(const Message& message) {
  const int s = Index(message.sender);
  if (message.round < last_round_[s]) {
    throw std::logic_error("channel: round went backwards for player " +
                           std::to_string(Number(message.sender)));
  }
  for (const Message& m : log_) {
    if (m.kind == message.kind && m.round == message.round &&
        m.sender == message.sender) {
      throw std::logic_error("channel: duplicate " + ToString(message.kind) +
                             " message in round " + std::to_string(message.round));
    }
  }
  last_round_[s] = message.round;
  log_.push_back(message);
  inbox_[Index(Other(message.sender))].push_back(message);
}

Message Channel::Receive(Player recipient) {
  auto& box = inbox_[Index(recipient)];
  if (box.empty()) throw std::logic_error("channel: no pending message");
  Message m = box.front();
  box.pop_front();
  return m;
}

PreferenceSign HonestBehavior::Announce(const RoundContext& ctx) const {
  return ctx.Truthful();
}

std::optional<CheaterRequest> HonestBehavior::CoinRequest(const RoundContext&) const {
  return std::nullopt;
}

int HonestBehavior::GameMove(const GameContext& ctx) const {
  return ctx.suggestion.Of(ctx.self);
}

CheckMove HonestBehavior::Check(const GameContext& ctx, int opponent_move) const {
  return opponent_move == ctx.suggestion.Of(Other(ctx.self)) ? CheckMove::kAccept
                                                              : CheckMove::kReject;
}

std::optional<CheaterRequest> GreedyBehavior::CoinRequest(const RoundContext&) const {
  return CheaterRequest{Rational(1)};
}

namespace {

int BestResponse(const GameContext& ctx) {
  const int obey = ctx.suggestion.Of(ctx.self);
  const int opp = ctx.suggestion.Of(Other(ctx.self));
  auto payoff = [&](int own) {
    JointStrategy s = ctx.self == Player::kOne ? JointStrategy{own, opp}
                                               : JointStrategy{opp, own};
    return ctx.game.Utility(ctx.self, s);
  };
  int best = obey;
  for (int s = 0; s < ctx.game.NumStrategies(ctx.self); ++s) {
    if (payoff(s) > payoff(best)) best = s;
  }
  return best;
}

JointDistribution MatchingDistribution(const Game& game, JointDistribution p) {
  if (p.rows() != game.rows() || p.cols() != game.cols()) {
    throw std::invalid_argument("protocol: distribution does not match the game");
  }
  return p;
}

}  // namespace

int DeviatorBehavior::GameMove(const GameContext& ctx) const {
  return BestResponse(ctx);
}

AdversaryPolicy AdversaryPolicy::FromJson(const json& doc) {
  AdversaryPolicy policy;
  if (!doc.is_object()) throw std::invalid_argument("policy: expected a JSON object");
  if (doc.contains("stage2")) {
    const std::string mode = doc.at("stage2").get<std::string>();
    if (mode == "best-response") {
      policy.best_response_in_game = true;
    } else if (mode != "follow") {
      throw std::invalid_argument("policy: stage2 must be follow or best-response");
    }
  }
  if (doc.contains("actions")) {
    for (const auto& [key, value] : doc.at("actions").items()) {
      PolicyAction action;
      if (value.contains("announce")) {
        const json& a = value.at("announce");
        int sign = 0;
        if (a.is_string()) {
          const std::string text = a.get<std::string>();
          sign = text == "+" ? 1 : text == "-" ? -1 : 0;
        } else if (a.is_number_integer()) {
          sign = a.get<int>();
        }
        if (sign != 1 && sign != -1) {
          throw std::invalid_argument("policy: announce at \"" + key + "\" must be +1 or -1");
        }
        action.announce = sign == 1 ? PreferenceSign::kPlus : PreferenceSign::kMinus;
      }
      if (value.contains("w")) {
        auto w = ParseRational(value.at("w").get<std::string>());
        if (!w || *w < 0 || *w > 1) {
          throw std::invalid_argument("policy: w at \"" + key + "\" must be a probability");
        }
        action.win_probability = *w;
      }
      policy.actions[BitPrefix::FromString(key)] = std::move(action);
    }
  }
  return policy;
}

json AdversaryPolicy::ToJson() const {
  json actions = json::object();
  for (const auto& [prefix, action] : this->actions) {
    json a = json::object();
    if (action.announce) a["announce"] = Value(*action.announce);
    if (action.win_probability) a["w"] = ToString(*action.win_probability);
    actions[prefix.ToString()] = a;
  }
  return {{"actions", actions},
          {"stage2", best_response_in_game ? "best-response" : "follow"}};
}

PreferenceSign PolicyBehavior::Announce(const RoundContext& ctx) const {
  auto it = policy_.actions.find(ctx.prefix);
  if (it != policy_.actions.end() && it->second.announce) return *it->second.announce;
  return ctx.Truthful();
}

std::optional<CheaterRequest> PolicyBehavior::CoinRequest(const RoundContext& ctx) const {
  auto it = policy_.actions.find(ctx.prefix);
  if (it != policy_.actions.end() && it->second.win_probability) {
    return CheaterRequest{*it->second.win_probability};
  }
  return std::nullopt;
}

int PolicyBehavior::GameMove(const GameContext& ctx) const {
  return policy_.best_response_in_game ? BestResponse(ctx) : ctx.suggestion.Of(ctx.self);
}

std::unique_ptr<PartyBehavior> MakeBehavior(const std::string& spec) {
  if (spec == "honest") return std::make_unique<HonestBehavior>();
  if (spec == "greedy") return std::make_unique<GreedyBehavior>();
  if (spec == "deviate") return std::make_unique<DeviatorBehavior>();
  const std::string prefix = "script:";
  if (spec.rfind(prefix, 0) == 0) {
    const std::string path = spec.substr(prefix.size());
    json doc = ParseJsonText(ReadFile(path), path);
    return std::make_unique<PolicyBehavior>(AdversaryPolicy::FromJson(doc), spec);
  }
  throw std::invalid_argument("unknown party behavior \"" + spec +
                              "\" (expected honest, greedy, deviate or script:<file>)");
}

std::vector<json> Transcript::ToJsonLines() const {
  std::vector<json> lines;
  for (const Message& m : messages) lines.push_back(m.ToJson());
  json summary{{"kind", "summary"}, {"ell", ell[0]}};
  if (output) {
    summary["output"] = {output->row, output->col};
  } else {
    summary["output"] = nullptr;
  }
  if (payoffs) {
    summary["payoffs"] = {ToString((*payoffs)[0]), ToString((*payoffs)[1])};
  }
  lines.push_back(summary);
  return lines;
}

ProtocolSession::ProtocolSession(Game game, JointDistribution p,
                                 const Rational& epsilon, const Rational& delta,
                                 PreferenceRule rule,
                                 std::optional<std::vector<int>> layout)
    : game_(std::move(game)),
      p_(MatchingDistribution(game_, std::move(p))),
      emulation_(MultisetEmulation::Build(p_, delta, std::move(layout))),
      config_(epsilon, delta, emulation_.k(), rule),
      tree_(emulation_, game_, rule),
      p_is_ce_(CheckCe(game_, p_)) {}

RoundRecord RunRound(const ProtocolSession& session, int round,
                     const std::array<BitPrefix, 2>& views,
                     const std::array<const PartyBehavior*, 2>& parties,
                     RandomStream& rng, Channel& channel) {
  RoundRecord record;
  record.round = round;
  for (Player p : {Player::kOne, Player::kTwo}) {
    RoundContext ctx{p, views[Index(p)], session.tree(), session.config(), std::nullopt};
    record.announced[Index(p)] = parties[Index(p)]->Announce(ctx);
    channel.Send({MessageKind::kPreference, p, round, Value(record.announced[Index(p)])});
  }
  // Each party learns the other's announcement.
  std::array<PreferenceSign, 2> heard;
  for (Player p : {Player::kOne, Player::kTwo}) {
    heard[Index(p)] = channel.Receive(p).value == 1 ? PreferenceSign::kPlus
                                                    : PreferenceSign::kMinus;
  }

  if (record.announced[0] == record.announced[1]) {
    record.resolution = Resolution::kAgreed;
    const int bit = PreferredBit(record.announced[0]);
    record.bits = {bit, bit};
    return record;
  }

  record.resolution = Resolution::kCoinFlipped;
  record.alice_wins_on = PreferredBit(record.announced[0]);
  record.bias = session.config().per_round_bias();
  WcfSpec spec(record.alice_wins_on, *record.bias);
  std::array<std::optional<CheaterRequest>, 2> requests;
  for (Player p : {Player::kOne, Player::kTwo}) {
    RoundContext ctx{p, views[Index(p)], session.tree(), session.config(),
                     heard[Index(p)]};
    requests[Index(p)] = parties[Index(p)]->CoinRequest(ctx);
  }
  WcfOutcome outcome = Run(spec, requests[0], requests[1], rng);
  record.bits = {outcome.alice_bit, outcome.bob_bit};
  for (Player p : {Player::kOne, Player::kTwo}) {
    channel.Send({MessageKind::kCoinResult, p, round, record.bits[Index(p)]});
  }
  for (Player p : {Player::kOne, Player::kTwo}) channel.Receive(p);
  return record;
}

Transcript ProtocolSession::Run(const PartyBehavior& one, const PartyBehavior& two,
                                RandomStream& rng) const {
  Transcript t;
  t.config = config_.ToJson();
  Channel channel;
  std::array<BitPrefix, 2> views;
  const std::array<const PartyBehavior*, 2> parties{&one, &two};
  for (int j = 1; j <= config_.k(); ++j) {
    RoundRecord r = RunRound(*this, j, views, parties, rng, channel);
    for (int i = 0; i < 2; ++i) views[i] = views[i].Append(r.bits[i]);
    t.rounds.push_back(std::move(r));
  }
  for (int i = 0; i < 2; ++i) {
    t.ell[i] = views[i].Value();
    t.outputs[i] = emulation_.entry(t.ell[i]);
  }
  if (t.outputs[0] == t.outputs[1]) t.output = t.outputs[0];
  t.messages = channel.log();
  return t;
}

BitDistribution ProtocolSession::ExactOutputDistribution(const PartyBehavior& one,
                                                         const PartyBehavior& two) const {
  BitDistribution out = BitDistribution::Zero(config_.k());
  std::function<void(const BitPrefix&, const Rational&)> walk =
      [&](const BitPrefix& prefix, const Rational& mass) {
        if (mass == 0) return;
        if (prefix.size() == config_.k()) {
          out.probs[prefix.Value()] += mass;
          return;
        }
        std::array<PreferenceSign, 2> announced;
        std::array<const PartyBehavior*, 2> parties{&one, &two};
        for (Player p : {Player::kOne, Player::kTwo}) {
          RoundContext ctx{p, prefix, tree_, config_, std::nullopt};
          announced[Index(p)] = parties[Index(p)]->Announce(ctx);
        }
        if (announced[0] == announced[1]) {
          walk(prefix.Append(PreferredBit(announced[0])), mass);
          return;
        }
        WcfSpec spec(PreferredBit(announced[0]), config_.per_round_bias());
        std::array<std::optional<CheaterRequest>, 2> requests;
        for (Player p : {Player::kOne, Player::kTwo}) {
          RoundContext ctx{p, prefix, tree_, config_, announced[Index(Other(p))]};
          requests[Index(p)] = parties[Index(p)]->CoinRequest(ctx);
        }
        auto dist = Distribution(spec, requests[0], requests[1]);
        walk(prefix.Append(0), mass * dist[0]);
        walk(prefix.Append(1), mass * dist[1]);
      };
  walk(BitPrefix(), Rational(1));
  return out;
}

Transcript RunProtocol(const Game& game, const JointDistribution& p,
                       const Rational& epsilon, const Rational& delta,
                       const PartyBehavior& one, const PartyBehavior& two,
                       RandomStream& rng) {
  ProtocolSession session(game, p, epsilon, delta);
  return session.Run(one, two, rng);
}

PreferenceSign ComputePreference(const RoundTree& tree, const BitPrefix& prefix,
                                 Player player) {
  return tree.Preference(prefix, player);
}

}  // namespace ce_sampler
