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

#include "ce_sampler/game.h"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace ce_sampler {
namespace {

std::vector<std::string> DefaultLabels(int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

std::vector<Rational> Flatten(const std::vector<std::vector<Rational>>& m,
                              int rows, int cols, const char* name) {
  if (static_cast<int>(m.size()) != rows) {
    throw std::invalid_argument(std::string(name) + ": expected " +
                                std::to_string(rows) + " rows, got " +
                                std::to_string(m.size()));
  }
  std::vector<Rational> flat;
  flat.reserve(rows * cols);
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(m[r].size()) != cols) {
      throw std::invalid_argument(std::string(name) + ": row " +
                                  std::to_string(r) + " has " +
                                  std::to_string(m[r].size()) +
                                  " entries, expected " + std::to_string(cols));
    }
    flat.insert(flat.end(), m[r].begin(), m[r].end());
  }
  return flat;
}

void CheckProbabilityVector(const std::vector<Rational>& v, const char* name) {
  Rational total = 0;
  for (const Rational& x : v) {
    if (x < 0) throw std::invalid_argument(std::string(name) + ": negative entry");
    total += x;
  }
  if (total != 1) {
    throw std::invalid_argument(std::string(name) + ": sums to " +
                                ToString(total) + ", expected 1");
  }
}

// Sum over the opponent's strategies of p(s_i, s_-i) * u_i(t_i, s_-i).
Rational ConditionalPayoff(const Game& game, const JointDistribution& p,
                           Player player, int suggested, int played) {
  Rational sum = 0;
  const int n = game.NumStrategies(Other(player));
  for (int o = 0; o < n; ++o) {
    JointStrategy s = player == Player::kOne ? JointStrategy{suggested, o}
                                             : JointStrategy{o, suggested};
    JointStrategy t = player == Player::kOne ? JointStrategy{played, o}
                                             : JointStrategy{o, played};
    if (p(s) != 0) sum += p(s) * game.Utility(player, t);
  }
  return sum;
}

}  // namespace

Game::Game(std::vector<std::string> labels_one,
           std::vector<std::string> labels_two,
           std::vector<std::vector<Rational>> utility_one,
           std::vector<std::vector<Rational>> utility_two)
    : Game(std::move(labels_one), std::move(labels_two), utility_one,
           std::move(utility_two), /*default_labels=*/false) {}

Game::Game(std::vector<std::string> labels_one,
           std::vector<std::string> labels_two,
           const std::vector<std::vector<Rational>>& utility_one,
           std::vector<std::vector<Rational>> utility_two, bool default_labels) {
  rows_ = static_cast<int>(utility_one.size());
  if (rows_ == 0 || utility_one[0].empty()) {
    throw std::invalid_argument("u1: game needs at least one strategy per player");
  }
  cols_ = static_cast<int>(utility_one[0].size());
  utilities_[0] = Flatten(utility_one, rows_, cols_, "u1");
  utilities_[1] = Flatten(utility_two, rows_, cols_, "u2");
  if (default_labels) {
    labels_one = DefaultLabels(rows_);
    labels_two = DefaultLabels(cols_);
  }
  if (static_cast<int>(labels_one.size()) != rows_ ||
      static_cast<int>(labels_two.size()) != cols_) {
    throw std::invalid_argument(
        "strategies: label counts do not match the utility matrices");
  }
  labels_[0] = std::move(labels_one);
  labels_[1] = std::move(labels_two);
}

Game::Game(std::vector<std::vector<Rational>> utility_one,
           std::vector<std::vector<Rational>> utility_two)
    : Game({}, {}, utility_one, std::move(utility_two), /*default_labels=*/true) {}

std::vector<std::vector<Rational>> Game::Matrix(Player p) const {
  std::vector<std::vector<Rational>> m(rows_, std::vector<Rational>(cols_));
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m[r][c] = Utility(p, r, c);
  return m;
}

JointDistribution::JointDistribution(int rows, int cols,
                                     std::vector<Rational> probs)
    : rows_(rows), cols_(cols), probs_(std::move(probs)) {
  if (rows <= 0 || cols <= 0 ||
      static_cast<int>(probs_.size()) != rows * cols) {
    throw std::invalid_argument("distribution: size does not match the game");
  }
  CheckProbabilityVector(probs_, "distribution");
}

JointDistribution JointDistribution::PointMass(int rows, int cols,
                                               JointStrategy s) {
  std::vector<Rational> probs(rows * cols, Rational(0));
  probs[s.row * cols + s.col] = 1;
  return JointDistribution(rows, cols, std::move(probs));
}

std::vector<Rational> JointDistribution::Marginal(Player p) const {
  std::vector<Rational> m(p == Player::kOne ? rows_ : cols_, Rational(0));
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      m[p == Player::kOne ? r : c] += probs_[r * cols_ + c];
  return m;
}

void ProductDistribution::Validate() const {
  CheckProbabilityVector(one, "player 1 mixed strategy");
  CheckProbabilityVector(two, "player 2 mixed strategy");
}

JointDistribution ProductDistribution::ToJoint() const {
  Validate();
  std::vector<Rational> probs;
  probs.reserve(one.size() * two.size());
  for (const Rational& a : one)
    for (const Rational& b : two) probs.push_back(a * b);
  return JointDistribution(static_cast<int>(one.size()),
                           static_cast<int>(two.size()), std::move(probs));
}

Game Normalize(const Game& game) {
  Game out = game;
  for (auto& u : out.utilities_) {
    auto [lo, hi] = std::minmax_element(u.begin(), u.end());
    const Rational min = *lo;
    const Rational range = *hi - *lo;
    for (Rational& x : u) x = range == 0 ? Rational(0) : Rational((x - min) / range);
  }
  out.normalized_ = true;
  return out;
}

Rational ExpectedUtility(const Game& game, const JointDistribution& dist,
                         Player player) {
  if (dist.rows() != game.rows() || dist.cols() != game.cols()) {
    throw std::invalid_argument("ExpectedUtility: distribution shape mismatch");
  }
  Rational sum = 0;
  for (int i = 0; i < game.NumJoint(); ++i) {
    if (dist.at(i) != 0) sum += dist.at(i) * game.Utility(player, game.Unflat(i));
  }
  return sum;
}

bool CheckPureNe(const Game& game, JointStrategy s) {
  for (int r = 0; r < game.rows(); ++r) {
    if (game.Utility(Player::kOne, r, s.col) > game.Utility(Player::kOne, s))
      return false;
  }
  for (int c = 0; c < game.cols(); ++c) {
    if (game.Utility(Player::kTwo, s.row, c) > game.Utility(Player::kTwo, s))
      return false;
  }
  return true;
}

bool CheckMixedNe(const Game& game, const ProductDistribution& dist,
                  const Rational& tolerance) {
  dist.Validate();
  if (static_cast<int>(dist.one.size()) != game.rows() ||
      static_cast<int>(dist.two.size()) != game.cols()) {
    throw std::invalid_argument("CheckMixedNe: strategy vector size mismatch");
  }
  for (Player p : {Player::kOne, Player::kTwo}) {
    const std::vector<Rational>& own = dist.Of(p);
    const std::vector<Rational>& opp = dist.Of(Other(p));
    std::vector<Rational> payoff(own.size(), Rational(0));
    for (int s = 0; s < static_cast<int>(own.size()); ++s) {
      for (int o = 0; o < static_cast<int>(opp.size()); ++o) {
        JointStrategy js = p == Player::kOne ? JointStrategy{s, o}
                                             : JointStrategy{o, s};
        payoff[s] += opp[o] * game.Utility(p, js);
      }
    }
    const Rational best = *std::max_element(payoff.begin(), payoff.end());
    for (int s = 0; s < static_cast<int>(own.size()); ++s) {
      if (own[s] > 0 && best - payoff[s] > tolerance) return false;
    }
  }
  return true;
}

bool CheckCe(const Game& game, const JointDistribution& p) {
  for (Player player : {Player::kOne, Player::kTwo}) {
    const int n = game.NumStrategies(player);
    for (int s = 0; s < n; ++s) {
      const Rational obey = ConditionalPayoff(game, p, player, s, s);
      for (int t = 0; t < n; ++t) {
        if (t != s && ConditionalPayoff(game, p, player, s, t) > obey)
          return false;
      }
    }
  }
  return true;
}

Rational MaxCeDeviationGain(const Game& game, const JointDistribution& p,
                            Player player) {
  // The best deviation map picks the best replacement for each suggestion
  // independently, so the maximum decomposes per signal.
  Rational gain = 0;
  const int n = game.NumStrategies(player);
  for (int s = 0; s < n; ++s) {
    const Rational obey = ConditionalPayoff(game, p, player, s, s);
    Rational best = obey;
    for (int t = 0; t < n; ++t) {
      Rational v = ConditionalPayoff(game, p, player, s, t);
      if (v > best) best = v;
    }
    gain += best - obey;
  }
  return gain;
}

}  // namespace ce_sampler
