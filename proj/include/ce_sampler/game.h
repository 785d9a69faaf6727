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

#ifndef CE_SAMPLER_GAME_H_
#define CE_SAMPLER_GAME_H_

#include <array>
#include <compare>
#include <string>
#include <vector>

#include "ce_sampler/rational.h"

namespace ce_sampler {

enum class Player { kOne = 0, kTwo = 1 };

inline int Index(Player p) { return static_cast<int>(p); }
inline Player Other(Player p) {
  return p == Player::kOne ? Player::kTwo : Player::kOne;
}
// 1-based number, as shown to users.
inline int Number(Player p) { return Index(p) + 1; }

struct JointStrategy {
  int row = 0;  // player one's strategy
  int col = 0;  // player two's strategy

  int Of(Player p) const { return p == Player::kOne ? row : col; }
  auto operator<=>(const JointStrategy&) const = default;
};

// Two-player strategic game with exact utilities, stored row-major.
class Game {
 public:
  // Throws std::invalid_argument if the matrices are empty, ragged, or
  // disagree in shape with each other or with the labels.
  Game(std::vector<std::string> labels_one, std::vector<std::string> labels_two,
       std::vector<std::vector<Rational>> utility_one,
       std::vector<std::vector<Rational>> utility_two);

  // Unlabelled convenience constructor; strategies are named "0", "1", ...
  Game(std::vector<std::vector<Rational>> utility_one,
       std::vector<std::vector<Rational>> utility_two);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int NumStrategies(Player p) const { return p == Player::kOne ? rows_ : cols_; }
  // |S|, the number of joint strategies.
  int NumJoint() const { return rows_ * cols_; }

  const std::vector<std::string>& labels(Player p) const {
    return labels_[Index(p)];
  }

  const Rational& Utility(Player p, JointStrategy s) const {
    return utilities_[Index(p)][Flat(s)];
  }
  const Rational& Utility(Player p, int row, int col) const {
    return utilities_[Index(p)][row * cols_ + col];
  }

  int Flat(JointStrategy s) const { return s.row * cols_ + s.col; }
  JointStrategy Unflat(int index) const {
    return {index / cols_, index % cols_};
  }

  bool normalized() const { return normalized_; }

  // Row-major copy of one player's matrix.
  std::vector<std::vector<Rational>> Matrix(Player p) const;

  friend bool operator==(const Game&, const Game&) = default;

 private:
  friend Game Normalize(const Game& game);

  Game(std::vector<std::string> labels_one, std::vector<std::string> labels_two,
       const std::vector<std::vector<Rational>>& utility_one,
       std::vector<std::vector<Rational>> utility_two, bool default_labels);

  int rows_ = 0;
  int cols_ = 0;
  std::array<std::vector<std::string>, 2> labels_;
  std::array<std::vector<Rational>, 2> utilities_;
  bool normalized_ = false;
};

// Probability vector over joint strategies, row-major, summing to exactly 1.
class JointDistribution {
 public:
  // Throws std::invalid_argument on negative entries, a sum other than 1,
  // or a size that is not rows * cols.
  JointDistribution(int rows, int cols, std::vector<Rational> probs);

  static JointDistribution PointMass(int rows, int cols, JointStrategy s);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int size() const { return rows_ * cols_; }

  const Rational& operator()(JointStrategy s) const {
    return probs_[s.row * cols_ + s.col];
  }
  const Rational& at(int flat) const { return probs_[flat]; }
  const std::vector<Rational>& probs() const { return probs_; }

  // Player one's marginal over rows, or player two's over columns.
  std::vector<Rational> Marginal(Player p) const;

  friend bool operator==(const JointDistribution&,
                         const JointDistribution&) = default;

 private:
  int rows_;
  int cols_;
  std::vector<Rational> probs_;
};

// Independent mixed strategies, one per player.
struct ProductDistribution {
  std::vector<Rational> one;
  std::vector<Rational> two;

  const std::vector<Rational>& Of(Player p) const {
    return p == Player::kOne ? one : two;
  }
  // Throws std::invalid_argument unless both vectors are probability vectors.
  void Validate() const;
  JointDistribution ToJoint() const;
};

// Per-player affine rescaling into [0, 1]. A player whose utilities are all
// equal maps to all zeros. Idempotent.
Game Normalize(const Game& game);

Rational ExpectedUtility(const Game& game, const JointDistribution& dist,
                         Player player);

bool CheckPureNe(const Game& game, JointStrategy s);

// Every strategy in each player's support is within `tolerance` of a best
// response to the opponent's mixed strategy.
bool CheckMixedNe(const Game& game, const ProductDistribution& dist,
                  const Rational& tolerance);

// Exact correlated-equilibrium inequalities, every (s_i, s_i') pair.
bool CheckCe(const Game& game, const JointDistribution& p);

// Largest gain over all deviation maps S_i -> S_i, averaged over p. Never
// negative; p is an epsilon-CE iff this is <= epsilon for both players.
Rational MaxCeDeviationGain(const Game& game, const JointDistribution& p,
                            Player player);

}  // namespace ce_sampler

#endif  // CE_SAMPLER_GAME_H_
