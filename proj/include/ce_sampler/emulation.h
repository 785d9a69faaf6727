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

// A joint distribution approximated by the uniform distribution over a
// table of 2^k joint strategies. Table index l is read as the bit string
// c^1 ... c^k with c^1 the most significant bit, so every bit prefix names a
// contiguous, fully populated block of the table.

#ifndef CE_SAMPLER_EMULATION_H_
#define CE_SAMPLER_EMULATION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ce_sampler/game.h"
#include "json.hpp"

namespace ce_sampler {

// Bits c^1..c^m of a table index, m <= k.
class BitPrefix {
 public:
  BitPrefix() = default;
  explicit BitPrefix(std::vector<int> bits);
  // Parses "", "0", "101", ...; throws std::invalid_argument otherwise.
  static BitPrefix FromString(const std::string& text);

  int size() const { return static_cast<int>(bits_.size()); }
  int operator[](int i) const { return bits_[i]; }
  const std::vector<int>& bits() const { return bits_; }

  BitPrefix Append(int bit) const;
  // Integer value of the bits, most significant first.
  std::uint64_t Value() const;
  std::string ToString() const;

  auto operator<=>(const BitPrefix&) const = default;

 private:
  std::vector<int> bits_;
};

// Probability vector over {0,1}^bits, indexed by the integer value of the
// bit string (most significant bit first).
struct BitDistribution {
  int bits = 0;
  std::vector<Rational> probs;

  static BitDistribution Zero(int bits);
  const Rational& at(std::uint64_t index) const { return probs[index]; }
  Rational Total() const;
  friend bool operator==(const BitDistribution&, const BitDistribution&) = default;
};

// Sums out the last (d.bits - m) bits. marginal(d, 0) is the single total mass.
BitDistribution Marginal(const BitDistribution& d, int m);

// Sum of absolute differences; throws std::invalid_argument on a size mismatch.
Rational L1Distance(const BitDistribution& a, const BitDistribution& b);
Rational L1Distance(const JointDistribution& a, const JointDistribution& b);

class MultisetEmulation {
 public:
  // k is the least integer with 2^k >= |S| / delta. Copy counts come from
  // largest-remainder rounding of 2^k p(s) (ties to the earlier strategy in
  // row-major order); copies are laid out contiguously in `layout` order,
  // which defaults to row-major. Throws std::invalid_argument if delta <= 0,
  // if k would exceed 30, or if `layout` is not a permutation of the cells.
  static MultisetEmulation Build(const JointDistribution& p,
                                 const Rational& delta,
                                 std::optional<std::vector<int>> layout = std::nullopt);

  int k() const { return k_; }
  std::uint64_t size() const { return table_.size(); }
  const Rational& delta() const { return delta_; }
  const JointDistribution& source() const { return source_; }
  const std::vector<JointStrategy>& table() const { return table_; }
  const JointStrategy& entry(std::uint64_t index) const { return table_[index]; }
  // Copies per joint strategy, row-major.
  const std::vector<std::uint64_t>& counts() const { return counts_; }

  // The uniform distribution over the table, as a joint distribution.
  JointDistribution Induced() const;

  // First and one-past-last table index under a prefix.
  std::pair<std::uint64_t, std::uint64_t> Block(const BitPrefix& prefix) const;

  // Average of u_player over the entries whose index starts with
  // prefix + next_bit. Requires prefix.size() < k.
  Rational ConditionalExpectedUtility(const Game& game, const BitPrefix& prefix,
                                      int next_bit, Player player) const;

  // {"k": 3, "table": ["0,0", ...]}
  nlohmann::json ToJson() const;

 private:
  MultisetEmulation(int k, Rational delta, JointDistribution source,
                    std::vector<JointStrategy> table,
                    std::vector<std::uint64_t> counts)
      : k_(k), delta_(std::move(delta)), source_(std::move(source)),
        table_(std::move(table)), counts_(std::move(counts)) {}

  int k_;
  Rational delta_;
  JointDistribution source_;
  std::vector<JointStrategy> table_;
  std::vector<std::uint64_t> counts_;
};

// Least k >= 0 with 2^k * delta >= cells.
int RoundsFor(int cells, const Rational& delta);

}  // namespace ce_sampler

#endif  // CE_SAMPLER_EMULATION_H_
