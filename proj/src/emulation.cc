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

#include "ce_sampler/emulation.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ce_sampler {
namespace {

constexpr int kMaxRounds = 30;

}  // namespace

BitPrefix::BitPrefix(std::vector<int> bits) : bits_(std::move(bits)) {
  for (int b : bits_) {
    if (b != 0 && b != 1) throw std::invalid_argument("BitPrefix: bits must be 0 or 1");
  }
}

BitPrefix BitPrefix::FromString(const std::string& text) {
  std::vector<int> bits;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("BitPrefix: \"" + text + "\" is not a bit string");
    }
    bits.push_back(c - '0');
  }
  return BitPrefix(std::move(bits));
}

BitPrefix BitPrefix::Append(int bit) const {
  std::vector<int> bits = bits_;
  bits.push_back(bit);
  return BitPrefix(std::move(bits));
}

std::uint64_t BitPrefix::Value() const {
  std::uint64_t v = 0;
  for (int b : bits_) v = (v << 1) | static_cast<std::uint64_t>(b);
  return v;
}

std::string BitPrefix::ToString() const {
  std::string s;
  for (int b : bits_) s.push_back(static_cast<char>('0' + b));
  return s;
}

BitDistribution BitDistribution::Zero(int bits) {
  return {bits, std::vector<Rational>(std::size_t{1} << bits, Rational(0))};
}

Rational BitDistribution::Total() const {
  Rational t = 0;
  for (const Rational& p : probs) t += p;
  return t;
}

BitDistribution Marginal(const BitDistribution& d, int m) {
  if (m < 0 || m > d.bits) throw std::invalid_argument("Marginal: m out of range");
  BitDistribution out = BitDistribution::Zero(m);
  const int shift = d.bits - m;
  for (std::size_t i = 0; i < d.probs.size(); ++i) out.probs[i >> shift] += d.probs[i];
  return out;
}

Rational L1Distance(const BitDistribution& a, const BitDistribution& b) {
  if (a.bits != b.bits || a.probs.size() != b.probs.size()) {
    throw std::invalid_argument("L1Distance: distributions over different spaces");
  }
  Rational sum = 0;
  for (std::size_t i = 0; i < a.probs.size(); ++i) sum += Abs(a.probs[i] - b.probs[i]);
  return sum;
}

Rational L1Distance(const JointDistribution& a, const JointDistribution& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("L1Distance: distributions over different games");
  }
  Rational sum = 0;
  for (int i = 0; i < a.size(); ++i) sum += Abs(a.at(i) - b.at(i));
  return sum;
}

int RoundsFor(int cells, const Rational& delta) {
  if (delta <= 0) throw std::invalid_argument("emulate: delta must be positive");
  int k = 0;
  Rational scaled = delta;
  while (scaled < cells) {
    scaled *= 2;
    if (++k > kMaxRounds) {
      throw std::invalid_argument("emulate: delta too small, table would exceed 2^30");
    }
  }
  return k;
}

MultisetEmulation MultisetEmulation::Build(const JointDistribution& p,
                                           const Rational& delta,
                                           std::optional<std::vector<int>> layout) {
  const int cells = p.size();
  const int k = RoundsFor(cells, delta);
  const std::uint64_t slots = std::uint64_t{1} << k;

  std::vector<int> order(cells);
  std::iota(order.begin(), order.end(), 0);
  if (layout) {
    std::vector<int> sorted = *layout;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != order) {
      throw std::invalid_argument("emulate: layout is not a permutation of the cells");
    }
    order = *layout;
  }

  // Largest-remainder rounding of slots * p(s).
  std::vector<std::uint64_t> counts(cells);
  std::vector<Rational> remainder(cells);
  std::uint64_t assigned = 0;
  for (int i = 0; i < cells; ++i) {
    const Rational exact = p.at(i) * Rational(static_cast<unsigned long>(slots));
    mpz_class floor = exact.get_num() / exact.get_den();
    counts[i] = floor.get_ui();
    remainder[i] = exact - Rational(floor);
    assigned += counts[i];
  }
  std::vector<int> by_remainder(cells);
  std::iota(by_remainder.begin(), by_remainder.end(), 0);
  std::stable_sort(by_remainder.begin(), by_remainder.end(),
                   [&](int a, int b) { return remainder[a] > remainder[b]; });
  for (std::uint64_t i = 0; assigned < slots; ++i, ++assigned) {
    ++counts[by_remainder[i]];
  }

  std::vector<JointStrategy> table;
  table.reserve(slots);
  for (int cell : order) {
    const JointStrategy s{cell / p.cols(), cell % p.cols()};
    table.insert(table.end(), counts[cell], s);
  }
  return MultisetEmulation(k, delta, p, std::move(table), std::move(counts));
}

JointDistribution MultisetEmulation::Induced() const {
  std::vector<Rational> probs(counts_.size());
  const Rational slots(static_cast<unsigned long>(table_.size()));
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    probs[i] = Rational(static_cast<unsigned long>(counts_[i])) / slots;
  }
  return JointDistribution(source_.rows(), source_.cols(), std::move(probs));
}

std::pair<std::uint64_t, std::uint64_t> MultisetEmulation::Block(
    const BitPrefix& prefix) const {
  if (prefix.size() > k_) throw std::invalid_argument("Block: prefix longer than k");
  const int shift = k_ - prefix.size();
  const std::uint64_t begin = prefix.Value() << shift;
  return {begin, begin + (std::uint64_t{1} << shift)};
}

Rational MultisetEmulation::ConditionalExpectedUtility(const Game& game,
                                                       const BitPrefix& prefix,
                                                       int next_bit,
                                                       Player player) const {
  if (prefix.size() >= k_) {
    throw std::invalid_argument("ConditionalExpectedUtility: prefix must be shorter than k");
  }
  auto [begin, end] = Block(prefix.Append(next_bit));
  Rational sum = 0;
  for (std::uint64_t i = begin; i < end; ++i) sum += game.Utility(player, table_[i]);
  return sum / Rational(static_cast<unsigned long>(end - begin));
}

nlohmann::json MultisetEmulation::ToJson() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const JointStrategy& s : table_) {
    entries.push_back(std::to_string(s.row) + "," + std::to_string(s.col));
  }
  return {{"k", k_}, {"table", entries}};
}

}  // namespace ce_sampler
