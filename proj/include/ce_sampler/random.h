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

#ifndef CE_SAMPLER_RANDOM_H_
#define CE_SAMPLER_RANDOM_H_

#include <cstdint>

#include "ce_sampler/rational.h"

namespace ce_sampler {

// Counter-based random stream. The n-th draw is a pure function of
// (key, n), so a stream can be split into independent children by index
// and Monte Carlo results do not depend on thread scheduling.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  // Child stream for the given index; does not advance this stream.
  RandomStream Split(std::uint64_t index) const;

  std::uint64_t NextU64();

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t NextBelow(std::uint64_t bound);

  // True with probability floor(p * 2^64) / 2^64, which equals p exactly
  // for every dyadic p with denominator at most 2^64. p is clamped to [0, 1].
  bool Bernoulli(const Rational& p);

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  RandomStream(std::uint64_t key, std::uint64_t counter)
      : key_(key), counter_(counter) {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace ce_sampler

#endif  // CE_SAMPLER_RANDOM_H_
