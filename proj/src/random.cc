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

#include "ce_sampler/random.h"

#include <stdexcept>

namespace ce_sampler {
namespace {

// SplitMix64 finalizer.
std::uint64_t Mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) : key_(Mix(seed)) {}

RandomStream RandomStream::Split(std::uint64_t index) const {
  return RandomStream(Mix(key_ ^ Mix(index ^ 0x5851f42d4c957f2dULL)), 0);
}

std::uint64_t RandomStream::NextU64() {
  return Mix(key_ ^ Mix(counter_++));
}

std::uint64_t RandomStream::NextBelow(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("NextBelow: bound must be > 0");
  // Rejection sampling removes modulo bias.
  const std::uint64_t limit = -bound % bound;
  for (;;) {
    std::uint64_t r = NextU64();
    if (r >= limit) return r % bound;
  }
}

bool RandomStream::Bernoulli(const Rational& p) {
  if (p <= 0) {
    NextU64();
    return false;
  }
  if (p >= 1) {
    NextU64();
    return true;
  }
  mpz_class two64 = mpz_class(1) << 64;
  mpz_class threshold = two64 * p.get_num() / p.get_den();
  mpz_class draw;
  std::uint64_t r = NextU64();
  mpz_import(draw.get_mpz_t(), 1, 1, sizeof(r), 0, 0, &r);
  return draw < threshold;
}

}  // namespace ce_sampler
