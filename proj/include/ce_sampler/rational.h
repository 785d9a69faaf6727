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

#ifndef CE_SAMPLER_RATIONAL_H_
#define CE_SAMPLER_RATIONAL_H_

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace ce_sampler {

// Exact arbitrary-precision rational. Every probability and utility in the
// library is one of these; doubles only appear in Monte Carlo summaries.
using Rational = mpq_class;

// Parses "7", "-3/4", "0.125", "+2.5". Returns nullopt on anything else,
// including a zero denominator.
std::optional<Rational> ParseRational(std::string_view text);

// Canonical "p/q" form, or "p" when the denominator is one.
std::string ToString(const Rational& value);

double ToDouble(const Rational& value);

inline Rational Abs(const Rational& value) { return abs(value); }

inline const Rational& Max(const Rational& a, const Rational& b) {
  return a < b ? b : a;
}
inline const Rational& Min(const Rational& a, const Rational& b) {
  return b < a ? b : a;
}

}  // namespace ce_sampler

#endif  // CE_SAMPLER_RATIONAL_H_
