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

// Dense exact-rational linear programs and a two-phase primal simplex.

#ifndef CE_SAMPLER_LP_H_
#define CE_SAMPLER_LP_H_

#include <string>
#include <vector>

#include "ce_sampler/rational.h"

namespace ce_sampler {

enum class Relation { kLessEqual, kGreaterEqual, kEqual };

// Bookkeeping tag; the solver itself only looks at the coefficients.
enum class ConstraintKind {
  kDeviation,
  kNonNegativity,
  kNormalization,
  kEpigraph,
  kFixing,
  kOther,
};

struct LinearConstraint {
  std::vector<Rational> coeffs;
  Relation relation = Relation::kLessEqual;
  Rational rhs = 0;
  ConstraintKind kind = ConstraintKind::kOther;
};

// maximize objective . x subject to constraints. A variable is sign
// constrained only through an explicit single-variable "x_j >= 0" row;
// every other variable is free.
struct LpProblem {
  int num_vars = 0;
  std::vector<LinearConstraint> constraints;
  std::vector<Rational> objective;

  int Count(ConstraintKind kind) const;
  void Add(std::vector<Rational> coeffs, Relation relation, Rational rhs,
           ConstraintKind kind = ConstraintKind::kOther);
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string ToString(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<Rational> x;
  Rational objective = 0;
  int pivots = 0;
};

// Two-phase tableau simplex with Bland's rule (lowest index enters, lowest
// basic index leaves on ratio ties). Terminates on degenerate problems and
// is deterministic for a given input.
LpSolution SimplexSolve(const LpProblem& lp);

}  // namespace ce_sampler

#endif  // CE_SAMPLER_LP_H_
