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

#ifndef CE_SAMPLER_CE_SOLVER_H_
#define CE_SAMPLER_CE_SOLVER_H_

#include <optional>
#include <string>
#include <vector>

#include "ce_sampler/game.h"
#include "ce_sampler/lp.h"

namespace ce_sampler {

enum class CeObjective {
  // Maximize total payoff, then maximize each cell's probability in
  // row-major order.
  kMaxTotalLex,
  // Maximize the smaller of the two payoffs, then total payoff, then the
  // same row-major refinement.
  kMaxFair,
  // Any point of the polytope; whatever the simplex lands on.
  kFeasible,
};

std::optional<CeObjective> ParseCeObjective(const std::string& name);
std::string ToString(CeObjective objective);

// Variables are the joint-strategy probabilities in row-major order; under
// kMaxFair one extra free variable t is appended, bounded above by each
// player's expected payoff. Rows: one deviation row per (player, s, s' != s),
// one nonnegativity row per cell, one sum-to-one row, plus the epigraph rows.
LpProblem BuildCeLp(const Game& game, CeObjective objective);

// Deterministic; the result always passes CheckCe exactly. Throws
// std::logic_error if the simplex reports the polytope empty or unbounded,
// which would mean the LP was built wrong.
JointDistribution SolveCe(const Game& game, CeObjective objective);

// Adds "sum_s p(s) (u_i(s) - u_i(s'_i, s_-i)) >= 0" rows to an LP whose first
// |S| variables are joint-strategy probabilities.
void AddCeConstraints(const Game& game, LpProblem& lp);

// Total-payoff coefficients sum_i u_i(s) over the first |S| variables.
std::vector<Rational> TotalPayoffRow(const Game& game, int num_vars);
std::vector<Rational> PayoffRow(const Game& game, Player player, int num_vars);

// Exhaustive vertex enumeration of the bounded polyhedron described by the
// LP's constraints (objective ignored). Intended for small problems: it
// solves one square system per choice of active inequalities. Vertices are
// returned sorted and without duplicates.
std::vector<std::vector<Rational>> EnumerateVertices(const LpProblem& lp);

// Minimum and maximum of every coordinate over the LP's feasible region.
struct CoordinateRange {
  Rational min;
  Rational max;
};
std::vector<CoordinateRange> CoordinateRanges(const LpProblem& lp);

}  // namespace ce_sampler

#endif  // CE_SAMPLER_CE_SOLVER_H_
