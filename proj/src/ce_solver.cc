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

#include "ce_sampler/ce_solver.h"

#include <algorithm>
#include <stdexcept>

namespace ce_sampler {
namespace {

LpSolution SolveOrDie(const LpProblem& lp, const char* stage) {
  LpSolution s = SimplexSolve(lp);
  if (s.status != LpStatus::kOptimal) {
    throw std::logic_error(std::string("SolveCe: ") + stage + " LP is " +
                           ToString(s.status));
  }
  return s;
}

bool Satisfies(const LinearConstraint& c, const std::vector<Rational>& x) {
  Rational lhs = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (c.coeffs[j] != 0) lhs += c.coeffs[j] * x[j];
  }
  switch (c.relation) {
    case Relation::kLessEqual: return lhs <= c.rhs;
    case Relation::kGreaterEqual: return lhs >= c.rhs;
    case Relation::kEqual: return lhs == c.rhs;
  }
  return false;
}

// Gauss-Jordan on an augmented matrix [A | b]. Returns the solution if A is
// square and nonsingular.
std::optional<std::vector<Rational>> SolveSquare(
    std::vector<std::vector<Rational>> a) {
  const int n = static_cast<int>(a.size());
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (a[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return std::nullopt;
    std::swap(a[col], a[pivot]);
    const Rational inv = 1 / a[col][col];
    for (auto& v : a[col]) v *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (int c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<Rational> x(n);
  for (int i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

// Independent subset of the equality rows, as augmented rows. Returns
// nullopt if the equalities are inconsistent.
std::optional<std::vector<std::vector<Rational>>> IndependentEqualities(
    const std::vector<const LinearConstraint*>& eqs, int n) {
  std::vector<std::vector<Rational>> reduced;  // echelon form, for rank tests
  std::vector<int> pivots;
  std::vector<std::vector<Rational>> kept;
  for (const LinearConstraint* c : eqs) {
    std::vector<Rational> row = c->coeffs;
    row.push_back(c->rhs);
    std::vector<Rational> work = row;
    for (std::size_t i = 0; i < reduced.size(); ++i) {
      const int p = pivots[i];
      if (work[p] == 0) continue;
      const Rational f = work[p];
      for (int j = 0; j <= n; ++j) work[j] -= f * reduced[i][j];
    }
    int p = -1;
    for (int j = 0; j < n; ++j) {
      if (work[j] != 0) {
        p = j;
        break;
      }
    }
    if (p < 0) {
      if (work[n] != 0) return std::nullopt;
      continue;
    }
    const Rational inv = 1 / work[p];
    for (auto& v : work) v *= inv;
    for (std::size_t i = 0; i < reduced.size(); ++i) {
      if (reduced[i][p] == 0) continue;
      const Rational f = reduced[i][p];
      for (int j = 0; j <= n; ++j) reduced[i][j] -= f * work[j];
    }
    reduced.push_back(std::move(work));
    pivots.push_back(p);
    kept.push_back(std::move(row));
  }
  return kept;
}

}  // namespace

std::optional<CeObjective> ParseCeObjective(const std::string& name) {
  if (name == "max-total-lex") return CeObjective::kMaxTotalLex;
  if (name == "max-fair") return CeObjective::kMaxFair;
  if (name == "feasible") return CeObjective::kFeasible;
  return std::nullopt;
}

std::string ToString(CeObjective objective) {
  switch (objective) {
    case CeObjective::kMaxTotalLex: return "max-total-lex";
    case CeObjective::kMaxFair: return "max-fair";
    case CeObjective::kFeasible: return "feasible";
  }
  return "unknown";
}

std::vector<Rational> PayoffRow(const Game& game, Player player, int num_vars) {
  std::vector<Rational> row(num_vars, Rational(0));
  for (int i = 0; i < game.NumJoint(); ++i)
    row[i] = game.Utility(player, game.Unflat(i));
  return row;
}

std::vector<Rational> TotalPayoffRow(const Game& game, int num_vars) {
  std::vector<Rational> row = PayoffRow(game, Player::kOne, num_vars);
  for (int i = 0; i < game.NumJoint(); ++i)
    row[i] += game.Utility(Player::kTwo, game.Unflat(i));
  return row;
}

void AddCeConstraints(const Game& game, LpProblem& lp) {
  for (Player player : {Player::kOne, Player::kTwo}) {
    const int own = game.NumStrategies(player);
    const int opp = game.NumStrategies(Other(player));
    for (int s = 0; s < own; ++s) {
      for (int t = 0; t < own; ++t) {
        if (s == t) continue;
        std::vector<Rational> row(lp.num_vars, Rational(0));
        for (int o = 0; o < opp; ++o) {
          JointStrategy obey = player == Player::kOne ? JointStrategy{s, o}
                                                      : JointStrategy{o, s};
          JointStrategy dev = player == Player::kOne ? JointStrategy{t, o}
                                                     : JointStrategy{o, t};
          row[game.Flat(obey)] =
              game.Utility(player, obey) - game.Utility(player, dev);
        }
        lp.Add(std::move(row), Relation::kGreaterEqual, 0,
               ConstraintKind::kDeviation);
      }
    }
  }
}

LpProblem BuildCeLp(const Game& game, CeObjective objective) {
  const int cells = game.NumJoint();
  LpProblem lp;
  lp.num_vars = cells + (objective == CeObjective::kMaxFair ? 1 : 0);
  AddCeConstraints(game, lp);
  for (int i = 0; i < cells; ++i) {
    std::vector<Rational> row(lp.num_vars, Rational(0));
    row[i] = 1;
    lp.Add(std::move(row), Relation::kGreaterEqual, 0,
           ConstraintKind::kNonNegativity);
  }
  std::vector<Rational> sum(lp.num_vars, Rational(0));
  for (int i = 0; i < cells; ++i) sum[i] = 1;
  lp.Add(std::move(sum), Relation::kEqual, 1, ConstraintKind::kNormalization);

  switch (objective) {
    case CeObjective::kMaxTotalLex:
      lp.objective = TotalPayoffRow(game, lp.num_vars);
      break;
    case CeObjective::kMaxFair:
      // t <= E[u_i]  <=>  E[u_i] - t >= 0
      for (Player p : {Player::kOne, Player::kTwo}) {
        std::vector<Rational> row = PayoffRow(game, p, lp.num_vars);
        row[cells] = -1;
        lp.Add(std::move(row), Relation::kGreaterEqual, 0,
               ConstraintKind::kEpigraph);
      }
      lp.objective.assign(lp.num_vars, Rational(0));
      lp.objective[cells] = 1;
      break;
    case CeObjective::kFeasible:
      lp.objective.assign(lp.num_vars, Rational(0));
      break;
  }
  return lp;
}

JointDistribution SolveCe(const Game& game, CeObjective objective) {
  const int cells = game.NumJoint();
  LpSolution first = SolveOrDie(BuildCeLp(game, objective), "initial");
  if (objective == CeObjective::kFeasible) {
    first.x.resize(cells);
    return JointDistribution(game.rows(), game.cols(), std::move(first.x));
  }

  // Refinement works over the probabilities only.
  LpProblem lp = BuildCeLp(game, CeObjective::kFeasible);
  if (objective == CeObjective::kMaxFair) {
    const Rational fair = first.objective;
    for (Player p : {Player::kOne, Player::kTwo}) {
      lp.Add(PayoffRow(game, p, cells), Relation::kGreaterEqual, fair,
             ConstraintKind::kFixing);
    }
    lp.objective = TotalPayoffRow(game, cells);
    LpSolution total = SolveOrDie(lp, "total-payoff");
    lp.Add(TotalPayoffRow(game, cells), Relation::kEqual, total.objective,
           ConstraintKind::kFixing);
  } else {
    lp.Add(TotalPayoffRow(game, cells), Relation::kEqual, first.objective,
           ConstraintKind::kFixing);
  }

  std::vector<Rational> x(cells, Rational(0));
  Rational fixed_mass = 0;
  for (int i = 0; i < cells; ++i) {
    std::vector<Rational> unit(cells, Rational(0));
    unit[i] = 1;
    if (fixed_mass == 1) {
      x[i] = 0;
    } else {
      lp.objective = unit;
      x[i] = SolveOrDie(lp, "lexicographic").objective;
    }
    fixed_mass += x[i];
    lp.Add(std::move(unit), Relation::kEqual, x[i], ConstraintKind::kFixing);
  }
  return JointDistribution(game.rows(), game.cols(), std::move(x));
}

std::vector<std::vector<Rational>> EnumerateVertices(const LpProblem& lp) {
  const int n = lp.num_vars;
  std::vector<const LinearConstraint*> eqs, ineqs;
  for (const auto& c : lp.constraints) {
    (c.relation == Relation::kEqual ? eqs : ineqs).push_back(&c);
  }
  auto base = IndependentEqualities(eqs, n);
  if (!base) return {};
  const int need = n - static_cast<int>(base->size());
  std::vector<std::vector<Rational>> vertices;
  if (need < 0 || need > static_cast<int>(ineqs.size())) return vertices;

  std::vector<int> pick(need);
  for (int i = 0; i < need; ++i) pick[i] = i;
  const int m = static_cast<int>(ineqs.size());
  for (;;) {
    std::vector<std::vector<Rational>> system = *base;
    for (int i : pick) {
      std::vector<Rational> row = ineqs[i]->coeffs;
      row.push_back(ineqs[i]->rhs);
      system.push_back(std::move(row));
    }
    if (auto x = SolveSquare(std::move(system))) {
      bool feasible = std::all_of(
          lp.constraints.begin(), lp.constraints.end(),
          [&](const LinearConstraint& c) { return Satisfies(c, *x); });
      if (feasible) vertices.push_back(std::move(*x));
    }
    // Next combination in lexicographic order.
    int i = need - 1;
    while (i >= 0 && pick[i] == m - need + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < need; ++j) pick[j] = pick[j - 1] + 1;
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

std::vector<CoordinateRange> CoordinateRanges(const LpProblem& lp) {
  std::vector<CoordinateRange> ranges(lp.num_vars);
  LpProblem work = lp;
  for (int j = 0; j < lp.num_vars; ++j) {
    work.objective.assign(lp.num_vars, Rational(0));
    work.objective[j] = 1;
    LpSolution hi = SimplexSolve(work);
    work.objective[j] = -1;
    LpSolution lo = SimplexSolve(work);
    if (hi.status != LpStatus::kOptimal || lo.status != LpStatus::kOptimal) {
      throw std::invalid_argument("CoordinateRanges: region empty or unbounded");
    }
    ranges[j] = {-lo.objective, hi.objective};
  }
  return ranges;
}

}  // namespace ce_sampler
