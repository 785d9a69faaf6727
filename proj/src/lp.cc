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

#include "ce_sampler/lp.h"

#include <optional>
#include <stdexcept>
#include <utility>

namespace ce_sampler {

int LpProblem::Count(ConstraintKind kind) const {
  int n = 0;
  for (const auto& c : constraints) n += c.kind == kind;
  return n;
}

void LpProblem::Add(std::vector<Rational> coeffs, Relation relation,
                    Rational rhs, ConstraintKind kind) {
  if (static_cast<int>(coeffs.size()) != num_vars) {
    throw std::invalid_argument("LpProblem::Add: coefficient count mismatch");
  }
  constraints.push_back({std::move(coeffs), relation, std::move(rhs), kind});
}

std::string ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

// Returns the variable index if the row reads x_j >= 0 (in either
// orientation), else nullopt.
std::optional<int> SignBound(const LinearConstraint& c) {
  if (c.rhs != 0 || c.relation == Relation::kEqual) return std::nullopt;
  int found = -1;
  for (int j = 0; j < static_cast<int>(c.coeffs.size()); ++j) {
    if (c.coeffs[j] == 0) continue;
    if (found >= 0) return std::nullopt;
    found = j;
  }
  if (found < 0) return std::nullopt;
  const bool positive = c.coeffs[found] > 0;
  if (positive == (c.relation == Relation::kGreaterEqual)) return found;
  return std::nullopt;
}

class Tableau {
 public:
  Tableau(int rows, int cols)
      : cells_(rows, std::vector<Rational>(cols + 1, Rational(0))),
        basis_(rows, -1),
        cols_(cols) {}

  Rational& at(int r, int c) { return cells_[r][c]; }
  Rational& rhs(int r) { return cells_[r][cols_]; }
  int rows() const { return static_cast<int>(cells_.size()); }
  int cols() const { return cols_; }
  std::vector<int>& basis() { return basis_; }

  void Pivot(int pr, int pc) {
    auto& prow = cells_[pr];
    const Rational inv = 1 / prow[pc];
    for (auto& v : prow) v *= inv;
    for (int r = 0; r < rows(); ++r) {
      if (r == pr || cells_[r][pc] == 0) continue;
      const Rational f = cells_[r][pc];
      for (int c = 0; c <= cols_; ++c) {
        if (prow[c] != 0) cells_[r][c] -= f * prow[c];
      }
    }
    if (!objective_.empty() && objective_[pc] != 0) {
      const Rational f = objective_[pc];
      for (int c = 0; c <= cols_; ++c) {
        if (prow[c] != 0) objective_[c] -= f * prow[c];
      }
    }
    basis_[pr] = pc;
    ++pivots_;
  }

  // Loads "maximize cost . x" as a reduced-cost row z_j = c_B B^-1 A_j - c_j.
  void SetObjective(const std::vector<Rational>& cost) {
    objective_.assign(cols_ + 1, Rational(0));
    for (int c = 0; c < cols_; ++c) objective_[c] = -cost[c];
    for (int r = 0; r < rows(); ++r) {
      const Rational& cb = cost[basis_[r]];
      if (cb == 0) continue;
      for (int c = 0; c <= cols_; ++c) objective_[c] += cb * cells_[r][c];
    }
  }

  const Rational& ObjectiveValue() const { return objective_[cols_]; }

  // Runs Bland's rule to optimality. Columns with allowed[c] == false never
  // enter. Returns false if the problem is unbounded.
  bool Optimize(const std::vector<bool>& allowed) {
    for (;;) {
      int enter = -1;
      for (int c = 0; c < cols_; ++c) {
        if (allowed[c] && objective_[c] < 0) {
          enter = c;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational best_ratio;
      for (int r = 0; r < rows(); ++r) {
        if (cells_[r][enter] <= 0) continue;
        Rational ratio = cells_[r][cols_] / cells_[r][enter];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;
      Pivot(leave, enter);
    }
  }

  void DropRow(int r) {
    cells_.erase(cells_.begin() + r);
    basis_.erase(basis_.begin() + r);
  }

  int pivots() const { return pivots_; }

 private:
  std::vector<std::vector<Rational>> cells_;
  std::vector<Rational> objective_;
  std::vector<int> basis_;
  int cols_;
  int pivots_ = 0;
};

}  // namespace

LpSolution SimplexSolve(const LpProblem& lp) {
  const int n = lp.num_vars;
  if (static_cast<int>(lp.objective.size()) != n) {
    throw std::invalid_argument("SimplexSolve: objective size mismatch");
  }

  std::vector<bool> nonnegative(n, false);
  std::vector<const LinearConstraint*> rows;
  for (const auto& c : lp.constraints) {
    if (static_cast<int>(c.coeffs.size()) != n) {
      throw std::invalid_argument("SimplexSolve: constraint size mismatch");
    }
    if (auto j = SignBound(c)) {
      nonnegative[*j] = true;
    } else {
      rows.push_back(&c);
    }
  }

  // Structural columns: x_j (or x_j+ and x_j- for free variables).
  std::vector<int> pos_col(n), neg_col(n, -1);
  int col = 0;
  for (int j = 0; j < n; ++j) {
    pos_col[j] = col++;
    if (!nonnegative[j]) neg_col[j] = col++;
  }
  const int structural = col;

  // Orient every row so rhs >= 0, then count slacks and artificials.
  struct Row {
    std::vector<Rational> coeffs;
    Relation relation;
    Rational rhs;
  };
  std::vector<Row> oriented;
  for (const LinearConstraint* c : rows) {
    Row r{c->coeffs, c->relation, c->rhs};
    if (r.rhs < 0) {
      for (auto& v : r.coeffs) v = -v;
      r.rhs = -r.rhs;
      if (r.relation == Relation::kLessEqual) {
        r.relation = Relation::kGreaterEqual;
      } else if (r.relation == Relation::kGreaterEqual) {
        r.relation = Relation::kLessEqual;
      }
    }
    oriented.push_back(std::move(r));
  }
  const int m = static_cast<int>(oriented.size());
  int slack_count = 0, artificial_count = 0;
  for (const Row& r : oriented) {
    slack_count += r.relation != Relation::kEqual;
    artificial_count += r.relation != Relation::kLessEqual;
  }
  const int first_artificial = structural + slack_count;
  const int total_cols = first_artificial + artificial_count;

  Tableau t(m, total_cols);
  int next_slack = structural, next_artificial = first_artificial;
  for (int i = 0; i < m; ++i) {
    const Row& r = oriented[i];
    for (int j = 0; j < n; ++j) {
      if (r.coeffs[j] == 0) continue;
      t.at(i, pos_col[j]) = r.coeffs[j];
      if (neg_col[j] >= 0) t.at(i, neg_col[j]) = -r.coeffs[j];
    }
    t.rhs(i) = r.rhs;
    if (r.relation == Relation::kLessEqual) {
      t.at(i, next_slack) = 1;
      t.basis()[i] = next_slack++;
    } else {
      if (r.relation == Relation::kGreaterEqual) t.at(i, next_slack++) = -1;
      t.at(i, next_artificial) = 1;
      t.basis()[i] = next_artificial++;
    }
  }

  LpSolution solution;

  // Phase 1: maximize -(sum of artificials).
  std::vector<bool> allowed(total_cols, true);
  if (artificial_count > 0) {
    std::vector<Rational> phase1(total_cols, Rational(0));
    for (int c = first_artificial; c < total_cols; ++c) phase1[c] = -1;
    t.SetObjective(phase1);
    t.Optimize(allowed);
    if (t.ObjectiveValue() != 0) {
      solution.status = LpStatus::kInfeasible;
      solution.pivots = t.pivots();
      return solution;
    }
    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (int r = t.rows() - 1; r >= 0; --r) {
      if (t.basis()[r] < first_artificial) continue;
      int pc = -1;
      for (int c = 0; c < first_artificial; ++c) {
        if (t.at(r, c) != 0) {
          pc = c;
          break;
        }
      }
      if (pc >= 0) {
        t.Pivot(r, pc);
      } else {
        t.DropRow(r);
      }
    }
    for (int c = first_artificial; c < total_cols; ++c) allowed[c] = false;
  }

  // Phase 2.
  std::vector<Rational> cost(total_cols, Rational(0));
  for (int j = 0; j < n; ++j) {
    cost[pos_col[j]] = lp.objective[j];
    if (neg_col[j] >= 0) cost[neg_col[j]] = -lp.objective[j];
  }
  t.SetObjective(cost);
  if (!t.Optimize(allowed)) {
    solution.status = LpStatus::kUnbounded;
    solution.pivots = t.pivots();
    return solution;
  }

  std::vector<Rational> column_value(total_cols, Rational(0));
  for (int r = 0; r < t.rows(); ++r) column_value[t.basis()[r]] = t.rhs(r);
  solution.x.assign(n, Rational(0));
  for (int j = 0; j < n; ++j) {
    solution.x[j] = column_value[pos_col[j]];
    if (neg_col[j] >= 0) solution.x[j] -= column_value[neg_col[j]];
  }
  solution.objective = 0;
  for (int j = 0; j < n; ++j) solution.objective += lp.objective[j] * solution.x[j];
  solution.status = LpStatus::kOptimal;
  solution.pivots = t.pivots();
  return solution;
}

}  // namespace ce_sampler
