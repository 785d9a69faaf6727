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

#include <algorithm>
#include <vector>

#include "ce_sampler/acceptance.h"
#include "ce_sampler/ce_solver.h"
#include "ce_sampler/lp.h"
#include "doctest.h"
#include "test_util.h"

namespace ce_sampler {
namespace {

using testing::Bos;
using testing::BosFair;

std::vector<Rational> Row(std::initializer_list<long> values) {
  std::vector<Rational> out;
  for (long v : values) out.emplace_back(v);
  return out;
}

Rational Dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

TEST_CASE("simplex on small problems") {
  LpProblem lp;
  lp.num_vars = 2;
  lp.Add(Row({1, 2}), Relation::kLessEqual, 4);
  lp.Add(Row({3, 1}), Relation::kLessEqual, 6);
  lp.Add(Row({1, 0}), Relation::kGreaterEqual, 0);
  lp.Add(Row({0, 1}), Relation::kGreaterEqual, 0);
  lp.objective = Row({1, 1});
  LpSolution s = SimplexSolve(lp);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.x == std::vector<Rational>{Rational(8, 5), Rational(6, 5)});
  CHECK(s.objective == Rational(14, 5));

  LpProblem infeasible;
  infeasible.num_vars = 1;
  infeasible.Add(Row({1}), Relation::kGreaterEqual, 0);
  infeasible.Add(Row({1}), Relation::kLessEqual, -1);
  infeasible.objective = Row({1});
  CHECK(SimplexSolve(infeasible).status == LpStatus::kInfeasible);

  LpProblem unbounded;
  unbounded.num_vars = 1;
  unbounded.Add(Row({1}), Relation::kGreaterEqual, 0);
  unbounded.objective = Row({1});
  CHECK(SimplexSolve(unbounded).status == LpStatus::kUnbounded);

  LpProblem free_var;
  free_var.num_vars = 1;
  free_var.Add(Row({1}), Relation::kGreaterEqual, -3);
  free_var.objective = Row({-1});
  s = SimplexSolve(free_var);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.x[0] == -3);

  LpProblem redundant;
  redundant.num_vars = 2;
  redundant.Add(Row({1, 1}), Relation::kEqual, 1);
  redundant.Add(Row({2, 2}), Relation::kEqual, 2);
  redundant.Add(Row({1, 0}), Relation::kGreaterEqual, 0);
  redundant.Add(Row({0, 1}), Relation::kGreaterEqual, 0);
  redundant.objective = Row({1, 0});
  s = SimplexSolve(redundant);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.objective == 1);
}

TEST_CASE("simplex terminates on a cycling-prone degenerate problem") {
  // Beale's example; the textbook pivot rule cycles on it.
  LpProblem lp;
  lp.num_vars = 4;
  lp.Add({Rational(1, 4), -8, -1, 9}, Relation::kLessEqual, 0);
  lp.Add({Rational(1, 2), -12, Rational(-1, 2), 3}, Relation::kLessEqual, 0);
  lp.Add(Row({0, 0, 1, 0}), Relation::kLessEqual, 1);
  for (int i = 0; i < 4; ++i) {
    std::vector<Rational> r(4, Rational(0));
    r[i] = 1;
    lp.Add(r, Relation::kGreaterEqual, 0);
  }
  lp.objective = {Rational(3, 4), -20, Rational(1, 2), -6};
  const LpSolution s = SimplexSolve(lp);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.objective == Rational(5, 4));
}

TEST_CASE("vertices and coordinate ranges of a simplex") {
  LpProblem lp;
  lp.num_vars = 3;
  lp.Add(Row({1, 1, 1}), Relation::kEqual, 1);
  for (int i = 0; i < 3; ++i) {
    std::vector<Rational> r(3, Rational(0));
    r[i] = 1;
    lp.Add(r, Relation::kGreaterEqual, 0);
  }
  const auto vertices = EnumerateVertices(lp);
  CHECK(vertices.size() == 3);
  for (const auto& range : CoordinateRanges(lp)) {
    CHECK(range.min == 0);
    CHECK(range.max == 1);
  }
}

TEST_CASE("objective names") {
  for (CeObjective o : {CeObjective::kMaxFair, CeObjective::kMaxTotalLex, CeObjective::kFeasible}) {
    CHECK(ParseCeObjective(ToString(o)) == o);
  }
  CHECK_FALSE(ParseCeObjective("max-welfare"));
}

TEST_CASE("battle of the sexes solutions") {
  const Game bos = Bos();
  CHECK(SolveCe(bos, CeObjective::kMaxFair) == BosFair());
  const JointDistribution total = SolveCe(bos, CeObjective::kMaxTotalLex);
  CHECK(total == JointDistribution::PointMass(2, 2, {0, 0}));
  CHECK(CheckCe(bos, SolveCe(bos, CeObjective::kFeasible)));

  const LpProblem lp = BuildCeLp(bos, CeObjective::kFeasible);
  CHECK(lp.Count(ConstraintKind::kDeviation) == 4);
  CHECK(lp.Count(ConstraintKind::kNonNegativity) == 4);
  CHECK(lp.Count(ConstraintKind::kNormalization) == 1);
  // Pure NE are vertices; the fair mix on the diagonal is not.
  const auto vertices = EnumerateVertices(lp);
  CHECK(std::find(vertices.begin(), vertices.end(),
                  std::vector<Rational>{1, 0, 0, 0}) != vertices.end());
  CHECK(std::find(vertices.begin(), vertices.end(), BosFair().probs()) == vertices.end());
  Rational best = 0;
  for (const auto& v : vertices) best = Max(best, Dot(v, TotalPayoffRow(bos, 4)));
  CHECK(best == 6);
}

// Max-total-lex is the lexicographically largest vertex among the vertices
// of maximal total payoff.
std::vector<Rational> OracleMaxTotalLex(const Game& g) {
  const LpProblem lp = BuildCeLp(g, CeObjective::kFeasible);
  const auto vertices = EnumerateVertices(lp);
  const auto total = TotalPayoffRow(g, lp.num_vars);
  Rational best = Dot(vertices.front(), total);
  for (const auto& v : vertices) best = Max(best, Dot(v, total));
  std::vector<Rational> winner;
  for (const auto& v : vertices) {
    if (Dot(v, total) == best && (winner.empty() || v > winner)) winner = v;
  }
  return winner;
}

// max of min(u1, u2) over the polytope lies at a vertex or where some
// segment between two vertices crosses u1 = u2.
Rational OracleFairValue(const Game& g) {
  const LpProblem lp = BuildCeLp(g, CeObjective::kFeasible);
  const auto vertices = EnumerateVertices(lp);
  const auto u1 = PayoffRow(g, Player::kOne, lp.num_vars);
  const auto u2 = PayoffRow(g, Player::kTwo, lp.num_vars);
  Rational best = Min(Dot(vertices.front(), u1), Dot(vertices.front(), u2));
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Rational a1 = Dot(vertices[i], u1), a2 = Dot(vertices[i], u2);
    best = Max(best, Min(a1, a2));
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      const Rational b1 = Dot(vertices[j], u1), b2 = Dot(vertices[j], u2);
      const Rational da = a1 - a2, db = b1 - b2;
      if ((da > 0 && db < 0) || (da < 0 && db > 0)) {
        const Rational t = da / (da - db);
        best = Max(best, Rational((1 - t) * a1 + t * b1));
      }
    }
  }
  return best;
}

TEST_CASE("solver agrees with vertex enumeration on random small games") {
  RandomStream root(21);
  int checked = 0;
  for (int t = 0; checked < 40; ++t) {
    RandomStream rng = root.Split(t);
    const Game g = RandomGame(rng);
    if (g.NumJoint() > 6) continue;
    ++checked;
    const JointDistribution lex = SolveCe(g, CeObjective::kMaxTotalLex);
    CHECK(CheckCe(g, lex));
    CHECK(lex.probs() == OracleMaxTotalLex(g));

    const JointDistribution fair = SolveCe(g, CeObjective::kMaxFair);
    CHECK(CheckCe(g, fair));
    CHECK(Min(ExpectedUtility(g, fair, Player::kOne), ExpectedUtility(g, fair, Player::kTwo)) ==
          OracleFairValue(g));
  }
}

TEST_CASE("solutions on larger random games are equilibria") {
  RandomStream root(22);
  for (int t = 0; t < 30; ++t) {
    RandomStream rng = root.Split(t);
    const Game g = RandomGame(rng);
    for (CeObjective o : {CeObjective::kMaxFair, CeObjective::kMaxTotalLex, CeObjective::kFeasible}) {
      const JointDistribution p = SolveCe(g, o);
      CHECK(CheckCe(g, p));
      CHECK(CheckCe(Normalize(g), p));
    }
    // Max-total is at least the total of every pure NE.
    const JointDistribution lex = SolveCe(g, CeObjective::kMaxTotalLex);
    const Rational total =
        ExpectedUtility(g, lex, Player::kOne) + ExpectedUtility(g, lex, Player::kTwo);
    for (int i = 0; i < g.NumJoint(); ++i) {
      const JointStrategy s = g.Unflat(i);
      if (CheckPureNe(g, s)) {
        CHECK(total >= g.Utility(Player::kOne, s) + g.Utility(Player::kTwo, s));
      }
    }
  }
}

}  // namespace
}  // namespace ce_sampler
