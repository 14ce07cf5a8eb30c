// Copyright 2026 The dynstack Authors
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

#include <cmath>
#include <random>

#include "doctest.h"
#include "dynstack/fixtures.hpp"
#include "dynstack/lp.hpp"
#include "dynstack/static_solvers.hpp"
#include "oracles.hpp"

namespace dynstack::lp {
namespace {

TEST_CASE("single bounded variable") {
  LpBuilder b;
  int x = b.AddVariable(0.0, kInfinity, 1.0);
  b.AddRow({{x, 1.0}}, Sense::kLessEqual, 1.0);
  auto sol = SolveLp(b.Build());
  REQUIRE(sol.optimal());
  CHECK(sol.values[0] == doctest::Approx(1.0));
  CHECK(sol.objective_value == doctest::Approx(1.0));
}

TEST_CASE("simplex constraint") {
  LpBuilder b;
  int x = b.AddVariables(2, 0.0, 1.0);
  b.SetObjective(x, 1.0);
  b.SetObjective(x + 1, 1.0);
  b.AddRow({{x, 1.0}, {x + 1, 1.0}}, Sense::kEqual, 1.0);
  auto sol = SolveLp(b.Build());
  REQUIRE(sol.optimal());
  CHECK(sol.objective_value == doctest::Approx(1.0));
}

TEST_CASE("inducing a dominated column is infeasible") {
  Game g = LoadFixture("example1");
  CHECK_FALSE(SolveInducedLp(g, 0, 1).has_value());
  // Grid sweep: type C0 never prefers j1.
  for (int s = 0; s <= 100; ++s) {
    MixedStrategy x{s / 100.0, 1.0 - s / 100.0};
    CHECK(FollowerUtility(g, 0, x, 0) > FollowerUtility(g, 0, x, 1));
  }
}

TEST_CASE("unbounded and infeasible") {
  LpBuilder b;
  int x = b.AddVariable(0.0, kInfinity, 1.0);
  b.AddRow({{x, -1.0}}, Sense::kLessEqual, 0.0);
  CHECK(SolveLp(b.Build()).status == Status::kUnbounded);

  LpBuilder c;
  int y = c.AddVariable(0.0, kInfinity, 1.0);
  c.AddRow({{y, 1.0}}, Sense::kLessEqual, 1.0);
  c.AddRow({{y, 1.0}}, Sense::kGreaterEqual, 2.0);
  CHECK(SolveLp(c.Build()).status == Status::kInfeasible);
}

TEST_CASE("free and upper-only variables") {
  // max -|z| style: maximize -y s.t. y >= z - 3, y >= 3 - z, z free.
  LpBuilder b;
  int z = b.AddVariable(-kInfinity, kInfinity, 0.0);
  int y = b.AddVariable(-kInfinity, 10.0, -1.0);
  b.AddRow({{y, 1.0}, {z, -1.0}}, Sense::kGreaterEqual, -3.0);
  b.AddRow({{y, 1.0}, {z, 1.0}}, Sense::kGreaterEqual, 3.0);
  auto sol = SolveLp(b.Build());
  REQUIRE(sol.optimal());
  CHECK(sol.objective_value == doctest::Approx(0.0));
  CHECK(sol.values[z] == doctest::Approx(3.0));
}

TEST_CASE("malformed problems are rejected") {
  LpProblem p;
  p.objective = {1.0, 1.0};
  p.constraint_matrix = {1.0};
  p.constraint_rhs = {1.0};
  p.constraint_sense = {Sense::kLessEqual};
  p.variable_lower_bounds = {0.0, 0.0};
  p.variable_upper_bounds = {1.0, 1.0};
  CHECK_THROWS_AS(SolveLp(p), MalformedProblem);
  p.constraint_matrix = {1.0, 1.0};
  p.variable_lower_bounds = {2.0, 0.0};
  CHECK_THROWS_AS(SolveLp(p), MalformedProblem);
}

TEST_CASE("random LPs agree with vertex enumeration") {
  std::mt19937_64 rng(2026);
  int optimal = 0;
  for (int trial = 0; trial < 50; ++trial) {
    LpProblem p = testing::RandomLp(rng);
    auto sol = SolveLp(p);
    auto brute = testing::VertexOptimum(p);
    INFO("trial " << trial);
    if (!brute) {
      CHECK(sol.status == Status::kInfeasible);
      continue;
    }
    REQUIRE(sol.optimal());
    ++optimal;
    CHECK(std::abs(sol.objective_value - *brute) <= 1e-7);
  }
  CHECK(optimal >= 20);
}

TEST_CASE("objective equals recomputed inner product") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    LpProblem p = testing::RandomLp(rng);
    auto sol = SolveLp(p);
    if (!sol.optimal()) continue;
    double dot = 0.0;
    for (std::size_t j = 0; j < p.num_variables(); ++j) {
      dot += p.objective[j] * sol.values[j];
    }
    CHECK(std::abs(dot - sol.objective_value) <=
          1e-12 * (1.0 + std::abs(dot)));
  }
}

TEST_CASE("solving is deterministic") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    LpProblem p = testing::RandomLp(rng);
    auto a = SolveLp(p);
    auto b = SolveLp(p);
    CHECK(a.status == b.status);
    CHECK(a.values == b.values);
    CHECK(a.objective_value == b.objective_value);
  }
}

TEST_CASE("redundant equalities") {
  LpBuilder b;
  int x = b.AddVariables(3, 0.0, kInfinity);
  for (int j = 0; j < 3; ++j) b.SetObjective(x + j, j + 1.0);
  b.AddRow({{x, 1}, {x + 1, 1}, {x + 2, 1}}, Sense::kEqual, 1.0);
  b.AddRow({{x, 2}, {x + 1, 2}, {x + 2, 2}}, Sense::kEqual, 2.0);
  auto sol = SolveLp(b.Build());
  REQUIRE(sol.optimal());
  CHECK(sol.objective_value == doctest::Approx(3.0));
}

}  // namespace
}  // namespace dynstack::lp
