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

#ifndef DYNSTACK_LP_HPP_
#define DYNSTACK_LP_HPP_

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dynstack::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Feasibility / optimality tolerance shared by every client of the engine.
inline constexpr double kFeasibilityTol = 1e-9;
inline constexpr double kPivotTol = 1e-10;

enum class Sense { kLessEqual, kEqual, kGreaterEqual };
enum class Status { kOptimal, kInfeasible, kUnbounded };

std::string ToString(Status status);

// Thrown when the problem dimensions are inconsistent.
class MalformedProblem : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when the simplex method cannot finish (iteration limit, numerical
// breakdown). Never used to report infeasibility or unboundedness.
class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dense linear program: maximize objective . x subject to
// constraint_matrix x (sense) constraint_rhs and per-variable bounds.
// constraint_matrix is row-major with objective.size() columns.
struct LpProblem {
  std::vector<double> objective;
  std::vector<double> constraint_matrix;
  std::vector<double> constraint_rhs;
  std::vector<Sense> constraint_sense;
  std::vector<double> variable_lower_bounds;
  std::vector<double> variable_upper_bounds;

  std::size_t num_variables() const { return objective.size(); }
  std::size_t num_constraints() const { return constraint_rhs.size(); }
  double coefficient(std::size_t row, std::size_t col) const {
    return constraint_matrix[row * num_variables() + col];
  }

  // Throws MalformedProblem when the invariants do not hold.
  void Validate() const;
};

struct LpSolution {
  Status status = Status::kInfeasible;
  std::vector<double> values;   // empty unless optimal
  double objective_value = 0.0; // meaningful only when optimal
  long pivots = 0;

  bool optimal() const { return status == Status::kOptimal; }
};

struct SolverOptions {
  double feasibility_tol = kFeasibilityTol;
  double pivot_tol = kPivotTol;
  // Zero selects a limit proportional to the tableau size.
  long max_pivots = 0;
  // Consecutive degenerate pivots tolerated under the largest-coefficient
  // rule before switching to Bland's rule for the rest of the phase.
  int degenerate_switch = 50;
};

LpSolution SolveLp(const LpProblem& problem, const SolverOptions& options = {});

// Incremental row-wise construction of an LpProblem. Rows are given
// sparsely; duplicate column entries within a row are summed.
class LpBuilder {
 public:
  using Term = std::pair<int, double>;

  int AddVariable(double lower, double upper, double objective = 0.0);
  // Adds `count` variables with identical bounds, returns the first index.
  int AddVariables(int count, double lower, double upper);
  void SetObjective(int var, double coefficient);
  void AddObjective(int var, double coefficient);
  int AddRow(const std::vector<Term>& terms, Sense sense, double rhs);

  int num_variables() const { return static_cast<int>(objective_.size()); }
  int num_rows() const { return static_cast<int>(rhs_.size()); }

  LpProblem Build() const;

 private:
  std::vector<double> objective_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<std::vector<Term>> rows_;
  std::vector<Sense> senses_;
  std::vector<double> rhs_;
};

}  // namespace dynstack::lp

#endif  // DYNSTACK_LP_HPP_
