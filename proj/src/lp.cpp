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

#include "dynstack/lp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace dynstack::lp {

std::string ToString(Status status) {
  switch (status) {
    case Status::kOptimal:
      return "optimal";
    case Status::kInfeasible:
      return "infeasible";
    case Status::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

void LpProblem::Validate() const {
  const std::size_t v = num_variables();
  const std::size_t r = num_constraints();
  auto fail = [](const std::string& what) { throw MalformedProblem(what); };
  if (constraint_matrix.size() != v * r) {
    std::ostringstream os;
    os << "constraint matrix has " << constraint_matrix.size()
       << " entries, expected " << r << "x" << v;
    fail(os.str());
  }
  if (constraint_sense.size() != r) fail("constraint sense count != rhs count");
  if (variable_lower_bounds.size() != v || variable_upper_bounds.size() != v) {
    fail("bound vectors must have one entry per variable");
  }
  for (std::size_t j = 0; j < v; ++j) {
    if (std::isnan(variable_lower_bounds[j]) ||
        std::isnan(variable_upper_bounds[j]) ||
        variable_lower_bounds[j] > variable_upper_bounds[j]) {
      std::ostringstream os;
      os << "variable " << j << " has invalid bounds ["
         << variable_lower_bounds[j] << ", " << variable_upper_bounds[j] << "]";
      fail(os.str());
    }
    if (!std::isfinite(objective[j])) fail("objective must be finite");
  }
  for (double a : constraint_matrix) {
    if (!std::isfinite(a)) fail("constraint coefficients must be finite");
  }
  for (double b : constraint_rhs) {
    if (!std::isfinite(b)) fail("constraint rhs must be finite");
  }
}

namespace {

// x_j = shift + sign * x'[pos] - x'[neg]
struct ColumnMap {
  int pos = -1;
  int neg = -1;
  double shift = 0.0;
  double sign = 1.0;
};

// Rows of the tableau in "a x {<=,=} b, b >= 0" form before slack columns.
struct StdRow {
  std::vector<double> coef;
  double rhs = 0.0;
  bool equality = false;
  bool needs_artificial = false;
};

class Simplex {
 public:
  Simplex(int rows, int structural, int slack, int artificial,
          const SolverOptions& options)
      : rows_(rows),
        cols_(structural + slack + artificial),
        first_artificial_(structural + slack),
        width_(cols_ + 1),
        a_(static_cast<std::size_t>(rows) * width_, 0.0),
        d_(width_, 0.0),
        basis_(rows, -1),
        row_alive_(rows, true),
        options_(options) {
    max_pivots_ = options.max_pivots > 0
                      ? options.max_pivots
                      : 200L * (rows + cols_) + 10000L;
  }

  double& at(int r, int c) { return a_[static_cast<std::size_t>(r) * width_ + c]; }
  double at(int r, int c) const {
    return a_[static_cast<std::size_t>(r) * width_ + c];
  }
  double& rhs(int r) { return at(r, cols_); }
  void set_basis(int r, int var) { basis_[r] = var; }
  long pivots() const { return pivots_; }
  int rows() const { return rows_; }
  int first_artificial() const { return first_artificial_; }

  // Phase 1. Returns the remaining sum of artificial values.
  double PhaseOne() {
    std::fill(d_.begin(), d_.end(), 0.0);
    for (int j = first_artificial_; j < cols_; ++j) d_[j] = -1.0;
    for (int r = 0; r < rows_; ++r) {
      if (basis_[r] >= first_artificial_) {
        for (int c = 0; c <= cols_; ++c) d_[c] += at(r, c);
      }
    }
    allow_artificial_ = true;
    Status st = Iterate();
    if (st != Status::kOptimal) {
      throw SolverFailure("phase one reported an unbounded ray");
    }
    return d_[cols_];  // equals the sum of artificials at the optimum
  }

  // Pivots basic artificials out, dropping rows that are redundant.
  void RemoveArtificials() {
    for (int r = 0; r < rows_; ++r) {
      if (!row_alive_[r] || basis_[r] < first_artificial_) continue;
      int best = -1;
      double best_abs = options_.pivot_tol;
      for (int c = 0; c < first_artificial_; ++c) {
        double v = std::abs(at(r, c));
        if (v > best_abs) {
          best_abs = v;
          best = c;
        }
      }
      if (best >= 0) {
        Pivot(r, best);
      } else {
        row_alive_[r] = false;
      }
    }
    allow_artificial_ = false;
  }

  Status PhaseTwo(const std::vector<double>& cost) {
    std::fill(d_.begin(), d_.end(), 0.0);
    for (std::size_t j = 0; j < cost.size(); ++j) d_[j] = cost[j];
    for (int r = 0; r < rows_; ++r) {
      if (!row_alive_[r]) continue;
      int b = basis_[r];
      double cb = b < static_cast<int>(cost.size()) ? cost[b] : 0.0;
      if (cb == 0.0) continue;
      for (int c = 0; c <= cols_; ++c) d_[c] -= cb * at(r, c);
    }
    return Iterate();
  }

  void Snapshot() { original_ = a_; }

  // Basic solution recomputed from the original rows by Gaussian elimination
  // with partial pivoting; used when the updated tableau has drifted.
  std::vector<double> RefinedBasicValues(int count) const {
    std::vector<int> live;
    for (int r = 0; r < rows_; ++r) {
      if (row_alive_[r]) live.push_back(r);
    }
    const int k = static_cast<int>(live.size());
    std::vector<double> B(static_cast<std::size_t>(k) * k);
    std::vector<double> rhs(k);
    auto orig = [&](int r, int c) {
      return original_[static_cast<std::size_t>(r) * width_ + c];
    };
    for (int a = 0; a < k; ++a) {
      rhs[a] = orig(live[a], cols_);
      for (int c = 0; c < k; ++c) B[a * k + c] = orig(live[a], basis_[live[c]]);
    }
    for (int c = 0; c < k; ++c) {
      int piv = c;
      for (int r = c + 1; r < k; ++r) {
        if (std::abs(B[r * k + c]) > std::abs(B[piv * k + c])) piv = r;
      }
      if (std::abs(B[piv * k + c]) < 1e-14) {
        throw SolverFailure("singular basis during refinement");
      }
      if (piv != c) {
        for (int q = 0; q < k; ++q) std::swap(B[piv * k + q], B[c * k + q]);
        std::swap(rhs[piv], rhs[c]);
      }
      for (int r = c + 1; r < k; ++r) {
        const double f = B[r * k + c] / B[c * k + c];
        if (f == 0.0) continue;
        for (int q = c; q < k; ++q) B[r * k + q] -= f * B[c * k + q];
        rhs[r] -= f * rhs[c];
      }
    }
    std::vector<double> sol(k);
    for (int c = k - 1; c >= 0; --c) {
      double v = rhs[c];
      for (int q = c + 1; q < k; ++q) v -= B[c * k + q] * sol[q];
      sol[c] = v / B[c * k + c];
    }
    std::vector<double> x(count, 0.0);
    for (int c = 0; c < k; ++c) {
      if (basis_[live[c]] < count) x[basis_[live[c]]] = std::max(0.0, sol[c]);
    }
    return x;
  }

  std::vector<double> BasicValues(int count) const {
    std::vector<double> x(count, 0.0);
    for (int r = 0; r < rows_; ++r) {
      if (!row_alive_[r]) continue;
      if (basis_[r] < count) x[basis_[r]] = std::max(0.0, at(r, cols_));
    }
    return x;
  }

 private:
  bool Enterable(int c) const { return allow_artificial_ || c < first_artificial_; }

  int ChooseEntering(bool bland) const {
    const double tol = options_.feasibility_tol;
    int q = -1;
    double best = tol;
    for (int c = 0; c < cols_; ++c) {
      if (!Enterable(c) || d_[c] <= tol) continue;
      if (bland) return c;
      if (d_[c] > best) {
        best = d_[c];
        q = c;
      }
    }
    return q;
  }

  int ChooseLeaving(int q, bool bland, bool* degenerate) const {
    int leave = -1;
    double best_ratio = 0.0;
    double best_pivot = 0.0;
    for (int r = 0; r < rows_; ++r) {
      if (!row_alive_[r]) continue;
      double arq = at(r, q);
      if (arq <= options_.pivot_tol) continue;
      double ratio = std::max(0.0, at(r, cols_)) / arq;
      if (leave < 0 || ratio < best_ratio - 1e-12 * (1.0 + best_ratio)) {
        leave = r;
        best_ratio = ratio;
        best_pivot = arq;
        continue;
      }
      if (ratio <= best_ratio + 1e-12 * (1.0 + best_ratio)) {
        bool take = bland ? basis_[r] < basis_[leave] : arq > best_pivot;
        if (take) {
          leave = r;
          best_ratio = std::min(best_ratio, ratio);
          best_pivot = arq;
        }
      }
    }
    *degenerate = leave >= 0 && best_ratio <= 1e-12;
    return leave;
  }

  Status Iterate() {
    bool bland = false;
    int degenerate_run = 0;
    while (true) {
      int q = ChooseEntering(bland);
      if (q < 0) return Status::kOptimal;
      bool degenerate = false;
      int r = ChooseLeaving(q, bland, &degenerate);
      if (r < 0) return Status::kUnbounded;
      if (degenerate) {
        if (++degenerate_run > options_.degenerate_switch) bland = true;
      } else {
        degenerate_run = 0;
      }
      Pivot(r, q);
      if (pivots_ > max_pivots_) {
        throw SolverFailure("simplex iteration limit exceeded");
      }
    }
  }

  void Pivot(int r, int q) {
    ++pivots_;
    double* prow = &a_[static_cast<std::size_t>(r) * width_];
    const double inv = 1.0 / prow[q];
    nz_.clear();
    for (int c = 0; c <= cols_; ++c) {
      if (prow[c] != 0.0) {
        prow[c] *= inv;
        if (std::abs(prow[c]) < 1e-14) {
          prow[c] = 0.0;
        } else {
          nz_.push_back(c);
        }
      }
    }
    prow[q] = 1.0;
    for (int i = 0; i < rows_; ++i) {
      if (i == r) continue;
      double* row = &a_[static_cast<std::size_t>(i) * width_];
      const double f = row[q];
      if (f == 0.0) continue;
      for (int c : nz_) row[c] -= f * prow[c];
      row[q] = 0.0;
    }
    const double f = d_[q];
    if (f != 0.0) {
      for (int c : nz_) d_[c] -= f * prow[c];
      d_[q] = 0.0;
    }
    basis_[r] = q;
  }

  int rows_;
  int cols_;
  int first_artificial_;
  int width_;
  std::vector<double> a_;
  std::vector<double> original_;
  std::vector<double> d_;
  std::vector<int> basis_;
  std::vector<bool> row_alive_;
  std::vector<int> nz_;
  SolverOptions options_;
  long pivots_ = 0;
  long max_pivots_ = 0;
  bool allow_artificial_ = true;
};

LpSolution SolveOnce(const LpProblem& problem, const SolverOptions& options) {
  const int nv = static_cast<int>(problem.num_variables());
  const int nr = static_cast<int>(problem.num_constraints());

  // Map original variables onto nonnegative columns.
  std::vector<ColumnMap> map(nv);
  int ns = 0;
  std::vector<StdRow> std_rows;
  std::vector<std::pair<int, double>> bound_rows;  // x'[col] <= value
  for (int j = 0; j < nv; ++j) {
    const double lo = problem.variable_lower_bounds[j];
    const double hi = problem.variable_upper_bounds[j];
    ColumnMap& cm = map[j];
    if (std::isfinite(lo)) {
      cm.pos = ns++;
      cm.shift = lo;
      cm.sign = 1.0;
      if (std::isfinite(hi)) bound_rows.emplace_back(cm.pos, hi - lo);
    } else if (std::isfinite(hi)) {
      cm.pos = ns++;
      cm.shift = hi;
      cm.sign = -1.0;
    } else {
      cm.pos = ns++;
      cm.neg = ns++;
    }
  }

  auto push_row = [&](std::vector<double> coef, double rhs, Sense sense) {
    if (rhs < 0.0) {
      for (double& c : coef) c = -c;
      rhs = -rhs;
      if (sense == Sense::kLessEqual) {
        sense = Sense::kGreaterEqual;
      } else if (sense == Sense::kGreaterEqual) {
        sense = Sense::kLessEqual;
      }
    }
    if (rhs == 0.0 && sense == Sense::kGreaterEqual) {
      for (double& c : coef) c = -c;
      sense = Sense::kLessEqual;
    }
    if (rhs == 0.0 && sense == Sense::kEqual) {
      // Paired inequalities avoid an artificial column.
      std::vector<double> neg(coef);
      for (double& c : neg) c = -c;
      std_rows.push_back({std::move(coef), 0.0, false, false});
      std_rows.push_back({std::move(neg), 0.0, false, false});
      return;
    }
    StdRow row;
    row.coef = std::move(coef);
    row.rhs = rhs;
    row.equality = sense == Sense::kEqual;
    row.needs_artificial = sense != Sense::kLessEqual;
    if (sense == Sense::kGreaterEqual) row.equality = false;
    // A ">=" row is stored with a surplus column; mark with negative rhs flag
    // through needs_artificial && !equality.
    std_rows.push_back(std::move(row));
  };

  for (int r = 0; r < nr; ++r) {
    std::vector<double> coef(ns, 0.0);
    double rhs = problem.constraint_rhs[r];
    for (int j = 0; j < nv; ++j) {
      const double a = problem.coefficient(r, j);
      if (a == 0.0) continue;
      const ColumnMap& cm = map[j];
      rhs -= a * cm.shift;
      coef[cm.pos] += a * cm.sign;
      if (cm.neg >= 0) coef[cm.neg] -= a;
    }
    push_row(std::move(coef), rhs, problem.constraint_sense[r]);
  }
  for (auto [col, value] : bound_rows) {
    std::vector<double> coef(ns, 0.0);
    coef[col] = 1.0;
    push_row(std::move(coef), value, Sense::kLessEqual);
  }

  const int rows = static_cast<int>(std_rows.size());
  int slack = 0;
  int artificial = 0;
  for (const StdRow& row : std_rows) {
    if (!row.equality) ++slack;
    if (row.needs_artificial) ++artificial;
  }

  Simplex simplex(rows, ns, slack, artificial, options);
  int next_slack = ns;
  int next_art = ns + slack;
  for (int r = 0; r < rows; ++r) {
    const StdRow& row = std_rows[r];
    for (int c = 0; c < ns; ++c) simplex.at(r, c) = row.coef[c];
    simplex.rhs(r) = row.rhs;
    if (!row.equality) {
      const bool surplus = row.needs_artificial;
      simplex.at(r, next_slack) = surplus ? -1.0 : 1.0;
      if (!surplus) simplex.set_basis(r, next_slack);
      ++next_slack;
    }
    if (row.needs_artificial) {
      simplex.at(r, next_art) = 1.0;
      simplex.set_basis(r, next_art);
      ++next_art;
    }
  }

  simplex.Snapshot();
  LpSolution solution;
  if (artificial > 0) {
    double scale = 1.0;
    for (const StdRow& row : std_rows) scale = std::max(scale, row.rhs);
    const double infeasibility = simplex.PhaseOne();
    if (infeasibility > options.feasibility_tol * scale) {
      solution.status = Status::kInfeasible;
      solution.pivots = simplex.pivots();
      return solution;
    }
    simplex.RemoveArtificials();
  }

  std::vector<double> cost(ns, 0.0);
  for (int j = 0; j < nv; ++j) {
    const double c = problem.objective[j];
    cost[map[j].pos] += c * map[j].sign;
    if (map[j].neg >= 0) cost[map[j].neg] -= c;
  }
  const Status st = simplex.PhaseTwo(cost);
  solution.pivots = simplex.pivots();
  if (st == Status::kUnbounded) {
    solution.status = Status::kUnbounded;
    return solution;
  }

  auto recover = [&](const std::vector<double>& xs) {
    std::vector<double> values(nv, 0.0);
    for (int j = 0; j < nv; ++j) {
      const ColumnMap& cm = map[j];
      double x = cm.shift + cm.sign * xs[cm.pos];
      if (cm.neg >= 0) x -= xs[cm.neg];
      values[j] = std::clamp(x, problem.variable_lower_bounds[j],
                             problem.variable_upper_bounds[j]);
    }
    return values;
  };
  // Largest scaled row violation; guards against silent breakdown of the
  // dense tableau.
  auto worst_violation = [&](const std::vector<double>& values, int* where) {
    double worst = 0.0;
    for (int r = 0; r < nr; ++r) {
      double lhs = 0.0;
      double mag = std::abs(problem.constraint_rhs[r]);
      for (int j = 0; j < nv; ++j) {
        const double t = problem.coefficient(r, j) * values[j];
        lhs += t;
        mag = std::max(mag, std::abs(t));
      }
      const double b = problem.constraint_rhs[r];
      double violation = 0.0;
      switch (problem.constraint_sense[r]) {
        case Sense::kLessEqual:
          violation = lhs - b;
          break;
        case Sense::kGreaterEqual:
          violation = b - lhs;
          break;
        case Sense::kEqual:
          violation = std::abs(lhs - b);
          break;
      }
      violation /= 1.0 + mag;
      if (violation > worst) {
        worst = violation;
        *where = r;
      }
    }
    return worst;
  };

  solution.values = recover(simplex.BasicValues(ns));
  int bad_row = -1;
  if (worst_violation(solution.values, &bad_row) > 1e-7) {
    solution.values = recover(simplex.RefinedBasicValues(ns));
    const double v = worst_violation(solution.values, &bad_row);
    if (v > 1e-7) {
      std::ostringstream os;
      os << "numerical breakdown: row " << bad_row << " violated by " << v;
      throw SolverFailure(os.str());
    }
  }

  double obj = 0.0;
  for (int j = 0; j < nv; ++j) obj += problem.objective[j] * solution.values[j];
  solution.objective_value = obj;
  solution.status = Status::kOptimal;
  return solution;
}

}  // namespace

LpSolution SolveLp(const LpProblem& problem, const SolverOptions& options) {
  problem.Validate();
  try {
    return SolveOnce(problem, options);
  } catch (const SolverFailure&) {
  }
  // Tiny pivots are the usual culprit; retry with a stricter pivot
  // threshold, then with Bland's rule throughout.
  SolverOptions strict = options;
  strict.pivot_tol = std::max(options.pivot_tol, 1e-8);
  try {
    return SolveOnce(problem, strict);
  } catch (const SolverFailure&) {
  }
  strict.degenerate_switch = 0;
  return SolveOnce(problem, strict);
}

int LpBuilder::AddVariable(double lower, double upper, double objective) {
  objective_.push_back(objective);
  lower_.push_back(lower);
  upper_.push_back(upper);
  return static_cast<int>(objective_.size()) - 1;
}

int LpBuilder::AddVariables(int count, double lower, double upper) {
  const int first = num_variables();
  for (int i = 0; i < count; ++i) AddVariable(lower, upper);
  return first;
}

void LpBuilder::SetObjective(int var, double coefficient) {
  objective_.at(var) = coefficient;
}

void LpBuilder::AddObjective(int var, double coefficient) {
  objective_.at(var) += coefficient;
}

int LpBuilder::AddRow(const std::vector<Term>& terms, Sense sense, double rhs) {
  rows_.push_back(terms);
  senses_.push_back(sense);
  rhs_.push_back(rhs);
  return num_rows() - 1;
}

LpProblem LpBuilder::Build() const {
  LpProblem p;
  const std::size_t v = objective_.size();
  p.objective = objective_;
  p.variable_lower_bounds = lower_;
  p.variable_upper_bounds = upper_;
  p.constraint_rhs = rhs_;
  p.constraint_sense = senses_;
  p.constraint_matrix.assign(v * rhs_.size(), 0.0);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (auto [col, coef] : rows_[r]) {
      if (col < 0 || static_cast<std::size_t>(col) >= v) {
        throw MalformedProblem("row references unknown variable");
      }
      p.constraint_matrix[r * v + col] += coef;
    }
  }
  return p;
}

}  // namespace dynstack::lp
