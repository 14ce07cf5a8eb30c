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

#include "dynstack/static_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "dynstack/lp.hpp"

namespace dynstack {

using lp::LpBuilder;
using lp::Sense;

namespace {

double Sig12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::vector<double> Sig12(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Sig12(v[i]);
  return out;
}

MixedStrategy Normalized(std::vector<double> x) {
  double s = 0.0;
  for (double& v : x) {
    v = std::max(0.0, v);
    s += v;
  }
  for (double& v : x) v /= s;
  return x;
}

// Adds x in the simplex; returns the first column.
int AddSimplex(LpBuilder& b, int m) {
  const int first = b.AddVariables(m, 0.0, lp::kInfinity);
  std::vector<LpBuilder::Term> row;
  for (int i = 0; i < m; ++i) row.push_back({first + i, 1.0});
  b.AddRow(row, Sense::kEqual, 1.0);
  return first;
}

// V(x, j) - V(x, j') >= margin for every j' != j.
void AddBestResponseRows(LpBuilder& b, const Game& game, int type, int j,
                         int x0, int margin_var = -1) {
  const Matrix& C = game.C(type);
  for (int jp = 0; jp < game.n; ++jp) {
    if (jp == j) continue;
    std::vector<LpBuilder::Term> row;
    for (int i = 0; i < game.m; ++i) {
      const double d = C[i][j] - C[i][jp];
      if (d != 0.0) row.push_back({x0 + i, d});
    }
    if (margin_var >= 0) row.push_back({margin_var, -1.0});
    if (row.empty()) continue;
    b.AddRow(row, Sense::kGreaterEqual, 0.0);
  }
}

class BseSearch {
 public:
  explicit BseSearch(const Game& game) : game_(game) {
    types_ = game.SupportTypes();
    const int K = static_cast<int>(types_.size());
    candidates_.resize(K);
    best_single_.assign(K, 0.0);
    for (int k = 0; k < K; ++k) {
      for (int j = 0; j < game.n; ++j) {
        auto r = SolveInducedLp(game, types_[k], j);
        if (r) candidates_[k].push_back({r->first, j});
      }
      std::stable_sort(
          candidates_[k].begin(), candidates_[k].end(),
          [](const auto& a, const auto& b) { return a.first > b.first; });
      best_single_[k] = candidates_[k].front().first;
    }
    rest_.assign(K + 1, 0.0);
    for (int k = K - 1; k >= 0; --k) {
      rest_[k] = rest_[k + 1] + game.prior[types_[k]] * best_single_[k];
    }
    assignment_.assign(K, -1);
  }

  void Seed(const MixedStrategy& x) {
    std::vector<int> resp;
    double v = 0.0;
    for (int t : types_) {
      int j = LeaderFavoredResponse(game_, t, x);
      resp.push_back(j);
      v += game_.prior[t] * LeaderUtility(game_, x, j);
    }
    // Re-solve so the incumbent is an exact LP vertex for its assignment.
    auto sol = SolveAssignment(resp, static_cast<int>(resp.size()));
    if (sol && (!have_ || sol->first > best_value_)) {
      have_ = true;
      best_value_ = sol->first;
      best_x_ = sol->second;
      best_assignment_ = resp;
    } else if (!sol && (!have_ || v > best_value_)) {
      have_ = true;
      best_value_ = v;
      best_x_ = x;
      best_assignment_ = resp;
    }
  }

  void Run() { Dfs(0, 0.0); }

  double best_value() const { return best_value_; }
  const MixedStrategy& best_x() const { return best_x_; }
  const std::vector<int>& best_assignment() const { return best_assignment_; }
  const std::vector<int>& types() const { return types_; }

 private:
  std::optional<std::pair<double, MixedStrategy>> SolveAssignment(
      const std::vector<int>& resp, int count) const {
    LpBuilder b;
    const int x0 = AddSimplex(b, game_.m);
    for (int k = 0; k < count; ++k) {
      const int t = types_[k];
      for (int i = 0; i < game_.m; ++i) {
        b.AddObjective(x0 + i, game_.prior[t] * game_.R[i][resp[k]]);
      }
      AddBestResponseRows(b, game_, t, resp[k], x0);
    }
    auto sol = lp::SolveLp(b.Build());
    if (!sol.optimal()) return std::nullopt;
    return std::make_pair(sol.objective_value, Normalized(sol.values));
  }

  double Tol() const { return 1e-9 * (1.0 + std::abs(best_value_)); }

  void Dfs(int k, double parent_value) {
    const int K = static_cast<int>(types_.size());
    if (k == K) {
      if (!have_ || parent_value > best_value_ + Tol()) {
        auto sol = SolveAssignment(assignment_, K);
        have_ = true;
        best_value_ = sol->first;
        best_x_ = sol->second;
        best_assignment_ = assignment_;
      }
      return;
    }
    const double mu = game_.prior[types_[k]];
    for (const auto& [value, j] : candidates_[k]) {
      if (have_ && parent_value + mu * value + rest_[k + 1] <=
                       best_value_ + Tol()) {
        break;
      }
      assignment_[k] = j;
      auto sol = SolveAssignment(assignment_, k + 1);
      if (!sol) continue;
      if (have_ && sol->first + rest_[k + 1] <= best_value_ + Tol()) continue;
      Dfs(k + 1, sol->first);
    }
    assignment_[k] = -1;
  }

  const Game& game_;
  std::vector<int> types_;
  std::vector<std::vector<std::pair<double, int>>> candidates_;
  std::vector<double> best_single_;
  std::vector<double> rest_;
  std::vector<int> assignment_;
  bool have_ = false;
  double best_value_ = 0.0;
  MixedStrategy best_x_;
  std::vector<int> best_assignment_;
};

// Among strategies attaining `value` for the assignment, moves to one whose
// responses are strict by the largest margin. Keeps x when no strict
// interior exists.
MixedStrategy CenterStrategy(const Game& game, const std::vector<int>& types,
                             const std::vector<int>& resp, double value,
                             const MixedStrategy& x) {
  if (game.n < 2) return x;
  LpBuilder b;
  const int x0 = AddSimplex(b, game.m);
  const int margin = b.AddVariable(0.0, lp::kInfinity, 1.0);
  std::vector<LpBuilder::Term> obj_row;
  for (std::size_t k = 0; k < types.size(); ++k) {
    const int t = types[k];
    for (int i = 0; i < game.m; ++i) {
      obj_row.push_back({x0 + i, game.prior[t] * game.R[i][resp[k]]});
    }
    AddBestResponseRows(b, game, t, resp[k], x0, margin);
  }
  b.AddRow(obj_row, Sense::kGreaterEqual,
           value - 1e-9 * (1.0 + std::abs(value)));
  auto sol = lp::SolveLp(b.Build());
  if (!sol.optimal() || sol.values[margin] <= kBestResponseTol) return x;
  std::vector<double> y(sol.values.begin() + x0,
                        sol.values.begin() + x0 + game.m);
  return Normalized(y);
}

}  // namespace

std::optional<std::pair<double, MixedStrategy>> SolveInducedLp(
    const Game& game, int type, int j) {
  LpBuilder b;
  const int x0 = AddSimplex(b, game.m);
  for (int i = 0; i < game.m; ++i) b.SetObjective(x0 + i, game.R[i][j]);
  AddBestResponseRows(b, game, type, j, x0);
  auto sol = lp::SolveLp(b.Build());
  if (!sol.optimal()) return std::nullopt;
  return std::make_pair(sol.objective_value, Normalized(sol.values));
}

StaticEquilibrium SolveSse(const Game& game, int type) {
  game.Validate();
  if (type < 0 || type >= game.num_types()) {
    throw InputError("type index out of range");
  }
  int best_j = -1;
  double best = 0.0;
  MixedStrategy best_x;
  for (int j = 0; j < game.n; ++j) {
    auto r = SolveInducedLp(game, type, j);
    if (!r) continue;
    if (best_j < 0 || r->first > best + 1e-12 * (1.0 + std::abs(best))) {
      best_j = j;
      best = r->first;
      best_x = r->second;
    }
  }
  StaticEquilibrium eq;
  eq.strategy = best_x;
  eq.per_type_response.assign(game.num_types(), 0);
  for (int t = 0; t < game.num_types(); ++t) {
    eq.per_type_response[t] =
        t == type ? best_j : LeaderFavoredResponse(game, t, best_x);
  }
  eq.leader_utility = LeaderUtility(game, best_x, best_j);
  return eq;
}

StaticEquilibrium SolveBse(const Game& game) {
  game.Validate();
  BseSearch search(game);
  for (int i = 0; i < game.m; ++i) search.Seed(PureStrategy(game.m, i));
  for (int t : game.SupportTypes()) {
    for (int j = 0; j < game.n; ++j) {
      auto r = SolveInducedLp(game, t, j);
      if (r) search.Seed(r->second);
    }
  }
  search.Run();

  const std::vector<int>& types = search.types();
  const std::vector<int>& resp = search.best_assignment();
  MixedStrategy x =
      CenterStrategy(game, types, resp, search.best_value(), search.best_x());

  StaticEquilibrium eq;
  eq.strategy = x;
  eq.per_type_response.assign(game.num_types(), 0);
  for (int t = 0; t < game.num_types(); ++t) {
    eq.per_type_response[t] = LeaderFavoredResponse(game, t, x);
  }
  for (std::size_t k = 0; k < types.size(); ++k) {
    eq.per_type_response[types[k]] = resp[k];
  }
  double u = 0.0;
  for (int t : types) {
    u += game.prior[t] * LeaderUtility(game, x, eq.per_type_response[t]);
  }
  eq.leader_utility = u;
  return eq;
}

StaticEquilibrium SolveSubgroupBse(const Game& game,
                                   const std::vector<int>& subset) {
  if (subset.empty()) throw InputError("subgroup must be nonempty");
  Game sub = RestrictGame(game, subset);
  StaticEquilibrium inner = SolveBse(sub);
  StaticEquilibrium eq;
  eq.strategy = inner.strategy;
  eq.leader_utility = inner.leader_utility;
  eq.per_type_response.assign(game.num_types(), 0);
  for (int t = 0; t < game.num_types(); ++t) {
    eq.per_type_response[t] = LeaderFavoredResponse(game, t, eq.strategy);
  }
  for (std::size_t k = 0; k < subset.size(); ++k) {
    eq.per_type_response[subset[k]] = inner.per_type_response[k];
  }
  return eq;
}

namespace {

struct MenuLp {
  LpBuilder builder;
  int K = 0;
  int delta = -1;
  int W(const Game& g, int k, int j, int i) const {
    return (k * g.n + j) * g.m + i;
  }
};

// Menu variables w[k][j][i] >= 0 stand for p_{k,j} x_{k,j,i}.
MenuLp BuildMenuLp(const Game& game, bool with_delta) {
  MenuLp lpm;
  LpBuilder& b = lpm.builder;
  const int K = game.num_types();
  const int m = game.m;
  const int n = game.n;
  lpm.K = K;
  b.AddVariables(K * n * m, 0.0, lp::kInfinity);
  if (with_delta) {
    lpm.delta = b.AddVariable(0.0, lp::kInfinity, 1.0);
  } else {
    for (int k = 0; k < K; ++k) {
      for (int j = 0; j < n; ++j) {
        for (int i = 0; i < m; ++i) {
          b.SetObjective(lpm.W(game, k, j, i), game.prior[k] * game.R[i][j]);
        }
      }
    }
  }
  for (int k = 0; k < K; ++k) {
    const Matrix& C = game.C(k);
    std::vector<LpBuilder::Term> norm;
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < m; ++i) norm.push_back({lpm.W(game, k, j, i), 1.0});
      for (int jp = 0; jp < n; ++jp) {
        if (jp == j) continue;
        std::vector<LpBuilder::Term> row;
        for (int i = 0; i < m; ++i) {
          const double d = C[i][j] - C[i][jp];
          if (d != 0.0) row.push_back({lpm.W(game, k, j, i), d});
        }
        if (!row.empty()) b.AddRow(row, Sense::kGreaterEqual, 0.0);
      }
    }
    b.AddRow(norm, Sense::kEqual, 1.0);
  }
  for (int k = 0; k < K; ++k) {
    const Matrix& C = game.C(k);
    for (int kp = 0; kp < K; ++kp) {
      if (kp == k) continue;
      const int t0 = b.AddVariables(n, -lp::kInfinity, lp::kInfinity);
      for (int j = 0; j < n; ++j) {
        for (int jpp = 0; jpp < n; ++jpp) {
          std::vector<LpBuilder::Term> row{{t0 + j, 1.0}};
          for (int i = 0; i < m; ++i) {
            row.push_back({lpm.W(game, kp, j, i), -C[i][jpp]});
          }
          b.AddRow(row, Sense::kGreaterEqual, 0.0);
        }
      }
      std::vector<LpBuilder::Term> ic;
      for (int j = 0; j < n; ++j) {
        for (int i = 0; i < m; ++i) ic.push_back({lpm.W(game, k, j, i), C[i][j]});
        ic.push_back({t0 + j, -1.0});
      }
      if (with_delta) ic.push_back({lpm.delta, -1.0});
      b.AddRow(ic, Sense::kGreaterEqual, 0.0);
    }
  }
  return lpm;
}

RandomizedMenu RecoverMenu(const Game& game, const MenuLp& lpm,
                           const std::vector<double>& values) {
  RandomizedMenu out;
  out.menu.assign(lpm.K, std::vector<MenuEntry>(game.n));
  for (int k = 0; k < lpm.K; ++k) {
    double total = 0.0;
    for (int j = 0; j < game.n; ++j) {
      std::vector<double> w(game.m);
      double p = 0.0;
      for (int i = 0; i < game.m; ++i) {
        w[i] = std::max(0.0, values[lpm.W(game, k, j, i)]);
        p += w[i];
      }
      MenuEntry& e = out.menu[k][j];
      if (p <= 1e-9) {
        e.p = 0.0;
        e.x = UniformStrategy(game.m);
      } else {
        e.p = p;
        e.x = Normalized(w);
      }
      total += e.p;
    }
    for (auto& e : out.menu[k]) e.p /= total;
  }
  double u = 0.0;
  for (int k = 0; k < lpm.K; ++k) {
    for (int j = 0; j < game.n; ++j) {
      const MenuEntry& e = out.menu[k][j];
      if (e.p > 0.0) u += game.prior[k] * e.p * LeaderUtility(game, e.x, j);
    }
  }
  out.leader_utility = u;
  return out;
}

}  // namespace

RandomizedMenu SolveRme(const Game& game) {
  game.Validate();
  MenuLp lpm = BuildMenuLp(game, false);
  auto sol = lp::SolveLp(lpm.builder.Build());
  if (!sol.optimal()) {
    throw lp::SolverFailure("menu LP returned " + lp::ToString(sol.status));
  }
  RandomizedMenu menu = RecoverMenu(game, lpm, sol.values);
  menu.leader_utility = sol.objective_value;
  return menu;
}

InducibilityGap ComputeInducibilityGap(const Game& game) {
  game.Validate();
  InducibilityGap gap;
  if (game.num_types() == 1) {
    double lo = game.C(0)[0][0];
    double hi = lo;
    for (const auto& row : game.C(0)) {
      for (double v : row) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    gap.delta = hi - lo;
    gap.vacuous = true;
    gap.witness = SolveRme(game);
    return gap;
  }
  MenuLp lpm = BuildMenuLp(game, true);
  auto sol = lp::SolveLp(lpm.builder.Build());
  if (!sol.optimal()) {
    throw lp::SolverFailure("gap LP returned " + lp::ToString(sol.status));
  }
  gap.delta = std::max(0.0, sol.values[lpm.delta]);
  gap.witness = RecoverMenu(game, lpm, sol.values);
  return gap;
}

MixedStrategy MinimaxPunishment(const Game& game) {
  LpBuilder b;
  const int y0 = AddSimplex(b, game.m);
  const int z = b.AddVariable(-lp::kInfinity, lp::kInfinity, -1.0);
  for (int t : game.SupportTypes()) {
    for (int j = 0; j < game.n; ++j) {
      std::vector<LpBuilder::Term> row{{z, -1.0}};
      for (int i = 0; i < game.m; ++i) row.push_back({y0 + i, game.C(t)[i][j]});
      b.AddRow(row, Sense::kLessEqual, 0.0);
    }
  }
  auto sol = lp::SolveLp(b.Build());
  if (!sol.optimal()) throw lp::SolverFailure("punishment LP failed");
  return Normalized(std::vector<double>(sol.values.begin() + y0,
                                        sol.values.begin() + y0 + game.m));
}

double MenuReportValue(const Game& game, const RandomizedMenu& menu, int type,
                       int reported) {
  double v = 0.0;
  for (int j = 0; j < game.n; ++j) {
    const MenuEntry& e = menu.menu.at(reported)[j];
    if (e.p <= 0.0) continue;
    if (reported == type) {
      v += e.p * FollowerUtility(game, type, e.x, j);
    } else {
      double best = -lp::kInfinity;
      for (int jp = 0; jp < game.n; ++jp) {
        best = std::max(best, FollowerUtility(game, type, e.x, jp));
      }
      v += e.p * best;
    }
  }
  return v;
}

nlohmann::json ToJson(const StaticEquilibrium& eq) {
  return {{"strategy", Sig12(eq.strategy)},
          {"per_type_response", eq.per_type_response},
          {"leader_utility", Sig12(eq.leader_utility)}};
}

nlohmann::json ToJson(const RandomizedMenu& menu) {
  nlohmann::json types = nlohmann::json::array();
  for (const auto& row : menu.menu) {
    nlohmann::json entries = nlohmann::json::array();
    for (std::size_t j = 0; j < row.size(); ++j) {
      entries.push_back({{"j", j}, {"p", Sig12(row[j].p)}, {"x", Sig12(row[j].x)}});
    }
    types.push_back(entries);
  }
  return {{"menu", types}, {"leader_utility", Sig12(menu.leader_utility)}};
}

}  // namespace dynstack
