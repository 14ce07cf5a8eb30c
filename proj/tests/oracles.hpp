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

#ifndef DYNSTACK_TESTS_ORACLES_HPP_
#define DYNSTACK_TESTS_ORACLES_HPP_

// Brute-force reference implementations shared by the test binaries.

#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "dynstack/game.hpp"
#include "dynstack/lp.hpp"
#include "dynstack/policy_tree.hpp"

namespace dynstack::testing {

// Scales nonnegative weights onto the simplex.
inline MixedStrategy Normalized(std::vector<double> w) {
  double sum = 0.0;
  for (double v : w) sum += v;
  for (double& v : w) v /= sum;
  return MakeStrategy(w, static_cast<int>(w.size()));
}

// Random LP with 1..4 variables in a box and 1..6 general rows.
inline lp::LpProblem RandomLp(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nv(1, 4), nr(1, 6), sense(0, 5);
  std::uniform_real_distribution<double> coef(-3.0, 3.0), ub(1.0, 5.0);
  lp::LpProblem p;
  const int v = nv(rng), r = nr(rng);
  for (int j = 0; j < v; ++j) {
    p.objective.push_back(coef(rng));
    p.variable_lower_bounds.push_back(0.0);
    p.variable_upper_bounds.push_back(ub(rng));
  }
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < v; ++j) p.constraint_matrix.push_back(coef(rng));
    p.constraint_rhs.push_back(coef(rng) + 2.0);
    const int s = sense(rng);
    p.constraint_sense.push_back(s < 4   ? lp::Sense::kLessEqual
                                 : s < 5 ? lp::Sense::kGreaterEqual
                                         : lp::Sense::kEqual);
  }
  return p;
}

// Brute force: every vertex is the solution of v tight constraints drawn
// from the rows and the bounds.
inline std::optional<double> VertexOptimum(const lp::LpProblem& p) {
  const int v = static_cast<int>(p.num_variables());
  std::vector<std::vector<double>> planes;
  std::vector<double> rhs;
  for (std::size_t i = 0; i < p.num_constraints(); ++i) {
    planes.emplace_back(p.constraint_matrix.begin() + i * v,
                        p.constraint_matrix.begin() + (i + 1) * v);
    rhs.push_back(p.constraint_rhs[i]);
  }
  for (int j = 0; j < v; ++j) {
    std::vector<double> e(v, 0.0);
    e[j] = 1.0;
    planes.push_back(e);
    rhs.push_back(p.variable_lower_bounds[j]);
    planes.push_back(e);
    rhs.push_back(p.variable_upper_bounds[j]);
  }
  const int h = static_cast<int>(planes.size());
  std::optional<double> best;
  std::vector<int> pick(v);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == v) {
      std::vector<std::vector<double>> a(v, std::vector<double>(v + 1));
      for (int r = 0; r < v; ++r) {
        for (int c = 0; c < v; ++c) a[r][c] = planes[pick[r]][c];
        a[r][v] = rhs[pick[r]];
      }
      for (int c = 0; c < v; ++c) {
        int piv = c;
        for (int r = c + 1; r < v; ++r) {
          if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        }
        if (std::abs(a[piv][c]) < 1e-12) return;
        std::swap(a[c], a[piv]);
        for (int r = 0; r < v; ++r) {
          if (r == c) continue;
          const double f = a[r][c] / a[c][c];
          for (int k = c; k <= v; ++k) a[r][k] -= f * a[c][k];
        }
      }
      std::vector<double> x(v);
      for (int c = 0; c < v; ++c) x[c] = a[c][v] / a[c][c];
      for (int j = 0; j < v; ++j) {
        if (x[j] < p.variable_lower_bounds[j] - 1e-9 ||
            x[j] > p.variable_upper_bounds[j] + 1e-9) {
          return;
        }
      }
      for (std::size_t i = 0; i < p.num_constraints(); ++i) {
        double lhs = 0.0;
        for (int j = 0; j < v; ++j) lhs += p.coefficient(i, j) * x[j];
        const double b = p.constraint_rhs[i];
        const lp::Sense s = p.constraint_sense[i];
        if ((s != lp::Sense::kGreaterEqual && lhs > b + 1e-9) ||
            (s != lp::Sense::kLessEqual && lhs < b - 1e-9)) {
          return;
        }
      }
      double obj = 0.0;
      for (int j = 0; j < v; ++j) obj += p.objective[j] * x[j];
      if (!best || obj > *best) best = obj;
      return;
    }
    for (int i = start; i < h; ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

struct PathOptimum {
  double follower = -1e300;
  double leader = -1e300;  // best leader total among follower-optimal paths
};

// Enumerates all n^T response paths through the tree.
inline PathOptimum BrutePaths(const PolicyTree& tree, const Game& game,
                              int type, double eps = 1e-9) {
  const int T = tree.horizon();
  const int n = tree.n();
  std::vector<std::pair<double, double>> totals;
  ResponsePath path(T, 0);
  while (true) {
    double f = 0.0, l = 0.0;
    int node = 0;
    for (int t = 0; t < T; ++t) {
      f += FollowerUtility(game, type, tree.at(node), path[t]);
      l += LeaderUtility(game, tree.at(node), path[t]);
      if (t + 1 < T) node = tree.Child(node, path[t]);
    }
    totals.emplace_back(f, l);
    int d = T - 1;
    while (d >= 0 && ++path[d] == n) path[d--] = 0;
    if (d < 0) break;
  }
  PathOptimum out;
  for (const auto& [f, l] : totals) out.follower = std::max(out.follower, f);
  for (const auto& [f, l] : totals) {
    if (f >= out.follower - eps) out.leader = std::max(out.leader, l);
  }
  return out;
}

// Best leader-favored utility of a fixed strategy on a grid of step 1/steps
// over the 2- or 3-simplex.
inline double GridBse(const Game& game, int steps) {
  double best = -1e300;
  auto eval = [&](const MixedStrategy& x) {
    best = std::max(best, ExpectedLeaderUtility(game, x));
  };
  if (game.m == 2) {
    for (int a = 0; a <= steps; ++a) {
      eval({a / double(steps), 1.0 - a / double(steps)});
    }
  } else if (game.m == 3) {
    for (int a = 0; a <= steps; ++a) {
      for (int b = 0; a + b <= steps; ++b) {
        eval({a / double(steps), b / double(steps),
              (steps - a - b) / double(steps)});
      }
    }
  }
  return best;
}

}  // namespace dynstack::testing

#endif  // DYNSTACK_TESTS_ORACLES_HPP_
