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

#include "dynstack/learning.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <thread>

#include "dynstack/dynamic_solvers.hpp"

namespace dynstack {

namespace {

std::set<int> UnionBr(const std::vector<std::vector<int>>& br,
                      const std::vector<int>& types) {
  std::set<int> out;
  for (int t : types) out.insert(br[t].begin(), br[t].end());
  return out;
}

bool Disjoint(const std::set<int>& a, const std::set<int>& b) {
  for (int v : a) {
    if (b.count(v)) return false;
  }
  return true;
}

std::vector<std::vector<int>> BrSets(const Game& game, const MixedStrategy& x,
                                     double eps) {
  std::vector<std::vector<int>> br(game.num_types());
  for (int t = 0; t < game.num_types(); ++t) {
    br[t] = BestResponseSet(game, t, x, eps);
  }
  return br;
}

// Leader utility of x on `subset` with renormalized prior.
double SubsetUtility(const Game& game, const std::vector<int>& subset,
                     const MixedStrategy& x, double eps) {
  double mass = 0.0;
  double u = 0.0;
  for (int t : subset) {
    mass += game.prior[t];
    u += game.prior[t] *
         LeaderUtility(game, x, LeaderFavoredResponse(game, t, x, eps));
  }
  return mass > 0.0 ? u / mass : 0.0;
}

std::vector<int> Complement(const std::vector<int>& support,
                            const std::vector<int>& subset) {
  std::vector<int> out;
  for (int t : support) {
    if (std::find(subset.begin(), subset.end(), t) == subset.end()) {
      out.push_back(t);
    }
  }
  return out;
}

}  // namespace

bool HasDominantLeaderAction(const Game& game) {
  for (int i = 0; i < game.m; ++i) {
    bool dominates = true;
    for (int r = 0; r < game.m && dominates; ++r) {
      for (int j = 0; j < game.n; ++j) {
        if (game.R[i][j] < game.R[r][j]) {
          dominates = false;
          break;
        }
      }
    }
    if (dominates) return true;
  }
  return false;
}

LearnabilityReport CheckAssumption(const Game& game,
                                   const CheckOptions& options) {
  game.Validate();
  LearnabilityReport report;
  report.leader_has_dominant_action = HasDominantLeaderAction(game);
  report.bse = SolveBse(game);
  const MixedStrategy& x = report.bse.strategy;
  const double eps = options.br_tol;
  report.br_sets = BrSets(game, x, eps);
  const std::vector<int> support = game.SupportTypes();
  const int K = static_cast<int>(support.size());
  if (K < 2) return report;
  const auto wide = BrSets(game, x, 10.0 * eps);
  for (unsigned mask = 1; mask + 1 < (1u << K); ++mask) {
    std::vector<int> subset;
    std::vector<int> rest;
    for (int k = 0; k < K; ++k) {
      ((mask >> k) & 1u ? subset : rest).push_back(support[k]);
    }
    if (!Disjoint(UnionBr(report.br_sets, subset),
                  UnionBr(report.br_sets, rest))) {
      continue;
    }
    SubgroupReport sub;
    sub.subset = subset;
    sub.subgroup_utility = SolveSubgroupBse(game, subset).leader_utility;
    sub.baseline_utility = SubsetUtility(game, subset, x, eps);
    sub.gain = sub.subgroup_utility - sub.baseline_utility;
    if (sub.gain <= 1e-7) continue;
    sub.tolerance_marginal =
        !Disjoint(UnionBr(wide, subset), UnionBr(wide, rest));
    report.satisfying_subsets.push_back(sub);
    if (options.stop_at_first) break;
  }
  report.assumption_satisfied = !report.satisfying_subsets.empty();
  return report;
}

ConstructedLearningPolicy ConstructLearningPolicy(
    const Game& game, const std::vector<int>& subgroup, int horizon,
    double br_tol) {
  game.Validate();
  const std::vector<int> support = game.SupportTypes();
  std::vector<int> sub(subgroup);
  std::sort(sub.begin(), sub.end());
  sub.erase(std::unique(sub.begin(), sub.end()), sub.end());
  for (int t : sub) {
    if (t < 0 || t >= game.num_types() || game.prior[t] <= 0.0) {
      throw PreconditionError("subgroup must contain supported types only");
    }
  }
  const std::vector<int> rest = Complement(support, sub);
  if (sub.empty() || rest.empty()) {
    throw PreconditionError("subgroup must be a proper nonempty subset");
  }

  ConstructedLearningPolicy out;
  out.subgroup = sub;
  StaticEquilibrium bse = SolveBse(game);
  const MixedStrategy& xs = bse.strategy;
  out.x_star = xs;
  const auto br = BrSets(game, xs, br_tol);
  const std::set<int> br_sub = UnionBr(br, sub);
  if (!Disjoint(br_sub, UnionBr(br, rest))) {
    throw PreconditionError(
        "best responses of the subgroup and its complement overlap");
  }
  const MixedStrategy xh = SolveSubgroupBse(game, sub).strategy;
  out.x_hat = xh;
  if (SubsetUtility(game, sub, xh, br_tol) <=
      SubsetUtility(game, sub, xs, br_tol) + 1e-7) {
    throw PreconditionError("subgroup optimum does not improve on x*");
  }

  // Smallest T for which the incentive inequalities hold.
  auto holds = [&](int T) {
    for (int t : sub) {
      const int js = LeaderFavoredResponse(game, t, xs, br_tol);
      const int jh = LeaderFavoredResponse(game, t, xh, br_tol);
      double outside = -std::numeric_limits<double>::infinity();
      for (int j = 0; j < game.n; ++j) {
        if (!br_sub.count(j)) {
          outside = std::max(outside, FollowerUtility(game, t, xs, j));
        }
      }
      const double lhs = (T - 1) * FollowerUtility(game, t, xs, js) +
                         FollowerUtility(game, t, xh, jh);
      const double rhs = std::isfinite(outside)
                             ? (T - 1) * outside +
                                   FollowerUtility(game, t, xs, js)
                             : -std::numeric_limits<double>::infinity();
      if (lhs < rhs) return false;
    }
    for (int t : rest) {
      const int js = LeaderFavoredResponse(game, t, xs, br_tol);
      const int jh = LeaderFavoredResponse(game, t, xh, br_tol);
      double inside = -std::numeric_limits<double>::infinity();
      for (int j : br_sub) {
        inside = std::max(inside, FollowerUtility(game, t, xs, j));
      }
      const double lhs = T * FollowerUtility(game, t, xs, js);
      const double rhs =
          (T - 1) * inside + FollowerUtility(game, t, xh, jh);
      if (lhs < rhs) return false;
    }
    return true;
  };
  constexpr int kMaxHorizon = 1'000'000;
  int t_star = 2;
  while (t_star <= kMaxHorizon && !holds(t_star)) ++t_star;
  if (t_star > kMaxHorizon) {
    throw PreconditionError("no horizon up to 10^6 satisfies the incentives");
  }
  out.t_star = t_star;
  const int T = horizon > 0 ? horizon : t_star;
  out.horizon = T;
  if (T < 2) throw InputError("the learning policy needs T >= 2");

  PolicyTree tree(game.m, game.n, T);
  // inside[node]: every response so far lies in BR(subgroup).
  std::vector<char> inside(tree.num_nodes(), 1);
  const int last = tree.DepthOffset(T - 1);
  for (int node = 0; node < tree.num_nodes(); ++node) {
    tree.at(node) = node >= last && inside[node] ? xh : xs;
    if (node >= last) continue;
    for (int j = 0; j < game.n; ++j) {
      inside[tree.Child(node, j)] = inside[node] && br_sub.count(j) > 0;
    }
  }
  out.policy = tree;
  out.static_baseline = T * bse.leader_utility;

  out.certified = true;
  out.per_type_path.assign(game.num_types(), {});
  for (int t = 0; t < game.num_types(); ++t) {
    OracleResult o = FollowerOracle(tree, game, t, br_tol);
    out.per_type_path[t] = o.path;
    if (game.prior[t] <= 0.0) continue;
    out.total_utility += game.prior[t] * o.leader_value;
    const bool member = std::binary_search(sub.begin(), sub.end(), t);
    for (int r = 0; r + 1 < T; ++r) {
      if ((br_sub.count(o.path[r]) > 0) != member) {
        out.certified = false;
        out.failure = "type " + game.types[t].name + (member ? " leaves" : " enters") +
                      " the subgroup responses in round " + std::to_string(r + 1);
      }
    }
  }
  if (out.certified && out.total_utility <= out.static_baseline + 1e-9) {
    out.certified = false;
    out.failure = "utility does not exceed the repeated static optimum";
  }
  if (T < t_star) {
    out.certified = false;
    if (out.failure.empty()) {
      out.failure = "horizon below T* = " + std::to_string(t_star);
    }
  }
  return out;
}

FrequencyEstimate EstimateAssumptionFrequency(int m, int n, int type_count,
                                              Distribution dist, int samples,
                                              std::uint64_t seed,
                                              int threads) {
  if (samples < 1) throw InputError("samples must be at least 1");
  std::vector<char> hit(samples, 0);
  std::atomic<int> next{0};
  auto worker = [&]() {
    CheckOptions opts;
    opts.stop_at_first = true;
    for (int s = next++; s < samples; s = next++) {
      Game g = GenerateRandomGame(m, n, type_count, dist, seed + s);
      hit[s] = CheckAssumption(g, opts).assumption_satisfied ? 1 : 0;
    }
  };
  const int pool = std::max(1, std::min(threads, samples));
  std::vector<std::thread> workers;
  for (int w = 1; w < pool; ++w) workers.emplace_back(worker);
  worker();
  for (auto& w : workers) w.join();

  FrequencyEstimate est;
  est.total = samples;
  est.satisfied = std::accumulate(hit.begin(), hit.end(), 0);
  est.fraction = static_cast<double>(est.satisfied) / samples;
  if (samples > 1) {
    const double half =
        1.96 * std::sqrt(est.fraction * (1.0 - est.fraction) / samples);
    est.ci_low = std::max(0.0, est.fraction - half);
    est.ci_high = std::min(1.0, est.fraction + half);
  }
  return est;
}

std::vector<double> RoundToKUniform(const std::vector<double>& p, int k) {
  if (k < 1) throw InputError("k must be positive");
  if (p.empty()) throw InputError("empty probability vector");
  const int n = static_cast<int>(p.size());
  std::vector<int> units(n);
  std::vector<double> remainder(n);
  int used = 0;
  for (int j = 0; j < n; ++j) {
    const double scaled = std::max(0.0, p[j]) * k;
    units[j] = static_cast<int>(std::floor(scaled + 1e-9));
    remainder[j] = scaled - units[j];
    used += units[j];
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return remainder[a] > remainder[b];
  });
  for (int idx = 0; used < k; idx = (idx + 1) % n, ++used) {
    ++units[order[idx]];
  }
  // Floating noise can overshoot by a unit; take it back from the smallest
  // remainder that still has one.
  for (int idx = n - 1; used > k; idx = (idx + n - 1) % n) {
    if (units[order[idx]] > 0) {
      --units[order[idx]];
      --used;
    }
  }
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) out[j] = static_cast<double>(units[j]) / k;
  return out;
}

MenuSimulationPolicy ConstructMenuSimulationPolicy(const Game& game,
                                                   int horizon,
                                                   double br_tol) {
  game.Validate();
  const std::vector<int> support = game.SupportTypes();
  const int K = static_cast<int>(support.size());
  const int n = game.n;
  MenuSimulationPolicy out;
  int tbar = 0;
  for (long long span = 1; span < K; span *= n) {
    if (n == 1) throw PreconditionError("types cannot be elicited with n = 1");
    ++tbar;
  }
  out.elicitation_rounds = tbar;
  if (horizon < tbar + 1) {
    throw PreconditionError("horizon must exceed the " + std::to_string(tbar) +
                     " elicitation rounds");
  }
  const int k = horizon - tbar;

  RandomizedMenu rme = SolveRme(game);
  InducibilityGap gap = ComputeInducibilityGap(game);
  out.rme_utility = rme.leader_utility;
  out.delta = gap.delta;
  out.delta_vacuous = gap.vacuous;
  if (!gap.vacuous && gap.delta <= br_tol) {
    throw PreconditionError("inducibility gap is too small to simulate");
  }
  out.alpha = gap.delta > 0.0
                  ? std::min(1.0, std::sqrt(std::log(static_cast<double>(K)) /
                                            (horizon * gap.delta * gap.delta)))
                  : 0.0;

  // Mix the optimal menu with the strictly IC one.
  const double a = out.alpha;
  out.mixed_menu.menu.assign(game.num_types(), {});
  double mixed_u = 0.0;
  for (int t = 0; t < game.num_types(); ++t) {
    for (int j = 0; j < n; ++j) {
      const MenuEntry& e0 = rme.menu[t][j];
      const MenuEntry& e1 = gap.witness.menu[t][j];
      MenuEntry e;
      e.p = (1.0 - a) * e0.p + a * e1.p;
      if (e.p <= 1e-12) {
        e.p = 0.0;
        e.x = UniformStrategy(game.m);
      } else {
        e.x.assign(game.m, 0.0);
        for (int i = 0; i < game.m; ++i) {
          e.x[i] = ((1.0 - a) * e0.p * e0.x[i] + a * e1.p * e1.x[i]) / e.p;
        }
        e.x = MakeStrategy(e.x, game.m);
        mixed_u += game.prior[t] * e.p * LeaderUtility(game, e.x, j);
      }
      out.mixed_menu.menu[t].push_back(e);
    }
  }
  out.mixed_menu.leader_utility = mixed_u;

  double rmax = 0.0;
  for (const auto& row : game.R) {
    for (double v : row) rmax = std::max(rmax, std::abs(v));
  }
  out.rounded_p.assign(game.num_types(), {});
  std::vector<std::vector<MixedStrategy>> schedule(game.num_types());
  for (int t = 0; t < game.num_types(); ++t) {
    std::vector<double> p;
    for (const auto& e : out.mixed_menu.menu[t]) p.push_back(e.p);
    out.rounded_p[t] = RoundToKUniform(p, k);
    double l1 = 0.0;
    for (int j = 0; j < n; ++j) {
      l1 += std::abs(out.rounded_p[t][j] - p[j]);
      const int rounds =
          static_cast<int>(std::lround(out.rounded_p[t][j] * k));
      for (int r = 0; r < rounds; ++r) {
        schedule[t].push_back(out.mixed_menu.menu[t][j].x);
      }
    }
    out.rounding_slack += game.prior[t] * k * l1 * rmax;
  }

  // Type slot s is announced by the base-n digits of s.
  out.codes.assign(game.num_types(), {});
  for (int s = 0; s < K; ++s) {
    ResponsePath code(tbar);
    int rem = s;
    for (int d = tbar - 1; d >= 0; --d) {
      code[d] = rem % n;
      rem /= n;
    }
    out.codes[support[s]] = code;
  }
  const MixedStrategy punish = MinimaxPunishment(game);
  PolicyTree tree(game.m, n, horizon);
  std::vector<int> owner(tree.num_nodes(), -1);  // slot owning the prefix
  std::vector<int> depth(tree.num_nodes(), 0);
  std::vector<long long> prefix(tree.num_nodes(), 0);
  for (int node = 0; node < tree.num_nodes(); ++node) {
    const int d = depth[node];
    if (d < tbar) {
      tree.at(node) = UniformStrategy(game.m);
    } else {
      if (d == tbar) owner[node] = prefix[node] < K ? static_cast<int>(prefix[node]) : -1;
      tree.at(node) = owner[node] >= 0
                          ? schedule[support[owner[node]]][d - tbar]
                          : punish;
    }
    if (d + 1 >= horizon) continue;
    for (int j = 0; j < n; ++j) {
      const int c = tree.Child(node, j);
      depth[c] = d + 1;
      prefix[c] = d < tbar ? prefix[node] * n + j : prefix[node];
      owner[c] = owner[node];
    }
  }
  out.policy = tree;

  out.certified = true;
  out.per_type_path.assign(game.num_types(), {});
  for (int t = 0; t < game.num_types(); ++t) {
    OracleResult o = FollowerOracle(tree, game, t, br_tol);
    out.per_type_path[t] = o.path;
    if (game.prior[t] <= 0.0) continue;
    out.realized_total += game.prior[t] * o.leader_value;
    int node = 0;
    double menu_phase = 0.0;
    for (int r = 0; r < horizon; ++r) {
      if (r >= tbar) {
        menu_phase += LeaderUtility(game, tree.at(node), o.path[r]);
      }
      node = tree.Child(node, o.path[r]);
    }
    out.realized_menu_phase += game.prior[t] * menu_phase;
    if (!std::equal(out.codes[t].begin(), out.codes[t].end(),
                    o.path.begin())) {
      out.certified = false;
      out.failure = "type " + game.types[t].name +
                    " does not announce its elicitation code";
    }
  }
  out.guarantee = (1.0 - out.alpha) * out.rme_utility * k - out.rounding_slack;
  if (out.certified && out.realized_menu_phase < out.guarantee - 1e-9) {
    out.certified = false;
    out.failure = "menu phase utility below the mixing guarantee";
  }
  return out;
}

nlohmann::json ToJson(const LearnabilityReport& r) {
  nlohmann::json subs = nlohmann::json::array();
  for (const auto& s : r.satisfying_subsets) {
    subs.push_back({{"subset", s.subset},
                    {"subgroup_utility", s.subgroup_utility},
                    {"baseline_utility", s.baseline_utility},
                    {"gain", s.gain},
                    {"tolerance_marginal", s.tolerance_marginal}});
  }
  return {{"bse", ToJson(r.bse)},
          {"br_sets", r.br_sets},
          {"satisfying_subsets", subs},
          {"assumption_satisfied", r.assumption_satisfied},
          {"leader_has_dominant_action", r.leader_has_dominant_action}};
}

nlohmann::json ToJson(const ConstructedLearningPolicy& p) {
  return {{"subgroup", p.subgroup},
          {"x_star", p.x_star},
          {"x_hat", p.x_hat},
          {"T_star", p.t_star},
          {"T", p.horizon},
          {"total_utility", p.total_utility},
          {"static_baseline", p.static_baseline},
          {"per_type_path", p.per_type_path},
          {"certified", p.certified},
          {"failure", p.failure},
          {"policy", p.policy.ToJson()}};
}

nlohmann::json ToJson(const FrequencyEstimate& e) {
  return {{"satisfied", e.satisfied},
          {"total", e.total},
          {"fraction", e.fraction},
          {"ci_low", e.ci_low},
          {"ci_high", e.ci_high}};
}

nlohmann::json ToJson(const MenuSimulationPolicy& p) {
  return {{"elicitation_rounds", p.elicitation_rounds},
          {"codes", p.codes},
          {"per_type_path", p.per_type_path},
          {"delta", p.delta},
          {"delta_vacuous", p.delta_vacuous},
          {"alpha", p.alpha},
          {"rounded_p", p.rounded_p},
          {"rme_utility", p.rme_utility},
          {"realized_total", p.realized_total},
          {"realized_menu_phase", p.realized_menu_phase},
          {"guarantee", p.guarantee},
          {"rounding_slack", p.rounding_slack},
          {"certified", p.certified},
          {"failure", p.failure},
          {"mixed_menu", ToJson(p.mixed_menu)},
          {"policy", p.policy.ToJson()}};
}

}  // namespace dynstack
