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

#include "dynstack/dynamic_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

#include "dynstack/lp.hpp"
#include "dynstack/static_solvers.hpp"

namespace dynstack {

std::string ToString(PolicyClass c) {
  switch (c) {
    case PolicyClass::kFull:
      return "dse";
    case PolicyClass::kMarkovian:
      return "markovian";
    case PolicyClass::kFirstK:
      return "first-k";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Oracle and simulation on explicit trees.

OracleResult FollowerOracle(const PolicyTree& policy, const Game& game,
                            int type, double eps) {
  if (policy.m() != game.m || policy.n() != game.n) {
    throw InputError("policy dimensions do not match the game");
  }
  if (type < 0 || type >= game.num_types()) {
    throw InputError("type index out of range");
  }
  const int N = policy.num_nodes();
  const int n = game.n;
  const Matrix& C = game.C(type);
  std::vector<double> best(N), path_follower(N), path_leader(N);
  std::vector<int> choice(N);
  std::vector<double> f(n), pf(n), pl(n);
  for (int node = N - 1; node >= 0; --node) {
    const MixedStrategy& x = policy.at(node);
    double top = -lp::kInfinity;
    for (int j = 0; j < n; ++j) {
      double v = 0.0;
      double u = 0.0;
      for (int i = 0; i < game.m; ++i) {
        v += x[i] * C[i][j];
        u += x[i] * game.R[i][j];
      }
      const int c = policy.Child(node, j);
      const bool leaf = c >= N;
      f[j] = v + (leaf ? 0.0 : best[c]);
      pf[j] = v + (leaf ? 0.0 : path_follower[c]);
      pl[j] = u + (leaf ? 0.0 : path_leader[c]);
      top = std::max(top, f[j]);
    }
    int pick = -1;
    for (int j = 0; j < n; ++j) {
      if (f[j] < top - eps) continue;
      if (pick < 0 || pl[j] > pl[pick]) pick = j;
    }
    best[node] = top;
    choice[node] = pick;
    path_follower[node] = pf[pick];
    path_leader[node] = pl[pick];
  }
  OracleResult out;
  out.follower_value = best[0];
  out.leader_value = path_leader[0];
  int node = 0;
  while (node < N) {
    out.path.push_back(choice[node]);
    node = policy.Child(node, choice[node]);
  }
  return out;
}

Transcript Simulate(const PolicyTree& policy, const Game& game, int type,
                    double eps) {
  OracleResult oracle = FollowerOracle(policy, game, type, eps);
  Transcript tr;
  int node = 0;
  for (int j : oracle.path) {
    const MixedStrategy& x = policy.at(node);
    const double u = LeaderUtility(game, x, j);
    const double v = FollowerUtility(game, type, x, j);
    tr.strategies.push_back(x);
    tr.responses.push_back(j);
    tr.leader_utility.push_back(u);
    tr.follower_utility.push_back(v);
    tr.leader_total += u;
    tr.follower_total += v;
    node = policy.Child(node, j);
  }
  return tr;
}

// ---------------------------------------------------------------------------
// Compressed policy layout.

namespace {

int HeapDepth(int node, int n) {
  int d = 0;
  while (node > 0) {
    node = (node - 1) / n;
    ++d;
  }
  return d;
}

int BlockOfHeapNode(PolicyClass cls, int n, int path_length, int node) {
  const int depth = HeapDepth(node, n);
  switch (cls) {
    case PolicyClass::kFull:
      return node;
    case PolicyClass::kMarkovian:
      return depth == 0 ? 0 : 1 + (depth - 1) * n + (node - 1) % n;
    case PolicyClass::kFirstK: {
      int d = depth;
      while (d > path_length - 1) {
        node = (node - 1) / n;
        --d;
      }
      return node;
    }
  }
  return node;
}

struct Structure {
  PolicyClass cls = PolicyClass::kFull;
  int m = 0;
  int n = 0;
  int T = 0;
  int L = 0;
  int k = 0;
  std::vector<double> weight;
  int num_heap = 0;
  int num_blocks = 0;
  std::vector<int> heap_block;
  std::vector<int> heap_depth;
  long long num_paths = 0;
  std::vector<int> path_act;  // num_paths * L, most significant first
  std::vector<int> path_blk;
};

Structure MakeStructure(PolicyClass cls, const Game& game, int T, int k,
                        int type_count, double budget) {
  if (T < 1) throw InputError("horizon must be at least 1");
  if (k < 0) throw InputError("k must be nonnegative");
  Structure s;
  s.cls = cls;
  s.m = game.m;
  s.n = game.n;
  s.T = T;
  s.k = std::min(k, T - 1);
  s.L = cls == PolicyClass::kFirstK ? s.k + 1 : T;
  const double nominal =
      std::pow(static_cast<double>(game.n),
               static_cast<double>(s.L) * static_cast<double>(type_count));
  if (nominal > budget) {
    std::ostringstream os;
    os << ToString(cls) << " at T=" << T << " needs " << nominal
       << " path assignments, above the budget of " << budget
       << "; raise --budget or use the markovian / first-k heuristics";
    throw ProblemTooLarge(os.str());
  }
  s.weight.assign(s.L, 1.0);
  if (cls == PolicyClass::kFirstK) s.weight[s.L - 1] = T - (s.L - 1);
  s.num_heap = static_cast<int>(TreeSize(s.n, s.L, 50'000'000));
  s.heap_block.resize(s.num_heap);
  s.heap_depth.resize(s.num_heap);
  for (int node = 0; node < s.num_heap; ++node) {
    s.heap_block[node] = BlockOfHeapNode(cls, s.n, s.L, node);
    s.heap_depth[node] = HeapDepth(node, s.n);
  }
  s.num_blocks = cls == PolicyClass::kMarkovian ? 1 + (s.L - 1) * s.n
                                                : s.num_heap;
  s.num_paths = 1;
  for (int d = 0; d < s.L; ++d) s.num_paths *= s.n;
  s.path_act.resize(s.num_paths * s.L);
  s.path_blk.resize(s.num_paths * s.L);
  for (long long code = 0; code < s.num_paths; ++code) {
    long long rem = code;
    std::vector<int> digits(s.L);
    for (int d = s.L - 1; d >= 0; --d) {
      digits[d] = static_cast<int>(rem % s.n);
      rem /= s.n;
    }
    int node = 0;
    for (int d = 0; d < s.L; ++d) {
      s.path_act[code * s.L + d] = digits[d];
      s.path_blk[code * s.L + d] = s.heap_block[node];
      node = node * s.n + 1 + digits[d];
    }
  }
  return s;
}

// min over leader strategies of the follower's best one-round payoff.
double MinimaxValue(const Matrix& C) {
  const int m = static_cast<int>(C.size());
  const int n = static_cast<int>(C[0].size());
  lp::LpBuilder b;
  const int y0 = b.AddVariables(m, 0.0, lp::kInfinity);
  const int z = b.AddVariable(-lp::kInfinity, lp::kInfinity, -1.0);
  std::vector<lp::LpBuilder::Term> sum;
  for (int i = 0; i < m; ++i) sum.push_back({y0 + i, 1.0});
  b.AddRow(sum, lp::Sense::kEqual, 1.0);
  for (int j = 0; j < n; ++j) {
    std::vector<lp::LpBuilder::Term> row{{z, -1.0}};
    for (int i = 0; i < m; ++i) row.push_back({y0 + i, C[i][j]});
    b.AddRow(row, lp::Sense::kLessEqual, 0.0);
  }
  auto sol = lp::SolveLp(b.Build());
  if (!sol.optimal()) throw lp::SolverFailure("minimax LP failed");
  return -sol.objective_value;
}

class PathSearch {
 public:
  using Assigned = std::vector<std::pair<int, long long>>;  // (slot, code)

  PathSearch(const Game& game, Structure s, const DynamicOptions& options)
      : game_(game), s_(std::move(s)), options_(options) {
    support_ = game.SupportTypes();
    punish_ = MinimaxPunishment(game);
    minimax_.assign(game.num_types(), 0.0);
    for (int t : support_) minimax_[t] = MinimaxValue(game.C(t));
    // remaining_[d]: weight of the rounds after depth d.
    remaining_.assign(s_.L, 0.0);
    for (int d = s_.L - 2; d >= 0; --d) {
      remaining_[d] = remaining_[d + 1] + s_.weight[d + 1];
    }
  }

  DynamicEquilibrium Run() {
    const int K = static_cast<int>(support_.size());
    if (options_.exhaustive) {
      RunExhaustive();
    } else {
      SeedWithStatic();
      candidates_.resize(K);
      for (int k = 0; k < K; ++k) {
        for (long long code = 0; code < s_.num_paths; ++code) {
          auto bound = Bound({{k, code}}, 0);
          if (bound) candidates_[k].push_back({bound->value, code});
        }
        std::stable_sort(
            candidates_[k].begin(), candidates_[k].end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
      }
      rest_.assign(K + 1, 0.0);
      for (int k = K - 1; k >= 0; --k) {
        rest_[k] = rest_[k + 1] + candidates_[k].front().first;
      }
      Assigned assigned;
      Dfs(0, 0.0, assigned);
    }
    return BuildResult();
  }

 private:
  struct Outcome {
    double value = 0.0;
    std::vector<double> x;  // num_blocks * m
  };

  double Tol() const { return 1e-9 * (1.0 + std::abs(best_value_)); }

  int Act(long long code, int d) const { return s_.path_act[code * s_.L + d]; }
  int Blk(long long code, int d) const { return s_.path_blk[code * s_.L + d]; }

  // LP over all block strategies with one
  // row per alternative path of each type. Used by exhaustive enumeration
  // as a cross-check of Bound.
  std::optional<Outcome> Solve(const Assigned& assigned) {
    const int m = s_.m;
    ++lp_solves_;
    std::vector<int> var_of(s_.num_blocks, -1);
    lp::LpBuilder b;
    for (int node = 0; node < s_.num_heap; ++node) {
      const int blk = s_.heap_block[node];
      if (var_of[blk] >= 0) continue;
      var_of[blk] = b.AddVariables(m, 0.0, lp::kInfinity);
      std::vector<lp::LpBuilder::Term> row;
      for (int i = 0; i < m; ++i) row.push_back({var_of[blk] + i, 1.0});
      b.AddRow(row, lp::Sense::kEqual, 1.0);
    }
    std::vector<double> dense(b.num_variables(), 0.0);
    for (const auto& [slot, code] : assigned) {
      const int type = support_[slot];
      const double mu = game_.prior[type];
      const Matrix& C = game_.C(type);
      for (int d = 0; d < s_.L; ++d) {
        const int v0 = var_of[Blk(code, d)];
        const int j = Act(code, d);
        for (int i = 0; i < m; ++i) {
          b.AddObjective(v0 + i, mu * s_.weight[d] * game_.R[i][j]);
        }
      }
      for (long long q = 0; q < s_.num_paths; ++q) {
        if (q == code) continue;
        std::fill(dense.begin(), dense.end(), 0.0);
        for (int d = 0; d < s_.L; ++d) {
          const int vp = var_of[Blk(code, d)];
          const int vq = var_of[Blk(q, d)];
          const int jp = Act(code, d);
          const int jq = Act(q, d);
          for (int i = 0; i < m; ++i) {
            dense[vp + i] += s_.weight[d] * C[i][jp];
            dense[vq + i] -= s_.weight[d] * C[i][jq];
          }
        }
        std::vector<lp::LpBuilder::Term> row;
        for (int c = 0; c < static_cast<int>(dense.size()); ++c) {
          if (std::abs(dense[c]) > 1e-15) row.push_back({c, dense[c]});
        }
        if (!row.empty()) b.AddRow(row, lp::Sense::kGreaterEqual, 0.0);
      }
    }
    lp::LpSolution sol = lp::SolveLp(b.Build());
    if (!sol.optimal()) return std::nullopt;
    Outcome out;
    out.value = sol.objective_value;
    out.x.resize(static_cast<std::size_t>(s_.num_blocks) * m);
    for (int blk = 0; blk < s_.num_blocks; ++blk) {
      for (int i = 0; i < m; ++i) {
        out.x[blk * m + i] = std::max(0.0, sol.values[var_of[blk] + i]);
      }
    }
    return out;
  }

  // Upper bound on Solve(assigned). Nodes on the assigned paths, and
  // off-path subtrees down to `expand` levels, carry their own strategies;
  // below that a deviating type is credited its minimax value for the
  // remaining weighted rounds. With expand >= L every node is kept and the
  // bound is exact. Exact for one type in the full class at any depth.
  std::optional<Outcome> Bound(const Assigned& assigned, int expand) {
    const int m = s_.m;
    const int n = s_.n;
    ++lp_solves_;
    lp::LpBuilder b;
    std::map<int, int> var_of;   // block -> first variable
    std::map<int, int> slot_of;  // kept heap node -> index
    std::vector<int> nodes;
    auto keep = [&](int node) {
      if (!slot_of.emplace(node, static_cast<int>(nodes.size())).second) return;
      nodes.push_back(node);
      const int blk = s_.heap_block[node];
      if (var_of.count(blk)) return;
      var_of[blk] = b.AddVariables(m, 0.0, lp::kInfinity);
      std::vector<lp::LpBuilder::Term> row;
      for (int i = 0; i < m; ++i) row.push_back({var_of[blk] + i, 1.0});
      b.AddRow(row, lp::Sense::kEqual, 1.0);
    };
    for (const auto& [slot, code] : assigned) {
      int node = 0;
      for (int d = 0; d < s_.L; ++d) {
        keep(node);
        node = node * n + 1 + Act(code, d);
      }
    }
    std::vector<int> frontier;
    for (int node : nodes) {
      for (int j = 0; j < n; ++j) {
        const int c = node * n + 1 + j;
        if (c < s_.num_heap && !slot_of.count(c)) frontier.push_back(c);
      }
    }
    for (int level = 0; level < expand && !frontier.empty(); ++level) {
      std::vector<int> next;
      for (int c : frontier) {
        keep(c);
        for (int j = 0; j < n; ++j) {
          if (c * n + 1 + j < s_.num_heap) next.push_back(c * n + 1 + j);
        }
      }
      frontier.swap(next);
    }
    const int U = static_cast<int>(nodes.size());
    for (const auto& [slot, code] : assigned) {
      const int type = support_[slot];
      const Matrix& C = game_.C(type);
      // Continuation values never fall below the per-round minimax.
      const int w0 = b.num_variables();
      for (int u = 0; u < U; ++u) {
        const int d = s_.heap_depth[nodes[u]];
        b.AddVariable((s_.weight[d] + remaining_[d]) * minimax_[type] - 1e-9,
                      lp::kInfinity);
      }
      for (int u = 0; u < U; ++u) {
        const int node = nodes[u];
        const int d = s_.heap_depth[node];
        const int v0 = var_of[s_.heap_block[node]];
        for (int j = 0; j < n; ++j) {
          std::vector<lp::LpBuilder::Term> row{{w0 + u, 1.0}};
          for (int i = 0; i < m; ++i) row.push_back({v0 + i, -s_.weight[d] * C[i][j]});
          double rhs = 0.0;
          const int c = node * n + 1 + j;
          auto it = slot_of.find(c);
          if (it != slot_of.end()) {
            row.push_back({w0 + it->second, -1.0});
          } else {
            rhs = remaining_[d] * minimax_[type];
          }
          b.AddRow(row, lp::Sense::kGreaterEqual, rhs);
        }
      }
      const double mu = game_.prior[type];
      std::vector<lp::LpBuilder::Term> own{{w0 + slot_of[0], -1.0}};
      for (int d = 0; d < s_.L; ++d) {
        const int v0 = var_of[Blk(code, d)];
        const int j = Act(code, d);
        for (int i = 0; i < m; ++i) {
          own.push_back({v0 + i, s_.weight[d] * C[i][j]});
          b.AddObjective(v0 + i, mu * s_.weight[d] * game_.R[i][j]);
        }
      }
      b.AddRow(own, lp::Sense::kGreaterEqual, 0.0);
    }
    lp::LpSolution sol = lp::SolveLp(b.Build());
    if (!sol.optimal()) return std::nullopt;
    Outcome out;
    out.value = sol.objective_value;
    out.x.resize(static_cast<std::size_t>(s_.num_blocks) * m);
    for (int blk = 0; blk < s_.num_blocks; ++blk) {
      auto it = var_of.find(blk);
      for (int i = 0; i < m; ++i) {
        out.x[blk * m + i] = it != var_of.end()
                                 ? std::max(0.0, sol.values[it->second + i])
                                 : punish_[i];
      }
    }
    return out;
  }

  // Tightens the bound one expansion level at a time, stopping as soon as
  // `assigned` plus `slack` cannot beat the incumbent. A leaf that survives
  // is solved exactly.
  std::optional<Outcome> Screen(const Assigned& assigned, double slack,
                                bool leaf) {
    const int deepest = leaf ? s_.L : 1;
    std::optional<Outcome> r;
    for (int e = 0; e <= deepest; e = e < 2 ? e + 1 : deepest) {
      r = Bound(assigned, e);
      if (!r || r->value + slack <= best_value_ + Tol()) return std::nullopt;
      if (e == deepest) break;
    }
    return r;
  }

  void Offer(double value, const std::vector<double>& x,
             const std::vector<long long>& codes) {
    if (have_ && value <= best_value_ + Tol()) return;
    have_ = true;
    best_value_ = value;
    best_x_ = x;
    best_codes_ = codes;
  }

  void SeedWithStatic() {
    StaticEquilibrium bse = SolveBse(game_);
    std::vector<double> x(static_cast<std::size_t>(s_.num_blocks) * s_.m);
    for (int blk = 0; blk < s_.num_blocks; ++blk) {
      for (int i = 0; i < s_.m; ++i) x[blk * s_.m + i] = bse.strategy[i];
    }
    std::vector<long long> codes;
    double value = 0.0;
    for (int t : support_) {
      const int j = bse.per_type_response[t];
      long long code = 0;
      for (int d = 0; d < s_.L; ++d) code = code * s_.n + j;
      codes.push_back(code);
      value += game_.prior[t] * s_.T * LeaderUtility(game_, bse.strategy, j);
    }
    Offer(value, x, codes);
  }

  void Dfs(int slot, double parent_value, Assigned& assigned) {
    const int K = static_cast<int>(support_.size());
    for (const auto& [single, code] : candidates_[slot]) {
      if (parent_value + single + rest_[slot + 1] <= best_value_ + Tol()) {
        break;
      }
      ++nodes_;
      assigned.push_back({slot, code});
      const bool leaf = slot + 1 == K;
      if (auto sol = Screen(assigned, rest_[slot + 1], leaf)) {
        if (!leaf) {
          Dfs(slot + 1, sol->value, assigned);
        } else {
          std::vector<long long> codes;
          for (const auto& a : assigned) codes.push_back(a.second);
          Offer(sol->value, sol->x, codes);
        }
      }
      assigned.pop_back();
    }
  }

  void RunExhaustive() {
    const int K = static_cast<int>(support_.size());
    std::vector<long long> codes(K, 0);
    while (true) {
      ++nodes_;
      Assigned assigned;
      for (int k = 0; k < K; ++k) assigned.push_back({k, codes[k]});
      auto sol = Solve(assigned);
      if (sol) Offer(sol->value, sol->x, codes);
      int k = K - 1;
      while (k >= 0 && ++codes[k] == s_.num_paths) codes[k--] = 0;
      if (k < 0) break;
    }
  }

  DynamicEquilibrium BuildResult() {
    DynamicEquilibrium res;
    res.policy_class = s_.cls;
    res.horizon = s_.T;
    res.k = s_.k;
    res.path_length = s_.L;
    res.lp_solves = lp_solves_;
    res.nodes_visited = nodes_;
    res.blocks.resize(s_.num_blocks);
    for (int blk = 0; blk < s_.num_blocks; ++blk) {
      std::vector<double> x(best_x_.begin() + blk * s_.m,
                            best_x_.begin() + (blk + 1) * s_.m);
      double sum = 0.0;
      for (double v : x) sum += v;
      for (double& v : x) v /= sum;
      res.blocks[blk] = x;
    }
    PolicyTree tree = ExpandPolicy(game_, res);
    const int T = s_.T;
    res.per_type_path.assign(game_.num_types(), {});
    res.per_type_leader.assign(game_.num_types(), 0.0);
    res.per_type_follower.assign(game_.num_types(), 0.0);
    std::vector<bool> claimed(game_.num_types(), false);
    for (std::size_t k = 0; k < support_.size(); ++k) {
      ResponsePath path;
      for (int d = 0; d < s_.L; ++d) path.push_back(Act(best_codes_[k], d));
      while (static_cast<int>(path.size()) < T) path.push_back(path.back());
      res.per_type_path[support_[k]] = path;
      claimed[support_[k]] = true;
    }
    for (int t = 0; t < game_.num_types(); ++t) {
      if (!claimed[t]) {
        res.per_type_path[t] =
            FollowerOracle(tree, game_, t, options_.br_tol).path;
      }
      int node = 0;
      for (int j : res.per_type_path[t]) {
        res.per_type_leader[t] += LeaderUtility(game_, tree.at(node), j);
        res.per_type_follower[t] +=
            FollowerUtility(game_, t, tree.at(node), j);
        node = tree.Child(node, j);
      }
    }
    double total = 0.0;
    for (int t : support_) total += game_.prior[t] * res.per_type_leader[t];
    res.total_leader_utility = total;
    res.per_round_average = total / T;

    res.certified = true;
    res.max_oracle_gap = 0.0;
    for (int t : support_) {
      OracleResult o = FollowerOracle(tree, game_, t, options_.br_tol);
      const double gap = o.follower_value - res.per_type_follower[t];
      res.max_oracle_gap = std::max(res.max_oracle_gap, gap);
      if (gap > options_.br_tol * T ||
          o.leader_value < res.per_type_leader[t] - 1e-6) {
        res.certified = false;
      }
    }
    return res;
  }

  const Game& game_;
  Structure s_;
  DynamicOptions options_;
  std::vector<int> support_;
  MixedStrategy punish_;
  std::vector<double> minimax_;    // per type, min over x of max_j payoff
  std::vector<double> remaining_;
  std::vector<std::vector<std::pair<double, long long>>> candidates_;
  std::vector<double> rest_;
  bool have_ = false;
  double best_value_ = 0.0;
  std::vector<double> best_x_;
  std::vector<long long> best_codes_;
  long long lp_solves_ = 0;
  long long nodes_ = 0;
};

DynamicEquilibrium SolveClass(const Game& game, PolicyClass cls, int T, int k,
                              const DynamicOptions& options) {
  game.Validate();
  const int K = static_cast<int>(game.SupportTypes().size());
  Structure s = MakeStructure(cls, game, T, k, K, options.budget);
  PathSearch search(game, std::move(s), options);
  return search.Run();
}

}  // namespace

DynamicEquilibrium SolveDse(const Game& game, int horizon,
                            const DynamicOptions& options) {
  return SolveClass(game, PolicyClass::kFull, horizon, horizon, options);
}

DynamicEquilibrium SolveMarkovian(const Game& game, int horizon,
                                  const DynamicOptions& options) {
  return SolveClass(game, PolicyClass::kMarkovian, horizon, horizon, options);
}

DynamicEquilibrium SolveFirstK(const Game& game, int horizon, int k,
                               const DynamicOptions& options) {
  return SolveClass(game, PolicyClass::kFirstK, horizon, k, options);
}

const MixedStrategy& CompressedStrategy(const DynamicEquilibrium& result,
                                        int n, const ResponsePath& history) {
  const int d = static_cast<int>(history.size());
  if (d >= result.horizon) throw InputError("history longer than horizon");
  if (result.policy_class == PolicyClass::kMarkovian) {
    return result.blocks.at(d == 0 ? 0 : 1 + (d - 1) * n + history.back());
  }
  int node = 0;
  const int keep = std::min(d, result.path_length - 1);
  for (int t = 0; t < keep; ++t) node = node * n + 1 + history[t];
  return result.blocks.at(node);
}

PolicyTree ExpandPolicy(const Game& game, const DynamicEquilibrium& result) {
  PolicyTree tree(game.m, game.n, result.horizon);
  for (int node = 0; node < tree.num_nodes(); ++node) {
    tree.at(node) = result.blocks.at(BlockOfHeapNode(
        result.policy_class, game.n, result.path_length, node));
  }
  return tree;
}

MarkovianPolicy AsMarkovian(const DynamicEquilibrium& result, int n) {
  if (result.policy_class != PolicyClass::kMarkovian) {
    throw InputError("result is not a Markovian policy");
  }
  MarkovianPolicy out;
  out.initial = result.blocks.at(0);
  for (int t = 2; t <= result.horizon; ++t) {
    std::vector<MixedStrategy> row;
    for (int j = 0; j < n; ++j) {
      row.push_back(result.blocks.at(1 + (t - 2) * n + j));
    }
    out.table.push_back(row);
  }
  return out;
}

nlohmann::json ToJson(const DynamicEquilibrium& r) {
  nlohmann::json out;
  out["solver"] = ToString(r.policy_class);
  out["T"] = r.horizon;
  if (r.policy_class == PolicyClass::kFirstK) out["k"] = r.k;
  out["total_leader_utility"] = r.total_leader_utility;
  out["per_round_average"] = r.per_round_average;
  out["per_type_path"] = r.per_type_path;
  out["per_type_leader_utility"] = r.per_type_leader;
  out["per_type_follower_utility"] = r.per_type_follower;
  out["certified"] = r.certified;
  out["max_oracle_gap"] = r.max_oracle_gap;
  out["lp_solves"] = r.lp_solves;
  out["blocks"] = r.blocks;
  return out;
}

nlohmann::json ToJson(const Transcript& tr) {
  nlohmann::json rounds = nlohmann::json::array();
  for (std::size_t t = 0; t < tr.responses.size(); ++t) {
    rounds.push_back({{"round", t + 1},
                      {"x", tr.strategies[t]},
                      {"response", tr.responses[t]},
                      {"leader_utility", tr.leader_utility[t]},
                      {"follower_utility", tr.follower_utility[t]}});
  }
  return {{"rounds", rounds},
          {"responses", tr.responses},
          {"leader_total", tr.leader_total},
          {"follower_total", tr.follower_total}};
}

}  // namespace dynstack
