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

#ifndef DYNSTACK_DYNAMIC_SOLVERS_HPP_
#define DYNSTACK_DYNAMIC_SOLVERS_HPP_

#include <stdexcept>
#include <string>
#include <vector>

#include "dynstack/game.hpp"
#include "dynstack/policy_tree.hpp"
#include "json.hpp"

namespace dynstack {

// The enumeration would exceed the configured budget.
class ProblemTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PolicyClass { kFull, kMarkovian, kFirstK };
std::string ToString(PolicyClass c);

struct DynamicOptions {
  // Upper limit on n^(L * |support|), the number of path assignments.
  double budget = 1e6;
  double br_tol = kBestResponseTol;
  // Visit every assignment with all deviation rows written out. Only for
  // cross-checking on small instances.
  bool exhaustive = false;
};

struct OracleResult {
  ResponsePath path;
  double follower_value = 0.0;
  double leader_value = 0.0;
};

// Backward induction over the tree. Ties within eps go to the larger leader
// continuation, then to the smaller action.
OracleResult FollowerOracle(const PolicyTree& policy, const Game& game,
                            int type, double eps = kBestResponseTol);

struct Transcript {
  std::vector<MixedStrategy> strategies;
  ResponsePath responses;
  std::vector<double> leader_utility;
  std::vector<double> follower_utility;
  double leader_total = 0.0;
  double follower_total = 0.0;
};

Transcript Simulate(const PolicyTree& policy, const Game& game, int type,
                    double eps = kBestResponseTol);

struct DynamicEquilibrium {
  PolicyClass policy_class = PolicyClass::kFull;
  int horizon = 0;
  int k = 0;            // First-k parameter after clamping to T-1
  int path_length = 0;  // rounds with distinct strategies per history
  // Compressed strategies. Full / First-k: heap-ordered tree of depth
  // path_length. Markovian: x^1, then x^t_j at 1 + (t-2) n + j.
  std::vector<MixedStrategy> blocks;
  std::vector<ResponsePath> per_type_path;  // length T, one per type
  std::vector<double> per_type_leader;      // total over T rounds
  std::vector<double> per_type_follower;
  double total_leader_utility = 0.0;
  double per_round_average = 0.0;
  // Search statistics.
  long long lp_solves = 0;
  long long nodes_visited = 0;
  // Oracle verification of every supported type's path.
  bool certified = false;
  double max_oracle_gap = 0.0;
};

DynamicEquilibrium SolveDse(const Game& game, int horizon,
                            const DynamicOptions& options = {});
DynamicEquilibrium SolveMarkovian(const Game& game, int horizon,
                                  const DynamicOptions& options = {});
DynamicEquilibrium SolveFirstK(const Game& game, int horizon, int k,
                               const DynamicOptions& options = {});

PolicyTree ExpandPolicy(const Game& game, const DynamicEquilibrium& result);

// Strategy used at `history` by a compressed policy.
const MixedStrategy& CompressedStrategy(const DynamicEquilibrium& result,
                                        int n, const ResponsePath& history);

struct MarkovianPolicy {
  MixedStrategy initial;
  std::vector<std::vector<MixedStrategy>> table;  // table[t-2][j]
};
MarkovianPolicy AsMarkovian(const DynamicEquilibrium& result, int n);

nlohmann::json ToJson(const DynamicEquilibrium& result);
nlohmann::json ToJson(const Transcript& transcript);

}  // namespace dynstack

#endif  // DYNSTACK_DYNAMIC_SOLVERS_HPP_
