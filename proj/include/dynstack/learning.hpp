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

#ifndef DYNSTACK_LEARNING_HPP_
#define DYNSTACK_LEARNING_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynstack/game.hpp"
#include "dynstack/policy_tree.hpp"
#include "dynstack/static_solvers.hpp"
#include "json.hpp"

namespace dynstack {

// A construction was requested on an input that does not meet its
// preconditions (subgroup not separable, inducibility gap too small).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SubgroupReport {
  std::vector<int> subset;
  double subgroup_utility = 0.0;  // sub-group BSE, renormalized prior
  double baseline_utility = 0.0;  // x* on the sub-group, renormalized prior
  double gain = 0.0;
  // Disjointness fails once the best-response tolerance is widened 10x.
  bool tolerance_marginal = false;
};

struct LearnabilityReport {
  StaticEquilibrium bse;
  std::vector<std::vector<int>> br_sets;  // per type, at bse.strategy
  std::vector<SubgroupReport> satisfying_subsets;
  bool assumption_satisfied = false;
  bool leader_has_dominant_action = false;
};

struct CheckOptions {
  double br_tol = kBestResponseTol;
  // Stop after the first satisfying subset (frequency estimation).
  bool stop_at_first = false;
};

LearnabilityReport CheckAssumption(const Game& game,
                                   const CheckOptions& options = {});
bool HasDominantLeaderAction(const Game& game);

struct ConstructedLearningPolicy {
  std::vector<int> subgroup;
  MixedStrategy x_star;
  MixedStrategy x_hat;
  int t_star = 0;
  int horizon = 0;
  PolicyTree policy;
  std::vector<ResponsePath> per_type_path;
  double total_utility = 0.0;
  double static_baseline = 0.0;  // horizon * BSE utility
  bool certified = false;
  std::string failure;  // which check failed when not certified
};

// horizon <= 0 builds the policy at the computed T*.
ConstructedLearningPolicy ConstructLearningPolicy(
    const Game& game, const std::vector<int>& subgroup, int horizon = 0,
    double br_tol = kBestResponseTol);

struct FrequencyEstimate {
  int satisfied = 0;
  int total = 0;
  double fraction = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
};

// Sample s uses the game generated from seed + s.
FrequencyEstimate EstimateAssumptionFrequency(int m, int n, int type_count,
                                              Distribution dist, int samples,
                                              std::uint64_t seed,
                                              int threads = 1);

// Largest-remainder apportionment of p onto multiples of 1/k.
std::vector<double> RoundToKUniform(const std::vector<double>& p, int k);

struct MenuSimulationPolicy {
  PolicyTree policy;
  int elicitation_rounds = 0;
  std::vector<ResponsePath> codes;          // per type, length t-bar
  std::vector<ResponsePath> per_type_path;  // oracle paths
  double delta = 0.0;
  bool delta_vacuous = false;
  double alpha = 0.0;  // weight on the strictly IC menu
  RandomizedMenu mixed_menu;
  std::vector<std::vector<double>> rounded_p;
  double rme_utility = 0.0;
  double realized_total = 0.0;      // all T rounds
  double realized_menu_phase = 0.0; // rounds after elicitation
  double guarantee = 0.0;           // bound the menu phase must reach
  double rounding_slack = 0.0;
  bool certified = false;
  std::string failure;
};

MenuSimulationPolicy ConstructMenuSimulationPolicy(
    const Game& game, int horizon, double br_tol = kBestResponseTol);

nlohmann::json ToJson(const LearnabilityReport& report);
nlohmann::json ToJson(const ConstructedLearningPolicy& policy);
nlohmann::json ToJson(const FrequencyEstimate& estimate);
nlohmann::json ToJson(const MenuSimulationPolicy& policy);

}  // namespace dynstack

#endif  // DYNSTACK_LEARNING_HPP_
