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

#ifndef DYNSTACK_STATIC_SOLVERS_HPP_
#define DYNSTACK_STATIC_SOLVERS_HPP_

#include <optional>
#include <vector>

#include "dynstack/game.hpp"
#include "json.hpp"

namespace dynstack {

struct StaticEquilibrium {
  MixedStrategy strategy;
  std::vector<int> per_type_response;
  double leader_utility = 0.0;
};

struct MenuEntry {
  double p = 0.0;
  MixedStrategy x;
};

// menu[type][j]: lottery over recommended responses per reported type.
struct RandomizedMenu {
  std::vector<std::vector<MenuEntry>> menu;
  double leader_utility = 0.0;
};

struct InducibilityGap {
  double delta = 0.0;
  bool vacuous = false;  // single supported type, IC has no content
  RandomizedMenu witness;
};

// Largest leader utility U(x, j) over x that makes j a best response of
// `type`; nullopt when no strategy induces j.
std::optional<std::pair<double, MixedStrategy>> SolveInducedLp(
    const Game& game, int type, int j);

StaticEquilibrium SolveSse(const Game& game, int type);
StaticEquilibrium SolveBse(const Game& game);
StaticEquilibrium SolveSubgroupBse(const Game& game,
                                   const std::vector<int>& subset);

RandomizedMenu SolveRme(const Game& game);
InducibilityGap ComputeInducibilityGap(const Game& game);

// Leader strategy minimizing the best one-round follower utility over all
// supported types.
MixedStrategy MinimaxPunishment(const Game& game);

// Follower utility of `type` when it reports `reported` and best-responds to
// every menu entry.
double MenuReportValue(const Game& game, const RandomizedMenu& menu, int type,
                       int reported);

nlohmann::json ToJson(const StaticEquilibrium& eq);
nlohmann::json ToJson(const RandomizedMenu& menu);

}  // namespace dynstack

#endif  // DYNSTACK_STATIC_SOLVERS_HPP_
