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

#ifndef DYNSTACK_EXPERIMENTS_HPP_
#define DYNSTACK_EXPERIMENTS_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynstack/dynamic_solvers.hpp"
#include "dynstack/game.hpp"
#include "dynstack/learning.hpp"
#include "json.hpp"

namespace dynstack {

// A solver run failed; carries the offending solver and horizon.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "3", "1..5", "1,2,4" or "1-5".
std::vector<int> ParseRange(const std::string& text);
std::vector<std::string> SplitList(const std::string& text);

// Fixed-point with six decimals, the format of every CSV value.
std::string Fixed6(double v);

struct SolveSpec {
  Game game;
  std::vector<std::string> solvers;  // sse,bse,rme,dse,markovian,first-k
  std::vector<int> horizons;
  int k = 1;
  int sse_type = -1;  // -1: first supported type
  DynamicOptions options;
  std::string out_dir;  // empty: nothing written
};

struct SolveRow {
  int horizon = 0;
  std::string solver;
  double total_utility = 0.0;
  double per_round = 0.0;
  double wall_time_seconds = 0.0;
  nlohmann::json result;
};

std::vector<SolveRow> RunSolve(const SolveSpec& spec);
std::string SolveCsv(const std::vector<SolveRow>& rows);

struct Table2Spec {
  Distribution distribution = Distribution::kUniform01;
  int samples = 100;
  std::uint64_t seed = 0;
  int threads = 1;
  std::vector<int> ms{5, 10, 15};
  std::vector<int> ns{5, 10, 15};
  std::vector<int> type_counts{2, 3, 4, 5};
  std::string out_dir;
};

struct Table2Cell {
  int m = 0;
  int n = 0;
  int type_count = 0;
  FrequencyEstimate estimate;
};

// Every cell draws sample s from seed + s.
std::vector<Table2Cell> RunTable2(const Table2Spec& spec);
// Grid for one type count: one row per m, five columns per n.
std::string Table2Csv(const std::vector<Table2Cell>& cells, int type_count,
                      const std::vector<int>& ms, const std::vector<int>& ns);

}  // namespace dynstack

#endif  // DYNSTACK_EXPERIMENTS_HPP_
