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

#include "dynstack/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "dynstack/lp.hpp"
#include "dynstack/static_solvers.hpp"

namespace dynstack {

namespace {

int ParseInt(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw InputError("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw InputError("not an integer: '" + s + "'");
  return v;
}

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::string JoinPath(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

}  // namespace

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<int> ParseRange(const std::string& text) {
  std::vector<int> out;
  for (const std::string& part : SplitList(text)) {
    std::size_t dots = part.find("..");
    std::size_t dash = part.find('-', 1);
    if (dots != std::string::npos || dash != std::string::npos) {
      const std::size_t at = dots != std::string::npos ? dots : dash;
      const int lo = ParseInt(part.substr(0, at));
      const int hi = ParseInt(part.substr(at + (dots != std::string::npos ? 2 : 1)));
      if (hi < lo) throw InputError("empty range '" + part + "'");
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(ParseInt(part));
    }
  }
  if (out.empty()) throw InputError("empty range '" + text + "'");
  return out;
}

std::string Fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  // Avoid "-0.000000".
  if (std::string(buf) == "-0.000000") return "0.000000";
  return buf;
}

std::vector<SolveRow> RunSolve(const SolveSpec& spec) {
  const Game& game = spec.game;
  game.Validate();
  if (spec.horizons.empty()) throw InputError("empty T range");
  for (int T : spec.horizons) {
    if (T < 1) throw InputError("horizon must be at least 1");
  }
  static const std::vector<std::string> kKnown = {
      "sse", "bse", "rme", "dse", "markovian", "first-k"};
  for (const auto& s : spec.solvers) {
    if (std::find(kKnown.begin(), kKnown.end(), s) == kKnown.end()) {
      throw InputError("unknown solver '" + s + "'");
    }
  }
  if (spec.solvers.empty()) throw InputError("no solver requested");
  int sse_type = spec.sse_type;
  if (sse_type < 0) sse_type = game.SupportTypes().front();
  if (sse_type >= game.num_types()) throw InputError("type out of range");

  std::vector<SolveRow> rows;
  for (int T : spec.horizons) {
    for (const std::string& solver : spec.solvers) {
      SolveRow row;
      row.horizon = T;
      row.solver = solver;
      const auto start = std::chrono::steady_clock::now();
      try {
        if (solver == "sse" || solver == "bse") {
          StaticEquilibrium eq =
              solver == "sse" ? SolveSse(game, sse_type) : SolveBse(game);
          row.per_round = eq.leader_utility;
          row.total_utility = T * eq.leader_utility;
          row.result = ToJson(eq);
          if (solver == "sse") row.result["type"] = game.types[sse_type].name;
        } else if (solver == "rme") {
          RandomizedMenu menu = SolveRme(game);
          row.per_round = menu.leader_utility;
          row.total_utility = T * menu.leader_utility;
          row.result = ToJson(menu);
        } else {
          DynamicEquilibrium eq =
              solver == "dse"         ? SolveDse(game, T, spec.options)
              : solver == "markovian" ? SolveMarkovian(game, T, spec.options)
                                      : SolveFirstK(game, T, spec.k, spec.options);
          row.per_round = eq.per_round_average;
          row.total_utility = eq.total_leader_utility;
          row.result = ToJson(eq);
        }
      } catch (const InputError&) {
        throw;
      } catch (const std::exception& e) {
        throw SolverError(solver + " at T=" + std::to_string(T) + ": " +
                          e.what());
      }
      row.wall_time_seconds = std::chrono::duration<double>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();
      row.result["solver"] = solver;
      row.result["T"] = T;
      row.result["total_utility"] = row.total_utility;
      row.result["per_round"] = row.per_round;
      row.result["wall_time_seconds"] = row.wall_time_seconds;
      if (!spec.out_dir.empty()) {
        std::filesystem::create_directories(spec.out_dir);
        WriteFileAtomic(
            JoinPath(spec.out_dir, solver + "_T" + std::to_string(T) + ".json"),
            row.result.dump(2) + "\n");
      }
      rows.push_back(std::move(row));
    }
  }
  if (!spec.out_dir.empty()) {
    WriteFileAtomic(JoinPath(spec.out_dir, "solve.csv"), SolveCsv(rows));
  }
  return rows;
}

std::string SolveCsv(const std::vector<SolveRow>& rows) {
  std::string out = "T,solver,total_utility,per_round,wall_time_seconds\n";
  for (const auto& r : rows) {
    out += std::to_string(r.horizon) + "," + r.solver + "," +
           Fixed6(r.total_utility) + "," + Fixed6(r.per_round) + "," +
           Fixed6(r.wall_time_seconds) + "\n";
  }
  return out;
}

std::vector<Table2Cell> RunTable2(const Table2Spec& spec) {
  if (spec.samples < 1) throw InputError("samples must be at least 1");
  if (spec.ms.empty() || spec.ns.empty() || spec.type_counts.empty()) {
    throw InputError("empty grid");
  }
  std::vector<Table2Cell> cells;
  for (int K : spec.type_counts) {
    for (int m : spec.ms) {
      for (int n : spec.ns) {
        Table2Cell cell{m, n, K, {}};
        cell.estimate = EstimateAssumptionFrequency(
            m, n, K, spec.distribution, spec.samples, spec.seed, spec.threads);
        cells.push_back(cell);
      }
    }
    if (!spec.out_dir.empty()) {
      std::filesystem::create_directories(spec.out_dir);
      WriteFileAtomic(
          JoinPath(spec.out_dir, "table2_" + ToString(spec.distribution) +
                                     "_types" + std::to_string(K) + ".csv"),
          Table2Csv(cells, K, spec.ms, spec.ns));
    }
  }
  return cells;
}

std::string Table2Csv(const std::vector<Table2Cell>& cells, int type_count,
                      const std::vector<int>& ms, const std::vector<int>& ns) {
  std::string out = "m";
  for (int n : ns) {
    const std::string p = "n" + std::to_string(n) + "_";
    out += "," + p + "satisfied," + p + "total," + p + "fraction," + p +
           "ci_low," + p + "ci_high";
  }
  out += "\n";
  for (int m : ms) {
    out += std::to_string(m);
    for (int n : ns) {
      const Table2Cell* hit = nullptr;
      for (const auto& c : cells) {
        if (c.m == m && c.n == n && c.type_count == type_count) hit = &c;
      }
      if (!hit) throw InputError("missing table cell");
      const FrequencyEstimate& e = hit->estimate;
      out += "," + std::to_string(e.satisfied) + "," + std::to_string(e.total) +
             "," + Fixed6(e.fraction) + "," + Fixed6(e.ci_low) + "," +
             Fixed6(e.ci_high);
    }
    out += "\n";
  }
  return out;
}

}  // namespace dynstack
