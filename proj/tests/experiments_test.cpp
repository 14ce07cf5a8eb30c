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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "dynstack/experiments.hpp"
#include "dynstack/fixtures.hpp"

namespace dynstack {
namespace {

namespace fs = std::filesystem;

fs::path Scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("dynstack_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int RunCli(const std::string& args) {
  const std::string cmd =
      std::string(DYNSTACK_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::vector<std::string>> ReadCsv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

TEST_CASE("range and list parsing") {
  CHECK(ParseRange("3") == std::vector<int>{3});
  CHECK(ParseRange("1..4") == std::vector<int>{1, 2, 3, 4});
  CHECK(ParseRange("2-3") == std::vector<int>{2, 3});
  CHECK(ParseRange("1,3,5") == std::vector<int>{1, 3, 5});
  CHECK_THROWS_AS(ParseRange("4..2"), InputError);
  CHECK_THROWS_AS(ParseRange("x"), InputError);
  CHECK(SplitList("dse, bse") == std::vector<std::string>{"dse", "bse"});
  CHECK(Fixed6(1.0 / 3) == "0.333333");
  CHECK(Fixed6(-1e-9) == "0.000000");
}

TEST_CASE("solve reports and CSV precision") {
  fs::path dir = Scratch("solve");
  SolveSpec spec;
  spec.game = LoadFixture("example1");
  spec.solvers = {"bse", "dse"};
  spec.horizons = {1, 2};
  spec.out_dir = dir.string();
  auto rows = RunSolve(spec);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].per_round == doctest::Approx(31.0 / 6));
  CHECK(rows[3].total_utility == doctest::Approx(10.75));
  CHECK(fs::exists(dir / "dse_T2.json"));

  auto csv = ReadCsv(ReadFile((dir / "solve.csv").string()));
  CHECK(csv[0] == std::vector<std::string>{"T", "solver", "total_utility",
                                           "per_round", "wall_time_seconds"});
  for (std::size_t r = 1; r < csv.size(); ++r) {
    for (int c = 2; c <= 4; ++c) {
      const auto dot = csv[r][c].find('.');
      REQUIRE(dot != std::string::npos);
      CHECK(csv[r][c].size() - dot - 1 == 6);
    }
    auto doc = nlohmann::json::parse(
        ReadFile((dir / (csv[r][1] + "_T" + csv[r][0] + ".json")).string()));
    CHECK(std::abs(std::stod(csv[r][2]) - doc["total_utility"].get<double>()) <=
          5e-7);
    CHECK(std::abs(std::stod(csv[r][3]) - doc["per_round"].get<double>()) <=
          5e-7);
  }
}

TEST_CASE("posted-price dynamics stay at the Myerson revenue") {
  SolveSpec spec;
  spec.game = LoadFixture("pricing-04-05-06");
  spec.solvers = {"dse"};
  spec.horizons = ParseRange("1..6");
  for (const auto& row : RunSolve(spec)) {
    CHECK(row.total_utility == doctest::Approx(0.4 * row.horizon).epsilon(1e-9));
  }
}

TEST_CASE("solver errors name the solver and horizon") {
  SolveSpec spec;
  spec.game = LoadFixture("ssg3");
  spec.solvers = {"dse"};
  spec.horizons = {4};
  spec.options.budget = 10;
  try {
    RunSolve(spec);
    FAIL("budget not enforced");
  } catch (const SolverError& e) {
    CHECK(std::string(e.what()).find("dse at T=4") != std::string::npos);
  }
  spec.solvers = {"milp"};
  CHECK_THROWS_AS(RunSolve(spec), InputError);
}

TEST_CASE("frequency grid CSV") {
  fs::path dir = Scratch("table2");
  Table2Spec spec;
  spec.samples = 1;
  spec.seed = 4;
  spec.ms = {2, 3};
  spec.ns = {2};
  spec.type_counts = {2};
  spec.out_dir = dir.string();
  auto cells = RunTable2(spec);
  REQUIRE(cells.size() == 2);
  CHECK(cells[0].estimate.ci_low == 0.0);
  CHECK(cells[0].estimate.ci_high == 1.0);
  const std::string path = (dir / "table2_uniform01_types2.csv").string();
  auto csv = ReadCsv(ReadFile(path));
  CHECK(csv.size() == 3);
  CHECK(csv[0][0] == "m");
  CHECK(csv[1][0] == "2");
  CHECK(csv[1][5] == "1.000000");

  spec.samples = 30;
  RunTable2(spec);
  const std::string first = ReadFile(path);
  spec.threads = 3;
  RunTable2(spec);
  CHECK(ReadFile(path) == first);
}

TEST_CASE("command-line exit codes and outputs") {
  fs::path dir = Scratch("cli");
  CHECK(RunCli("fixtures") == 0);
  CHECK(RunCli("solve --fixture nope --solver bse") == 2);
  CHECK(RunCli("solve --fixture ssg3 --solver dse --T 4 --budget 10") == 1);
  CHECK(RunCli("solve") == 2);
  CHECK(RunCli("frobnicate") == 2);

  const std::string game = (dir / "g.json").string();
  CHECK(RunCli("gen --m 3 --n 2 --types 2 --seed 5 --out " + game) == 0);
  CHECK(LoadGame(game).m == 3);
  CHECK(RunCli("solve --game " + game + " --solver bse,rme --T 1..2 --out " +
               (dir / "out").string()) == 0);
  CHECK(fs::exists(dir / "out" / "solve.csv"));

  const std::string report = (dir / "check.json").string();
  CHECK(RunCli("check --fixture learning-vs-comm --out " + report) == 0);
  CHECK(nlohmann::json::parse(ReadFile(report))["assumption_satisfied"] == true);
  CHECK(RunCli("check --fixture pricing-8-35-96 --out " + report) == 0);
  CHECK(nlohmann::json::parse(ReadFile(report))["assumption_satisfied"] == false);

  const std::string tr = (dir / "tr.json").string();
  CHECK(RunCli("simulate --fixture learning-vs-comm "
               "--policy builtin:switch-on-response --type C1 --T 3 --out " +
               tr) == 0);
  auto doc = nlohmann::json::parse(ReadFile(tr));
  CHECK(doc["responses"] == std::vector<int>{1, 1, 1});
  CHECK(doc["leader_total"].get<double>() == doctest::Approx(2.0));

  const std::string pol = (dir / "policy.json").string();
  SwitchOnResponsePolicy(3).Save(pol);
  CHECK(RunCli("simulate --fixture learning-vs-comm --policy " + pol +
               " --type C0 --T 1 --out " + tr) == 0);
  CHECK(nlohmann::json::parse(ReadFile(tr))["responses"].size() == 1);

  const std::string bad = (dir / "bad.json").string();
  WriteFileAtomic(bad, "{\"x\": [1, 0], \"children\": {\"0\": ");
  CHECK(RunCli("simulate --fixture learning-vs-comm --policy " + bad +
               " --type C0") == 2);
  CHECK(RunCli("simulate --fixture learning-vs-comm --policy " + pol +
               " --type C7") == 2);
}

}  // namespace
}  // namespace dynstack
