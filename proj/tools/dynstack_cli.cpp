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

// Command-line front end. Exit codes: 0 success, 1 solver failure, 2 bad
// input.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dynstack/dynamic_solvers.hpp"
#include "dynstack/experiments.hpp"
#include "dynstack/fixtures.hpp"
#include "dynstack/learning.hpp"
#include "dynstack/lp.hpp"

namespace {

using namespace dynstack;

constexpr int kExitSolver = 1;
constexpr int kExitInput = 2;
constexpr char kSwitchPolicy[] = "builtin:switch-on-response";

struct GameSource {
  std::string file;
  std::string fixture;
};

void AddGameSource(CLI::App* cmd, GameSource& src) {
  auto* g = cmd->add_option("--game", src.file, "game JSON file");
  auto* f = cmd->add_option("--fixture", src.fixture, "built-in game id");
  g->excludes(f);
}

Game Resolve(const GameSource& src) {
  if (!src.fixture.empty()) return LoadFixture(src.fixture);
  if (!src.file.empty()) return LoadGame(src.file);
  throw InputError("one of --game or --fixture is required");
}

void Emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    auto parent = std::filesystem::path(out).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    WriteFileAtomic(out, text);
  }
}

std::vector<int> IntList(const std::string& s) { return ParseRange(s); }

// Keeps the first `horizon` levels of a deeper tree.
PolicyTree Truncate(const PolicyTree& tree, int horizon) {
  PolicyTree out(tree.m(), tree.n(), horizon);
  for (int node = 0; node < out.num_nodes(); ++node) {
    out.at(node) = tree.at(node);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic Bayesian Stackelberg game solvers"};
  app.require_subcommand(1);

  // solve
  GameSource solve_src;
  std::string solvers = "bse,dse";
  std::string t_range = "1";
  int k = 1;
  double budget = 1e6;
  int threads = 1;
  std::string out_dir;
  std::string sse_type;
  bool exhaustive = false;
  auto* solve = app.add_subcommand("solve", "solve a game over a range of T");
  AddGameSource(solve, solve_src);
  solve->add_option("--solver", solvers,
                    "comma list of sse,bse,rme,dse,markovian,first-k");
  solve->add_option("--T", t_range, "horizon, e.g. 3, 1..5 or 1,2,4");
  solve->add_option("--k", k, "First-k parameter");
  solve->add_option("--budget", budget, "limit on enumerated path assignments");
  solve->add_option("--threads", threads, "worker threads (unused by solve)");
  solve->add_option("--type", sse_type, "follower type for sse");
  solve->add_flag("--exhaustive", exhaustive,
                  "enumerate every assignment (cross-check only)");
  solve->add_option("--out", out_dir, "output directory");

  // check
  GameSource check_src;
  std::string check_out;
  auto* check = app.add_subcommand("check", "test for a learnable sub-group");
  AddGameSource(check, check_src);
  check->add_option("--out", check_out, "report file (default stdout)");

  // table2
  std::string distribution = "uniform";
  int samples = 100;
  std::uint64_t seed = 0;
  std::string ms = "5,10,15", ns = "5,10,15", types = "2,3,4,5";
  std::string table_out = "table2";
  auto* table2 =
      app.add_subcommand("table2", "Monte-Carlo frequency of learnability");
  table2->add_option("--distribution", distribution, "uniform or normal");
  table2->add_option("--samples", samples, "games per cell");
  table2->add_option("--seed", seed, "base seed");
  table2->add_option("--threads", threads, "worker threads");
  table2->add_option("--m", ms, "leader action counts");
  table2->add_option("--n", ns, "follower action counts");
  table2->add_option("--types", types, "type counts, one CSV each");
  table2->add_option("--out", table_out, "output directory");

  // simulate
  GameSource sim_src;
  std::string policy_file;
  std::string type_name;
  int sim_T = 0;
  std::string sim_out;
  auto* simulate =
      app.add_subcommand("simulate", "play a policy against a follower type");
  AddGameSource(simulate, sim_src);
  simulate
      ->add_option("--policy", policy_file,
                   std::string("policy JSON file or ") + kSwitchPolicy)
      ->required();
  simulate->add_option("--type", type_name, "follower type name")->required();
  simulate->add_option("--T", sim_T, "rounds (default: policy horizon)");
  simulate->add_option("--out", sim_out, "transcript file (default stdout)");

  // gen
  int gen_m = 2, gen_n = 2, gen_types = 2;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "write a random game");
  gen->add_option("--m", gen_m, "leader actions");
  gen->add_option("--n", gen_n, "follower actions");
  gen->add_option("--types", gen_types, "follower types");
  gen->add_option("--distribution", distribution, "uniform or normal");
  gen->add_option("--seed", seed, "seed");
  gen->add_option("--out", gen_out, "game file (default stdout)");

  // fixtures
  std::string fixtures_out;
  auto* fixtures = app.add_subcommand("fixtures", "list built-in games");
  fixtures->add_option("--out", fixtures_out,
                       "also write each fixture as <dir>/<id>.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*solve) {
      SolveSpec spec;
      spec.game = Resolve(solve_src);
      spec.solvers = SplitList(solvers);
      spec.horizons = ParseRange(t_range);
      spec.k = k;
      spec.options.budget = budget;
      spec.options.exhaustive = exhaustive;
      spec.out_dir = out_dir;
      if (!sse_type.empty()) spec.sse_type = spec.game.TypeIndex(sse_type);
      auto rows = RunSolve(spec);
      std::cout << SolveCsv(rows);
    } else if (*check) {
      LearnabilityReport report = CheckAssumption(Resolve(check_src));
      Emit(check_out, ToJson(report).dump(2) + "\n");
      if (!check_out.empty() && check_out != "-") {
        std::cout << "assumption_satisfied: "
                  << (report.assumption_satisfied ? "true" : "false") << "\n";
      }
    } else if (*table2) {
      Table2Spec spec;
      spec.distribution = ParseDistribution(distribution);
      spec.samples = samples;
      spec.seed = seed;
      spec.threads = threads;
      spec.ms = IntList(ms);
      spec.ns = IntList(ns);
      spec.type_counts = IntList(types);
      spec.out_dir = table_out;
      auto cells = RunTable2(spec);
      for (const auto& c : cells) {
        std::printf("m=%d n=%d types=%d %d/%d\n", c.m, c.n, c.type_count,
                    c.estimate.satisfied, c.estimate.total);
      }
    } else if (*simulate) {
      Game game = Resolve(sim_src);
      const int type = game.TypeIndex(type_name);
      PolicyTree policy;
      if (policy_file == kSwitchPolicy) {
        if (game.m != 2 || game.n != 2) {
          throw InputError("the switching policy needs a 2x2 game");
        }
        policy = SwitchOnResponsePolicy(sim_T > 0 ? sim_T : 1);
      } else {
        policy = PolicyTree::Load(policy_file, game.m, game.n);
      }
      if (sim_T > 0 && sim_T != policy.horizon()) {
        if (sim_T > policy.horizon()) {
          throw InputError("--T exceeds the policy horizon");
        }
        policy = Truncate(policy, sim_T);
      }
      Emit(sim_out, ToJson(Simulate(policy, game, type)).dump(2) + "\n");
    } else if (*gen) {
      Game game = GenerateRandomGame(gen_m, gen_n, gen_types,
                                     ParseDistribution(distribution), seed);
      Emit(gen_out, GameToJson(game).dump(2) + "\n");
    } else if (*fixtures) {
      for (const auto& f : ListFixtures()) {
        std::cout << f.id << "\t" << f.description << "\n";
        if (!fixtures_out.empty()) {
          std::filesystem::create_directories(fixtures_out);
          SaveGame(LoadFixture(f.id),
                   (std::filesystem::path(fixtures_out) / (f.id + ".json"))
                       .string());
        }
      }
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const lp::MalformedProblem& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  }
  return 0;
}
