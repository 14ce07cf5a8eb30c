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

// End-to-end checks. Prints one line per criterion and exits nonzero if any
// of them fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "dynstack/dynamic_solvers.hpp"
#include "dynstack/experiments.hpp"
#include "dynstack/fixtures.hpp"
#include "dynstack/learning.hpp"
#include "dynstack/lp.hpp"
#include "dynstack/static_solvers.hpp"
#include "oracles.hpp"

namespace dynstack {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

// Collects failures for one criterion.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok) {
      ++failures_;
      if (!detail_.empty()) detail_ += "; ";
      detail_ += what;
    }
  }
  void Near(double got, double want, double tol, const std::string& what) {
    std::ostringstream ss;
    ss << what << " = " << got << " (want " << want << " +- " << tol << ")";
    Expect(std::abs(got - want) <= tol, ss.str());
  }
  bool ok() const { return failures_ == 0; }
  const std::string& detail() const { return detail_; }

 private:
  int failures_ = 0;
  std::string detail_;
};

bool Report(int id, const Check& c, double secs, const std::string& note = "") {
  std::printf("criterion %d: %s (%.2fs)%s%s%s\n", id, c.ok() ? "PASS" : "FAIL",
              secs, note.empty() ? "" : " ", note.c_str(),
              c.ok() ? "" : (" -- " + c.detail()).c_str());
  std::fflush(stdout);
  return c.ok();
}

// Per-type paths must be follower-optimal on the expanded tree.
bool Certified(const Game& g, const DynamicEquilibrium& r) {
  if (!r.certified || r.max_oracle_gap > kBestResponseTol * r.horizon) {
    return false;
  }
  PolicyTree tree = ExpandPolicy(g, r);
  for (int t : g.SupportTypes()) {
    auto o = FollowerOracle(tree, g, t);
    double f = 0.0;
    int node = 0;
    for (int d = 0; d < r.horizon; ++d) {
      f += FollowerUtility(g, t, tree.at(node), r.per_type_path[t][d]);
      if (d + 1 < r.horizon) node = tree.Child(node, r.per_type_path[t][d]);
    }
    if (o.follower_value - f > kBestResponseTol * r.horizon) return false;
  }
  return true;
}

bool Criterion1() {
  Check c;
  const auto start = Clock::now();
  Game g = LoadFixture("example1");
  c.Near(SolveBse(g).leader_utility, 31.0 / 6, 1e-6, "BSE");
  auto d = SolveDse(g, 2);
  c.Near(d.total_leader_utility, 10.75, 1e-6, "DSE T=2");
  PolicyTree tree = ExpandPolicy(g, d);
  const auto& x0 = tree.at(ResponsePath{d.per_type_path[0][0]});
  const auto& x1 = tree.at(ResponsePath{d.per_type_path[1][0]});
  double diff = 0.0;
  for (int i = 0; i < g.m; ++i) diff = std::max(diff, std::abs(x0[i] - x1[i]));
  c.Expect(diff > 1e-6, "round-2 strategies coincide");
  c.Expect(d.total_leader_utility > 2 * SolveBse(g).leader_utility + 1e-9,
           "no gain over repeated BSE");
  c.Expect(Certified(g, d), "DSE not certified");
  const double secs = Seconds(start);
  c.Expect(secs < 1.0, "runtime over 1s");
  return Report(1, c, secs);
}

bool Criterion2() {
  Check c;
  const auto start = Clock::now();
  Game a = LoadFixture("pricing-8-35-96");
  for (int T = 1; T <= 3; ++T) {
    auto r = SolveDse(a, T);
    c.Near(r.per_round_average, 32.0, 1e-6, "pricing-8-35-96 T=" + std::to_string(T));
    c.Expect(Certified(a, r), "not certified");
  }
  Game b = LoadFixture("pricing-04-05-06");
  for (int T = 1; T <= 5; ++T) {
    auto r = SolveDse(b, T);
    c.Near(r.total_leader_utility, 0.4 * T, 1e-6,
           "pricing-04-05-06 T=" + std::to_string(T));
    c.Expect(Certified(b, r), "not certified");
  }
  const double secs = Seconds(start);
  c.Expect(secs < 120.0, "runtime over 2 min");
  return Report(2, c, secs);
}

bool Criterion3() {
  Check c;
  const auto start = Clock::now();
  Game g = LoadFixture("pricing-restricted");
  c.Near(SolveBse(g).leader_utility, 23.3333, 1e-3, "static");
  auto d = SolveDse(g, 2);
  c.Near(d.per_round_average, 26.1667, 1e-3, "DSE T=2 per round");
  c.Expect(Certified(g, d), "not certified");
  return Report(3, c, Seconds(start));
}

bool Criterion4() {
  Check c;
  const auto start = Clock::now();
  Game g = LoadFixture("learning-vs-comm");
  c.Near(SolveRme(g).leader_utility, 0.5, 1e-6, "RME");
  for (const char* id : {"learning-vs-comm", "lower-bound"}) {
    Game h = LoadFixture(id);
    for (int T = 2; T <= 4; ++T) {
      auto d = SolveDse(h, T);
      c.Near(d.total_leader_utility, T - 0.5, 1e-6,
             std::string(id) + " T=" + std::to_string(T));
      c.Expect(Certified(h, d), "not certified");
    }
  }
  return Report(4, c, Seconds(start));
}

bool Criterion5() {
  Check c;
  const auto start = Clock::now();
  Game g = LoadFixture("ssg3");
  c.Near(SolveRme(g).leader_utility, 1.0 / 3, 1e-6, "RME");
  DynamicOptions opt;
  opt.budget = std::numeric_limits<double>::infinity();
  const double want[] = {1.0 / 3, 0.444, 0.467, 0.479, 0.493};
  std::string note;
  double t5 = 0.0;
  for (int T = 1; T <= 5; ++T) {
    const auto t0 = Clock::now();
    auto d = SolveDse(g, T, opt);
    if (T == 5) t5 = Seconds(t0);
    c.Near(d.per_round_average, want[T - 1], 2e-3, "T=" + std::to_string(T));
    c.Expect(Certified(g, d), "T=" + std::to_string(T) + " not certified");
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%s%.4f", T == 1 ? "per-round " : " ",
                  d.per_round_average);
    note += buf;
  }
  c.Expect(t5 < 600.0, "T=5 runtime over 10 min");
  return Report(5, c, Seconds(start), note);
}

bool Criterion6() {
  Check c;
  const auto start = Clock::now();
  struct Cell {
    int m, n, k;
    double paper;
  };
  const Cell cells[] = {{5, 5, 2, 0.40}, {5, 15, 2, 0.73}, {5, 5, 5, 0.71},
                        {5, 15, 5, 0.98}};
  std::string note;
  for (const Cell& cell : cells) {
    auto e = EstimateAssumptionFrequency(cell.m, cell.n, cell.k,
                                         Distribution::kUniform01, 200, 0, 4);
    std::ostringstream name;
    name << "(" << cell.m << "," << cell.n << "," << cell.k << ")";
    c.Near(e.fraction, cell.paper, 0.10, name.str());
    note += " " + name.str() + "=" + Fixed6(e.fraction);
  }

  namespace fs = std::filesystem;
  Table2Spec spec;
  spec.samples = 40;
  spec.seed = 11;
  spec.ms = {3};
  spec.ns = {3, 4};
  spec.type_counts = {2};
  spec.threads = 1;
  const fs::path base = fs::temp_directory_path() / "dynstack_acceptance";
  fs::remove_all(base);
  spec.out_dir = (base / "a").string();
  RunTable2(spec);
  spec.out_dir = (base / "b").string();
  spec.threads = 4;
  RunTable2(spec);
  const std::string file = "table2_uniform01_types2.csv";
  c.Expect(ReadFile((base / "a" / file).string()) ==
               ReadFile((base / "b" / file).string()),
           "reruns differ");
  return Report(6, c, Seconds(start), note);
}

bool Criterion7() {
  Check c;
  const auto start = Clock::now();
  constexpr double kTol = 1e-7;
  auto tag = [](const char* what, int i) {
    return std::string(what) + " game " + std::to_string(i);
  };

  std::mt19937_64 pick(7);
  std::vector<Game> suite;
  for (int i = 0; i < 30; ++i) {
    const int m = 2 + static_cast<int>(pick() % 3);
    const int n = 2 + static_cast<int>(pick() % 3);
    const int k = 1 + static_cast<int>(pick() % 3);
    suite.push_back(GenerateRandomGame(m, n, k, Distribution::kUniform01, 100 + i));
  }
  for (int i = 0; i < 30; ++i) {
    const Game& g = suite[i];
    const double bse = SolveBse(g).leader_utility;
    auto d = SolveDse(g, 1);
    c.Expect(std::abs(d.total_leader_utility - bse) <= kTol, tag("T=1 DSE != BSE", i));
    c.Expect(Certified(g, d), tag("T=1 not certified", i));
    c.Expect(SolveRme(g).leader_utility >= bse - kTol, tag("RME < BSE", i));
  }

  for (int i = 0; i < 20; ++i) {
    Game g = GenerateRandomGame(3, 3, 2, Distribution::kUniform01, 500 + i);
    const double bse = SolveBse(g).leader_utility;
    auto d2 = SolveDse(g, 2);
    auto m2 = SolveMarkovian(g, 2);
    auto f2 = SolveFirstK(g, 2, 1);
    c.Expect(std::abs(m2.total_leader_utility - d2.total_leader_utility) <= kTol,
             tag("Markovian T=2 != DSE", i));
    c.Expect(std::abs(f2.total_leader_utility - d2.total_leader_utility) <= kTol,
             tag("First-1 T=2 != DSE", i));
    c.Expect(2 * bse <= m2.total_leader_utility + kTol, tag("2 BSE > Markovian", i));
    c.Expect(SolveRme(g).leader_utility >= bse - kTol, tag("RME < BSE", i));
    for (const auto* r : {&d2, &m2, &f2}) c.Expect(Certified(g, *r), tag("T=2 cert", i));
    if (i < 6) {
      auto d3 = SolveDse(g, 3);
      auto m3 = SolveMarkovian(g, 3);
      auto f3 = SolveFirstK(g, 3, 2);
      c.Expect(std::abs(f3.total_leader_utility - d3.total_leader_utility) <= kTol,
               tag("First-2 T=3 != DSE", i));
      c.Expect(3 * bse <= m3.total_leader_utility + kTol, tag("3 BSE > Markovian", i));
      c.Expect(m3.total_leader_utility <= d3.total_leader_utility + kTol,
               tag("Markovian > DSE", i));
      for (const auto* r : {&d3, &m3, &f3}) c.Expect(Certified(g, *r), tag("T=3 cert", i));
    }
  }

  for (int i = 0; i < 10; ++i) {
    Game g = GenerateRandomGame(5, 3, 2, Distribution::kUniform01, 900 + i);
    auto mk = SolveMarkovian(g, 3);
    auto fk = SolveFirstK(g, 3, 3);
    auto d = SolveDse(g, 3);
    c.Expect(fk.total_leader_utility >= mk.total_leader_utility - kTol,
             tag("First-3 < Markovian at T=3", i));
    c.Expect(d.total_leader_utility >= fk.total_leader_utility - kTol,
             tag("DSE < First-3 at T=3", i));
    for (const auto* r : {&mk, &fk, &d}) c.Expect(Certified(g, *r), tag("m=5 cert", i));
  }

  std::mt19937_64 rng(2026);
  int compared = 0;
  for (int i = 0; i < 50; ++i) {
    lp::LpProblem p = testing::RandomLp(rng);
    auto got = lp::SolveLp(p);
    auto want = testing::VertexOptimum(p);
    if (!want) {
      c.Expect(got.status == lp::Status::kInfeasible, tag("LP feasibility", i));
      continue;
    }
    ++compared;
    c.Expect(got.status == lp::Status::kOptimal &&
                 std::abs(got.objective_value - *want) <= kTol,
             tag("LP optimum", i));
  }
  c.Expect(compared >= 20, "too few feasible random LPs");
  return Report(7, c, Seconds(start));
}

bool Criterion8() {
  Check c;
  const auto start = Clock::now();
  Game g = LoadFixture("learning-vs-comm");
  auto p = ConstructLearningPolicy(g, {0});
  c.Expect(p.certified, "learning policy not certified: " + p.failure);
  c.Expect(p.horizon == p.t_star, "horizon != T*");
  c.Expect(p.total_utility > p.horizon * SolveBse(g).leader_utility + 1e-9,
           "no gain over repeated BSE");
  auto menu = ConstructMenuSimulationPolicy(g, 6);
  c.Expect(menu.certified, "menu policy not certified: " + menu.failure);
  for (int t : g.SupportTypes()) {
    auto o = FollowerOracle(menu.policy, g, t);
    for (int d = 0; d < menu.elicitation_rounds; ++d) {
      c.Expect(o.path[d] == menu.codes[t][d], "elicitation path off code");
    }
  }
  c.Expect(menu.realized_total <=
               SolveFirstK(g, 6, 2).total_leader_utility + 1e-7,
           "menu policy above First-2");
  std::ostringstream note;
  note << "T*=" << p.t_star << " learning=" << p.total_utility
       << " menu(T=6)=" << menu.realized_total;
  return Report(8, c, Seconds(start), note.str());
}

}  // namespace
}  // namespace dynstack

int main() {
  using namespace dynstack;
  bool (*criteria[])() = {Criterion1, Criterion2, Criterion3, Criterion4,
                          Criterion5, Criterion6, Criterion7, Criterion8};
  int failed = 0;
  for (int i = 0; i < 8; ++i) {
    bool ok = false;
    try {
      ok = criteria[i]();
    } catch (const std::exception& e) {
      std::printf("criterion %d: FAIL -- %s\n", i + 1, e.what());
    }
    if (!ok) ++failed;
  }
  std::printf("%d of 8 criteria passed\n", 8 - failed);
  return failed == 0 ? 0 : 1;
}
