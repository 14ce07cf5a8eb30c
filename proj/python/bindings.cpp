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

// Games and results cross the boundary as JSON text; the Python package
// decodes them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "dynstack/dynamic_solvers.hpp"
#include "dynstack/fixtures.hpp"
#include "dynstack/learning.hpp"
#include "dynstack/lp.hpp"
#include "dynstack/static_solvers.hpp"

namespace py = pybind11;

namespace dynstack {
namespace {

Game Parse(const std::string& text) {
  return GameFromJson(nlohmann::json::parse(text));
}

DynamicOptions Options(double budget, bool exhaustive) {
  DynamicOptions o;
  o.budget = budget;
  o.exhaustive = exhaustive;
  return o;
}

py::tuple SolveLpDense(const std::vector<double>& c,
                       const std::vector<std::vector<double>>& A,
                       const std::vector<std::string>& senses,
                       const std::vector<double>& b,
                       const std::vector<double>& lower,
                       const std::vector<double>& upper) {
  lp::LpProblem p;
  p.objective = c;
  p.constraint_rhs = b;
  p.variable_lower_bounds = lower;
  p.variable_upper_bounds = upper;
  for (const auto& row : A) {
    p.constraint_matrix.insert(p.constraint_matrix.end(), row.begin(), row.end());
  }
  for (const auto& s : senses) {
    if (s == "<=") {
      p.constraint_sense.push_back(lp::Sense::kLessEqual);
    } else if (s == ">=") {
      p.constraint_sense.push_back(lp::Sense::kGreaterEqual);
    } else if (s == "=") {
      p.constraint_sense.push_back(lp::Sense::kEqual);
    } else {
      throw lp::MalformedProblem("sense must be one of <=, >=, =");
    }
  }
  lp::LpSolution sol = lp::SolveLp(p);
  return py::make_tuple(lp::ToString(sol.status), sol.values,
                        sol.objective_value);
}

}  // namespace
}  // namespace dynstack

PYBIND11_MODULE(_dynstack, m) {
  using namespace dynstack;
  m.doc() = "Dynamic Stackelberg solvers";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError",
                                            PyExc_ValueError);
  py::register_exception<ProblemTooLarge>(m, "ProblemTooLarge",
                                          PyExc_RuntimeError);
  py::register_exception<lp::MalformedProblem>(m, "MalformedProblem",
                                               PyExc_ValueError);

  m.def("list_fixtures", [] {
    std::vector<std::string> ids;
    for (const auto& f : ListFixtures()) ids.push_back(f.id);
    return ids;
  });
  m.def("load_fixture",
        [](const std::string& id) { return GameToJson(LoadFixture(id)).dump(); });
  m.def("generate_random_game",
        [](int m_, int n, int types, const std::string& dist, std::uint64_t seed) {
          return GameToJson(
                     GenerateRandomGame(m_, n, types, ParseDistribution(dist), seed))
              .dump();
        });
  m.def("normalize_game",
        [](const std::string& game) { return GameToJson(Parse(game)).dump(); });

  m.def("solve_sse", [](const std::string& game, int type) {
    return ToJson(SolveSse(Parse(game), type)).dump();
  });
  m.def("solve_bse",
        [](const std::string& game) { return ToJson(SolveBse(Parse(game))).dump(); });
  m.def("solve_rme",
        [](const std::string& game) { return ToJson(SolveRme(Parse(game))).dump(); });
  m.def("inducibility_gap", [](const std::string& game) {
    InducibilityGap gap = ComputeInducibilityGap(Parse(game));
    return py::make_tuple(gap.delta, gap.vacuous);
  });

  m.def("solve_dse",
        [](const std::string& game, int T, double budget, bool exhaustive) {
          py::gil_scoped_release release;
          return ToJson(SolveDse(Parse(game), T, Options(budget, exhaustive))).dump();
        });
  m.def("solve_markovian",
        [](const std::string& game, int T, double budget, bool exhaustive) {
          py::gil_scoped_release release;
          return ToJson(SolveMarkovian(Parse(game), T, Options(budget, exhaustive)))
              .dump();
        });
  m.def("solve_first_k",
        [](const std::string& game, int T, int k, double budget, bool exhaustive) {
          py::gil_scoped_release release;
          return ToJson(SolveFirstK(Parse(game), T, k, Options(budget, exhaustive)))
              .dump();
        });

  m.def("check_assumption", [](const std::string& game) {
    return ToJson(CheckAssumption(Parse(game))).dump();
  });
  m.def("construct_learning_policy",
        [](const std::string& game, const std::vector<int>& subgroup, int T) {
          return ToJson(ConstructLearningPolicy(Parse(game), subgroup, T)).dump();
        });
  m.def("construct_menu_simulation_policy", [](const std::string& game, int T) {
    return ToJson(ConstructMenuSimulationPolicy(Parse(game), T)).dump();
  });
  m.def("estimate_assumption_frequency",
        [](int m_, int n, int types, const std::string& dist, int samples,
           std::uint64_t seed, int threads) {
          py::gil_scoped_release release;
          return ToJson(EstimateAssumptionFrequency(m_, n, types,
                                                    ParseDistribution(dist),
                                                    samples, seed, threads))
              .dump();
        });
  m.def("round_to_k_uniform", &RoundToKUniform);
  m.def("solve_lp", &SolveLpDense);
}
