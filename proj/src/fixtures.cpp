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

#include "dynstack/fixtures.hpp"

#include <functional>

namespace dynstack {

namespace {

Game TwoTypeGame(Matrix R, Matrix C0, Matrix C1) {
  Game g;
  g.m = static_cast<int>(R.size());
  g.n = static_cast<int>(R[0].size());
  g.R = std::move(R);
  g.types = {{"C0", std::move(C0)}, {"C1", std::move(C1)}};
  g.prior = {0.5, 0.5};
  g.Validate();
  return g;
}

Game Ssg3() {
  Game g;
  g.m = 3;
  g.n = 3;
  g.R = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  g.types = {{"C0", {{0, 0.5, 0.5}, {1, 0, 0.5}, {1, 0.5, 0}}},
             {"C1", {{0, 1, 0.5}, {0.5, 0, 0.5}, {0.5, 1, 0}}},
             {"C2", {{0, 0.5, 1}, {0.5, 0, 1}, {0.5, 0.5, 0}}}};
  g.prior = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  g.Validate();
  return g;
}

struct Entry {
  FixtureInfo info;
  std::function<Game()> make;
};

const std::vector<Entry>& Catalog() {
  static const std::vector<Entry> catalog = {
      {{"example1", "two-type 2x2 game where learning pays off"},
       [] {
         return TwoTypeGame({{5, 2}, {5, 7}}, {{5, 2}, {4, 2}},
                            {{5, 7}, {4, 3}});
       }},
      {{"pricing-8-35-96", "posted prices equal to buyer values 8, 35, 96"},
       [] {
         const double third = 1.0 / 3.0;
         return MakePricingGame({8, 35, 96}, {8, 35, 96},
                                {third, third, third});
       }},
      {{"pricing-restricted", "buyer values 8, 35, 96 with prices 22, 40, 61"},
       [] {
         const double third = 1.0 / 3.0;
         return MakePricingGame({8, 35, 96}, {22, 40, 61},
                                {third, third, third});
       }},
      {{"learning-vs-comm", "dynamic policy versus menu comparison"},
       [] {
         return TwoTypeGame({{1, 0}, {0, 1}}, {{0.5, 0}, {1, 0}},
                            {{0, 1}, {0, 0.5}});
       }},
      {{"pricing-04-05-06", "buyer values 0.4, 0.5, 0.6 at matching prices"},
       [] {
         const double third = 1.0 / 3.0;
         return MakePricingGame({0.4, 0.5, 0.6}, {0.4, 0.5, 0.6},
                                {third, third, third});
       }},
      {{"ssg3", "three-target security game with three attacker types"},
       Ssg3},
      {{"lower-bound", "dominant-response types; menu beats any policy"},
       [] {
         return TwoTypeGame({{1, 0}, {0, 1}}, {{1, 0}, {1, 0}},
                            {{0, 1}, {0, 1}});
       }},
  };
  return catalog;
}

}  // namespace

std::vector<FixtureInfo> ListFixtures() {
  std::vector<FixtureInfo> out;
  for (const auto& e : Catalog()) out.push_back(e.info);
  return out;
}

bool HasFixture(const std::string& id) {
  for (const auto& e : Catalog()) {
    if (e.info.id == id) return true;
  }
  return false;
}

Game LoadFixture(const std::string& id) {
  for (const auto& e : Catalog()) {
    if (e.info.id == id) return e.make();
  }
  throw InputError("unknown fixture '" + id + "'");
}

PolicyTree SwitchOnResponsePolicy(int horizon) {
  PolicyTree tree(2, 2, horizon);
  // A node is "switched" once any ancestor edge was j1.
  std::vector<bool> switched(tree.num_nodes(), false);
  for (int node = 0; node < tree.num_nodes(); ++node) {
    tree.at(node) = switched[node] ? MixedStrategy{0, 1} : MixedStrategy{1, 0};
    for (int j = 0; j < 2; ++j) {
      const int child = tree.Child(node, j);
      if (child < tree.num_nodes()) switched[child] = switched[node] || j == 1;
    }
  }
  return tree;
}

}  // namespace dynstack
