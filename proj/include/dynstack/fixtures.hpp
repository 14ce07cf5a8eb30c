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

#ifndef DYNSTACK_FIXTURES_HPP_
#define DYNSTACK_FIXTURES_HPP_

#include <string>
#include <vector>

#include "dynstack/game.hpp"
#include "dynstack/policy_tree.hpp"

namespace dynstack {

struct FixtureInfo {
  std::string id;
  std::string description;
};

std::vector<FixtureInfo> ListFixtures();
bool HasFixture(const std::string& id);
Game LoadFixture(const std::string& id);

// Two-action switching policy: play (1,0) until j1 is observed, then (0,1)
// for the rest of the horizon.
PolicyTree SwitchOnResponsePolicy(int horizon);

}  // namespace dynstack

#endif  // DYNSTACK_FIXTURES_HPP_
