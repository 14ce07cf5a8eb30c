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

#ifndef DYNSTACK_GAME_HPP_
#define DYNSTACK_GAME_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace dynstack {

// Default tolerance for best-response ties.
inline constexpr double kBestResponseTol = 1e-6;

using Matrix = std::vector<std::vector<double>>;
using MixedStrategy = std::vector<double>;
using ResponsePath = std::vector<int>;

// Invalid games, strategies, indices or files.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct FollowerType {
  std::string name;
  Matrix C;  // m x n follower payoffs
};

// Bayesian Stackelberg game. Leader payoffs do not depend on the type.
struct Game {
  int m = 0;
  int n = 0;
  Matrix R;
  std::vector<FollowerType> types;
  std::vector<double> prior;

  int num_types() const { return static_cast<int>(types.size()); }
  const Matrix& C(int type) const { return types.at(type).C; }
  // Indices of types with positive prior.
  std::vector<int> SupportTypes() const;
  int TypeIndex(const std::string& name) const;

  void Validate() const;
};

// Clamps entries slightly outside [0,1] and checks the sum.
MixedStrategy MakeStrategy(std::vector<double> probs, int m);
MixedStrategy UniformStrategy(int m);
MixedStrategy PureStrategy(int m, int i);

double LeaderUtility(const Game& game, const MixedStrategy& x, int j);
double FollowerUtility(const Game& game, int type, const MixedStrategy& x,
                       int j);

std::vector<int> BestResponseSet(const Game& game, int type,
                                 const MixedStrategy& x,
                                 double eps = kBestResponseTol);
int LeaderFavoredResponse(const Game& game, int type, const MixedStrategy& x,
                          double eps = kBestResponseTol);

// Expected leader utility of x against the prior with leader-favored
// responses.
double ExpectedLeaderUtility(const Game& game, const MixedStrategy& x,
                             double eps = kBestResponseTol);

// Game restricted to `subset` with the prior renormalized.
Game RestrictGame(const Game& game, const std::vector<int>& subset);

// Posted-price game: action i posts prices[i]; j0 rejects, j1 accepts.
Game MakePricingGame(const std::vector<double>& values,
                     const std::vector<double>& prices,
                     const std::vector<double>& prior);

struct MyersonResult {
  double price = 0.0;
  double revenue = 0.0;
};
MyersonResult MyersonPrice(const std::vector<double>& values,
                           const std::vector<double>& prior);

enum class Distribution { kUniform01, kStandardNormal };
Distribution ParseDistribution(const std::string& name);
std::string ToString(Distribution d);

Game GenerateRandomGame(int m, int n, int type_count, Distribution dist,
                        std::uint64_t seed);

nlohmann::json GameToJson(const Game& game);
Game GameFromJson(const nlohmann::json& doc);
Game LoadGame(const std::string& path);
void SaveGame(const Game& game, const std::string& path);

// Writes `contents` to a temporary sibling and renames it into place.
void WriteFileAtomic(const std::string& path, const std::string& contents);
std::string ReadFile(const std::string& path);

}  // namespace dynstack

#endif  // DYNSTACK_GAME_HPP_
