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

#include "dynstack/game.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

namespace dynstack {

namespace {

void CheckMatrix(const Matrix& M, int m, int n, const std::string& what) {
  if (static_cast<int>(M.size()) != m) {
    throw InputError(what + ": expected " + std::to_string(m) + " rows");
  }
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(M[i].size()) != n) {
      throw InputError(what + ": row " + std::to_string(i) + " has " +
                       std::to_string(M[i].size()) + " entries, expected " +
                       std::to_string(n));
    }
    for (double v : M[i]) {
      if (!std::isfinite(v)) throw InputError(what + ": non-finite payoff");
    }
  }
}

void CheckAction(const Game& game, int j) {
  if (j < 0 || j >= game.n) {
    throw InputError("follower action " + std::to_string(j) +
                     " out of range");
  }
}

void CheckType(const Game& game, int type) {
  if (type < 0 || type >= game.num_types()) {
    throw InputError("type index " + std::to_string(type) + " out of range");
  }
}

void CheckStrategy(const Game& game, const MixedStrategy& x) {
  if (static_cast<int>(x.size()) != game.m) {
    throw InputError("strategy has " + std::to_string(x.size()) +
                     " entries, expected " + std::to_string(game.m));
  }
}

}  // namespace

std::vector<int> Game::SupportTypes() const {
  std::vector<int> out;
  for (int t = 0; t < num_types(); ++t) {
    if (prior[t] > 0.0) out.push_back(t);
  }
  return out;
}

int Game::TypeIndex(const std::string& name) const {
  for (int t = 0; t < num_types(); ++t) {
    if (types[t].name == name) return t;
  }
  // Numeric indices are accepted as well.
  try {
    std::size_t used = 0;
    int idx = std::stoi(name, &used);
    if (used == name.size() && idx >= 0 && idx < num_types()) return idx;
  } catch (const std::exception&) {
  }
  throw InputError("unknown follower type '" + name + "'");
}

void Game::Validate() const {
  if (m < 1 || n < 1) throw InputError("m and n must be positive");
  if (types.empty()) throw InputError("game needs at least one follower type");
  if (prior.size() != types.size()) {
    throw InputError("prior length does not match type count");
  }
  CheckMatrix(R, m, n, "R");
  double total = 0.0;
  for (int t = 0; t < num_types(); ++t) {
    CheckMatrix(types[t].C, m, n, "types[" + std::to_string(t) + "].C");
    if (!(prior[t] >= 0.0) || !std::isfinite(prior[t])) {
      throw InputError("prior entries must be nonnegative");
    }
    total += prior[t];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "prior sums to " << total << ", expected 1";
    throw InputError(os.str());
  }
}

MixedStrategy MakeStrategy(std::vector<double> probs, int m) {
  if (static_cast<int>(probs.size()) != m) {
    throw InputError("strategy length mismatch");
  }
  double sum = 0.0;
  for (double& p : probs) {
    if (!std::isfinite(p) || p < -1e-9 || p > 1.0 + 1e-9) {
      throw InputError("strategy entry outside [0,1]");
    }
    p = std::clamp(p, 0.0, 1.0);
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InputError("strategy does not sum to 1");
  return probs;
}

MixedStrategy UniformStrategy(int m) {
  return MixedStrategy(m, 1.0 / static_cast<double>(m));
}

MixedStrategy PureStrategy(int m, int i) {
  MixedStrategy x(m, 0.0);
  x.at(i) = 1.0;
  return x;
}

double LeaderUtility(const Game& game, const MixedStrategy& x, int j) {
  CheckAction(game, j);
  CheckStrategy(game, x);
  double u = 0.0;
  for (int i = 0; i < game.m; ++i) u += x[i] * game.R[i][j];
  return u;
}

double FollowerUtility(const Game& game, int type, const MixedStrategy& x,
                       int j) {
  CheckType(game, type);
  CheckAction(game, j);
  CheckStrategy(game, x);
  const Matrix& C = game.types[type].C;
  double v = 0.0;
  for (int i = 0; i < game.m; ++i) v += x[i] * C[i][j];
  return v;
}

std::vector<int> BestResponseSet(const Game& game, int type,
                                 const MixedStrategy& x, double eps) {
  std::vector<double> v(game.n);
  double best = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < game.n; ++j) {
    v[j] = FollowerUtility(game, type, x, j);
    best = std::max(best, v[j]);
  }
  std::vector<int> out;
  for (int j = 0; j < game.n; ++j) {
    if (v[j] >= best - eps) out.push_back(j);
  }
  return out;
}

int LeaderFavoredResponse(const Game& game, int type, const MixedStrategy& x,
                          double eps) {
  int pick = -1;
  double pick_u = 0.0;
  for (int j : BestResponseSet(game, type, x, eps)) {
    double u = LeaderUtility(game, x, j);
    if (pick < 0 || u > pick_u) {
      pick = j;
      pick_u = u;
    }
  }
  return pick;
}

double ExpectedLeaderUtility(const Game& game, const MixedStrategy& x,
                             double eps) {
  double total = 0.0;
  for (int t : game.SupportTypes()) {
    total += game.prior[t] *
             LeaderUtility(game, x, LeaderFavoredResponse(game, t, x, eps));
  }
  return total;
}

Game RestrictGame(const Game& game, const std::vector<int>& subset) {
  if (subset.empty()) throw InputError("type subset must be nonempty");
  Game out;
  out.m = game.m;
  out.n = game.n;
  out.R = game.R;
  double mass = 0.0;
  for (int t : subset) {
    CheckType(game, t);
    mass += game.prior[t];
  }
  for (int t : subset) {
    out.types.push_back(game.types[t]);
    out.prior.push_back(mass > 0.0 ? game.prior[t] / mass
                                   : 1.0 / static_cast<double>(subset.size()));
  }
  return out;
}

Game MakePricingGame(const std::vector<double>& values,
                     const std::vector<double>& prices,
                     const std::vector<double>& prior) {
  if (values.empty() || prices.empty()) {
    throw InputError("values and prices must be nonempty");
  }
  if (prior.size() != values.size()) {
    throw InputError("prior must have one entry per buyer value");
  }
  Game g;
  g.m = static_cast<int>(prices.size());
  g.n = 2;
  g.R.assign(g.m, std::vector<double>(2, 0.0));
  for (int i = 0; i < g.m; ++i) g.R[i][1] = prices[i];
  for (std::size_t v = 0; v < values.size(); ++v) {
    FollowerType type;
    std::ostringstream name;
    name << "v" << values[v];
    type.name = name.str();
    type.C.assign(g.m, std::vector<double>(2, 0.0));
    for (int i = 0; i < g.m; ++i) type.C[i][1] = values[v] - prices[i];
    g.types.push_back(std::move(type));
  }
  g.prior = prior;
  g.Validate();
  return g;
}

MyersonResult MyersonPrice(const std::vector<double>& values,
                           const std::vector<double>& prior) {
  if (values.empty() || prior.size() != values.size()) {
    throw InputError("values and prior must be nonempty and equal length");
  }
  std::vector<double> candidates(values);
  std::sort(candidates.begin(), candidates.end());
  MyersonResult best;
  bool have = false;
  for (double p : candidates) {
    double accept = 0.0;
    for (std::size_t v = 0; v < values.size(); ++v) {
      if (values[v] >= p) accept += prior[v];
    }
    const double revenue = p * accept;
    if (!have || revenue > best.revenue + 1e-12) {
      best = {p, revenue};
      have = true;
    }
  }
  return best;
}

Distribution ParseDistribution(const std::string& name) {
  if (name == "uniform" || name == "uniform01") return Distribution::kUniform01;
  if (name == "normal" || name == "standard_normal") {
    return Distribution::kStandardNormal;
  }
  throw InputError("unknown distribution '" + name + "'");
}

std::string ToString(Distribution d) {
  return d == Distribution::kUniform01 ? "uniform01" : "standard_normal";
}

Game GenerateRandomGame(int m, int n, int type_count, Distribution dist,
                        std::uint64_t seed) {
  if (m < 1 || n < 1 || type_count < 1) {
    throw InputError("m, n and type count must be positive");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto draw = [&]() {
    return dist == Distribution::kUniform01 ? uniform(rng) : normal(rng);
  };
  auto matrix = [&]() {
    Matrix M(m, std::vector<double>(n));
    for (auto& row : M) {
      for (double& v : row) v = draw();
    }
    return M;
  };
  Game g;
  g.m = m;
  g.n = n;
  g.R = matrix();
  for (int t = 0; t < type_count; ++t) {
    g.types.push_back({"C" + std::to_string(t), matrix()});
  }
  g.prior.assign(type_count, 1.0 / static_cast<double>(type_count));
  return g;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

double ParseNumber(const nlohmann::json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const auto slash = s.find('/');
    try {
      std::size_t used = 0;
      if (slash == std::string::npos) {
        double d = std::stod(s, &used);
        if (used == s.size()) return d;
      } else {
        const std::string a = s.substr(0, slash);
        const std::string b = s.substr(slash + 1);
        std::size_t ua = 0;
        std::size_t ub = 0;
        double p = std::stod(a, &ua);
        double q = std::stod(b, &ub);
        if (ua == a.size() && ub == b.size() && q != 0.0) return p / q;
      }
    } catch (const std::exception&) {
    }
    throw InputError(where + ": cannot parse number \"" + s + "\"");
  }
  throw InputError(where + ": expected a number");
}

Matrix ParseMatrix(const nlohmann::json& v, const std::string& where) {
  if (!v.is_array()) throw InputError(where + ": expected an array of rows");
  Matrix M;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string row_where = where + "[" + std::to_string(i) + "]";
    if (!v[i].is_array()) throw InputError(row_where + ": expected an array");
    std::vector<double> row;
    for (std::size_t j = 0; j < v[i].size(); ++j) {
      row.push_back(
          ParseNumber(v[i][j], row_where + "[" + std::to_string(j) + "]"));
    }
    M.push_back(std::move(row));
  }
  return M;
}

const nlohmann::json& Field(const nlohmann::json& obj, const char* key,
                            const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw InputError(where + ": missing field \"" + key + "\"");
  }
  return obj.at(key);
}

}  // namespace

nlohmann::json GameToJson(const Game& game) {
  nlohmann::json doc;
  doc["m"] = game.m;
  doc["n"] = game.n;
  doc["R"] = game.R;
  doc["types"] = nlohmann::json::array();
  for (int t = 0; t < game.num_types(); ++t) {
    doc["types"].push_back({{"name", game.types[t].name},
                            {"prior", game.prior[t]},
                            {"C", game.types[t].C}});
  }
  return doc;
}

Game GameFromJson(const nlohmann::json& doc) {
  Game g;
  const auto& m = Field(doc, "m", "game");
  const auto& n = Field(doc, "n", "game");
  if (!m.is_number_integer() || !n.is_number_integer()) {
    throw InputError("game: \"m\" and \"n\" must be integers");
  }
  g.m = m.get<int>();
  g.n = n.get<int>();
  g.R = ParseMatrix(Field(doc, "R", "game"), "R");
  const auto& types = Field(doc, "types", "game");
  if (!types.is_array()) throw InputError("types: expected an array");
  for (std::size_t t = 0; t < types.size(); ++t) {
    const std::string where = "types[" + std::to_string(t) + "]";
    FollowerType type;
    if (types[t].contains("name")) {
      if (!types[t]["name"].is_string()) {
        throw InputError(where + ".name: expected a string");
      }
      type.name = types[t]["name"].get<std::string>();
    } else {
      type.name = "C" + std::to_string(t);
    }
    type.C = ParseMatrix(Field(types[t], "C", where), where + ".C");
    g.prior.push_back(ParseNumber(Field(types[t], "prior", where),
                                  where + ".prior"));
    g.types.push_back(std::move(type));
  }
  g.Validate();
  return g;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Game LoadGame(const std::string& path) {
  const std::string text = ReadFile(path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  try {
    return GameFromJson(doc);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void SaveGame(const Game& game, const std::string& path) {
  game.Validate();
  WriteFileAtomic(path, GameToJson(game).dump(2) + "\n");
}

void WriteFileAtomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace dynstack
