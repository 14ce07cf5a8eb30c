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

#include "dynstack/policy_tree.hpp"

#include <functional>

namespace dynstack {

namespace {
constexpr long long kMaxTreeNodes = 20'000'000;
}

long long TreeSize(int n, int depth, long long limit) {
  long long total = 0;
  long long level = 1;
  for (int d = 0; d < depth; ++d) {
    total += level;
    if (total > limit) {
      throw InputError("policy tree with depth " + std::to_string(depth) +
                       " and branching " + std::to_string(n) + " is too large");
    }
    if (d + 1 < depth) level *= n;
  }
  return total;
}

PolicyTree::PolicyTree(int m, int n, int horizon)
    : m_(m), n_(n), horizon_(horizon) {
  if (m < 1 || n < 1 || horizon < 1) {
    throw InputError("policy tree needs m, n, T >= 1");
  }
  nodes_.assign(TreeSize(n, horizon, kMaxTreeNodes), UniformStrategy(m));
}

int PolicyTree::DepthOffset(int depth) const {
  int off = 0;
  int level = 1;
  for (int d = 0; d < depth; ++d) {
    off += level;
    level *= n_;
  }
  return off;
}

int PolicyTree::NodeOf(const ResponsePath& history) const {
  if (static_cast<int>(history.size()) >= horizon_) {
    throw InputError("history longer than the policy horizon");
  }
  int node = 0;
  for (int j : history) {
    if (j < 0 || j >= n_) throw InputError("response out of range");
    node = Child(node, j);
  }
  return node;
}

void PolicyTree::Set(const ResponsePath& history, MixedStrategy x) {
  at(NodeOf(history)) = MakeStrategy(std::move(x), m_);
}

nlohmann::json PolicyTree::ToJson() const {
  std::function<nlohmann::json(int, int)> rec = [&](int node, int depth) {
    nlohmann::json out;
    out["x"] = nodes_[node];
    if (depth + 1 < horizon_) {
      nlohmann::json kids = nlohmann::json::object();
      for (int j = 0; j < n_; ++j) {
        kids[std::to_string(j)] = rec(Child(node, j), depth + 1);
      }
      out["children"] = std::move(kids);
    }
    return out;
  };
  return rec(0, 0);
}

PolicyTree PolicyTree::FromJson(const nlohmann::json& doc, int m, int n) {
  // The horizon is the depth of the first branch; completeness is checked
  // while filling.
  int horizon = 0;
  const nlohmann::json* cur = &doc;
  while (true) {
    if (!cur->is_object() || !cur->contains("x")) {
      throw InputError("policy: every node needs an \"x\" field");
    }
    ++horizon;
    if (!cur->contains("children")) break;
    const auto& kids = cur->at("children");
    if (!kids.is_object() || !kids.contains("0")) {
      throw InputError("policy: \"children\" must map action indices");
    }
    cur = &kids.at("0");
  }
  PolicyTree tree(m, n, horizon);
  std::function<void(const nlohmann::json&, int, int, const std::string&)> rec =
      [&](const nlohmann::json& node, int idx, int depth,
          const std::string& where) {
        if (!node.is_object() || !node.contains("x") || !node["x"].is_array()) {
          throw InputError(where + ": missing strategy \"x\"");
        }
        std::vector<double> x;
        for (const auto& v : node["x"]) {
          if (!v.is_number()) throw InputError(where + ".x: expected numbers");
          x.push_back(v.get<double>());
        }
        try {
          tree.nodes_[idx] = MakeStrategy(std::move(x), m);
        } catch (const InputError& e) {
          throw InputError(where + ".x: " + e.what());
        }
        if (depth + 1 == horizon) {
          if (node.contains("children") && !node["children"].empty()) {
            throw InputError(where + ": tree deeper than its first branch");
          }
          return;
        }
        if (!node.contains("children") || !node["children"].is_object()) {
          throw InputError(where + ": missing children before depth " +
                           std::to_string(horizon));
        }
        const auto& kids = node["children"];
        if (static_cast<int>(kids.size()) != n) {
          throw InputError(where + ": expected " + std::to_string(n) +
                           " children");
        }
        for (int j = 0; j < n; ++j) {
          const std::string key = std::to_string(j);
          if (!kids.contains(key)) {
            throw InputError(where + ": missing child " + key);
          }
          rec(kids.at(key), tree.Child(idx, j), depth + 1,
              where + "/" + key);
        }
      };
  rec(doc, 0, 0, "policy");
  return tree;
}

PolicyTree PolicyTree::Load(const std::string& path, int m, int n) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(ReadFile(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  try {
    return FromJson(doc, m, n);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void PolicyTree::Save(const std::string& path) const {
  WriteFileAtomic(path, ToJson().dump(2) + "\n");
}

}  // namespace dynstack
