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

#ifndef DYNSTACK_POLICY_TREE_HPP_
#define DYNSTACK_POLICY_TREE_HPP_

#include <string>
#include <vector>

#include "dynstack/game.hpp"
#include "json.hpp"

namespace dynstack {

// Complete n-ary tree of depth T. Node k has children k*n+1 .. k*n+n, so the
// nodes at depth d are a contiguous range starting at (n^d - 1)/(n - 1).
class PolicyTree {
 public:
  PolicyTree() = default;
  // Every node starts at the uniform strategy.
  PolicyTree(int m, int n, int horizon);

  int m() const { return m_; }
  int n() const { return n_; }
  int horizon() const { return horizon_; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }

  int Child(int node, int j) const { return node * n_ + 1 + j; }
  // Node reached by a response history of length < T.
  int NodeOf(const ResponsePath& history) const;
  // First node index at depth d.
  int DepthOffset(int depth) const;

  const MixedStrategy& at(int node) const { return nodes_.at(node); }
  MixedStrategy& at(int node) { return nodes_.at(node); }
  const MixedStrategy& at(const ResponsePath& history) const {
    return nodes_.at(NodeOf(history));
  }
  void Set(const ResponsePath& history, MixedStrategy x);

  nlohmann::json ToJson() const;
  static PolicyTree FromJson(const nlohmann::json& doc, int m, int n);
  static PolicyTree Load(const std::string& path, int m, int n);
  void Save(const std::string& path) const;

 private:
  int m_ = 0;
  int n_ = 0;
  int horizon_ = 0;
  std::vector<MixedStrategy> nodes_;
};

// Number of nodes of a complete n-ary tree of depth `depth`; throws if the
// count exceeds `limit`.
long long TreeSize(int n, int depth, long long limit);

}  // namespace dynstack

#endif  // DYNSTACK_POLICY_TREE_HPP_
