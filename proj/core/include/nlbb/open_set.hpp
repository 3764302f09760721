// Copyright 2026 The nlbb Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nlbb/node.hpp"
#include "nlbb/options.hpp"

namespace nlbb {

/// Open nodes of the search tree, ordered by the traversal rule.
///
/// Best-first pops the smallest bound, breaking ties by the smaller id.
/// Depth-first pops the most recently pushed node; callers push the right
/// child before the left so the floor child is explored first.
class OpenSet {
 public:
  explicit OpenSet(Traversal traversal) : traversal_(traversal) {}

  void push(Node node);

  /// Removes and returns the next node. Precondition: not empty.
  Node pop();

  bool empty() const noexcept { return nodes_.empty(); }
  std::size_t size() const noexcept { return nodes_.size(); }
  Traversal traversal() const noexcept { return traversal_; }

  /// Smallest bound among open nodes, +inf when empty.
  double min_bound() const;

  /// Drops every node whose bound is at least `cutoff`. Returns how many.
  std::size_t prune(double cutoff);

 private:
  Traversal traversal_;
  // Best-first keeps a binary heap; depth-first uses the vector as a stack.
  std::vector<Node> nodes_;
};

/// Free-function form of OpenSet::pop for symmetry with the other search
/// primitives.
inline Node next_node(OpenSet& open) { return open.pop(); }

}  // namespace nlbb
