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

#include "nlbb/open_set.hpp"

#include <algorithm>

#include "nlbb/errors.hpp"

namespace nlbb {

namespace {

// Heap comparator: true when a should sit below b, i.e. b pops first.
bool pops_later(const Node& a, const Node& b) {
  if (a.bound != b.bound) return a.bound > b.bound;
  return a.id > b.id;
}

}  // namespace

void OpenSet::push(Node node) {
  nodes_.push_back(std::move(node));
  if (traversal_ == Traversal::kBestFirst) {
    std::push_heap(nodes_.begin(), nodes_.end(), pops_later);
  }
}

Node OpenSet::pop() {
  if (nodes_.empty()) throw ContractViolation("pop from an empty open set");
  if (traversal_ == Traversal::kBestFirst) {
    std::pop_heap(nodes_.begin(), nodes_.end(), pops_later);
  }
  Node node = std::move(nodes_.back());
  nodes_.pop_back();
  return node;
}

double OpenSet::min_bound() const {
  if (nodes_.empty()) return kInf;
  if (traversal_ == Traversal::kBestFirst) return nodes_.front().bound;
  double best = kInf;
  for (const Node& n : nodes_) best = std::min(best, n.bound);
  return best;
}

std::size_t OpenSet::prune(double cutoff) {
  const std::size_t before = nodes_.size();
  std::erase_if(nodes_, [cutoff](const Node& n) { return n.bound >= cutoff; });
  if (traversal_ == Traversal::kBestFirst) {
    std::make_heap(nodes_.begin(), nodes_.end(), pops_later);
  }
  return before - nodes_.size();
}

}  // namespace nlbb
