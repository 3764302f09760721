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

#include <algorithm>
#include <chrono>
#include <cmath>

namespace nlbb {

using Clock = std::chrono::steady_clock;

class Stopwatch {
 public:
  Stopwatch() : start_(Clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

 private:
  Clock::time_point start_;
};

/// A point in time after which work should stop. An infinite budget never
/// expires.
class Deadline {
 public:
  Deadline() = default;

  static Deadline after(double seconds) {
    Deadline d;
    if (std::isfinite(seconds)) {
      d.finite_ = true;
      const auto budget = std::chrono::duration_cast<Clock::duration>(
          std::chrono::duration<double>(std::max(0.0, seconds)));
      d.at_ = Clock::now() + budget;
    }
    return d;
  }

  static Deadline earliest(const Deadline& a, const Deadline& b) {
    if (!a.finite_) return b;
    if (!b.finite_) return a;
    return a.at_ <= b.at_ ? a : b;
  }

  bool expired() const { return finite_ && Clock::now() >= at_; }

  double remaining() const {
    if (!finite_) return HUGE_VAL;
    return std::max(0.0, std::chrono::duration<double>(at_ - Clock::now()).count());
  }

  bool finite() const noexcept { return finite_; }
  Clock::time_point time_point() const noexcept { return at_; }

 private:
  bool finite_ = false;
  Clock::time_point at_{};
};

}  // namespace nlbb
