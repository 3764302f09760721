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

#include "nlbb/parallel.hpp"

#include <atomic>
#include <condition_variable>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

#include "nlbb/errors.hpp"
#include "tree_search.hpp"

namespace nlbb {

namespace {

struct WorkItem {
  Node node;
  std::shared_ptr<const PseudoCostTable> pseudo_costs;
};

struct WorkerReport {
  Node node;
  NodeOutcome outcome;
};

// GCC 11 reports a spurious -Wuninitialized when moving a Node (which holds an
// optional NlpResult) out of the deque.
#if defined(__GNUC__) && !defined(__clang__)
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wuninitialized"
#endif

/// Unbounded multi-producer queue closed by the consumer side.
template <typename T>
class Channel {
 public:
  void send(T item) {
    {
      std::lock_guard lock(mutex_);
      items_.push_back(std::move(item));
    }
    ready_.notify_one();
  }

  /// Blocks until an item arrives, the channel closes or the deadline passes.
  std::optional<T> receive(const Deadline& deadline) {
    std::unique_lock lock(mutex_);
    auto has_work = [this] { return !items_.empty() || closed_; };
    if (deadline.finite()) {
      ready_.wait_until(lock, deadline.time_point(), has_work);
    } else {
      ready_.wait(lock, has_work);
    }
    if (items_.empty()) return std::nullopt;
    std::optional<T> item(std::in_place, std::move(items_.front()));
    items_.pop_front();
    return item;
  }

  std::optional<T> try_receive() {
    std::lock_guard lock(mutex_);
    if (items_.empty()) return std::nullopt;
    std::optional<T> item(std::in_place, std::move(items_.front()));
    items_.pop_front();
    return item;
  }

  void close() {
    {
      std::lock_guard lock(mutex_);
      closed_ = true;
    }
    ready_.notify_all();
  }

 private:
  std::mutex mutex_;
  std::condition_variable ready_;
  std::deque<T> items_;
  bool closed_ = false;
};

#if defined(__GNUC__) && !defined(__clang__)
#pragma GCC diagnostic pop
#endif

class Orchestrator {
 public:
  Orchestrator(detail::TreeSearch& search, int workers)
      : search_(search), worker_count_(workers) {}

  void run() {
    publish();
    std::vector<std::jthread> threads;
    threads.reserve(worker_count_);
    for (int i = 0; i < worker_count_; ++i) threads.emplace_back([this] { work(); });

    while (!search_.should_stop(in_flight_bound(), !in_flight_.empty())) {
      dispatch();
      if (in_flight_.empty()) continue;
      if (auto report = reports_.receive(search_.deadline())) take(std::move(*report));
    }

    work_.close();
    // Nodes still queued were never started: cancel them.
    while (auto item = work_.try_receive()) cancel(std::move(item->node));
    // Drain the ones being processed; they stop at the deadline at the latest.
    while (!in_flight_.empty()) {
      if (auto report = reports_.receive(Deadline())) cancel(std::move(report->node));
    }
    threads.clear();
  }

 private:
  double in_flight_bound() const {
    return in_flight_.empty() ? kInf : in_flight_.begin()->first;
  }

  void publish() {
    snapshot_ = std::make_shared<const PseudoCostTable>(search_.pseudo_costs());
    incumbent_.store(search_.incumbent_objective(), std::memory_order_release);
  }

  void dispatch() {
    while (static_cast<int>(in_flight_.size()) < worker_count_ && search_.has_open()) {
      Node node = search_.pop();
      search_.count_dispatched();
      in_flight_.emplace(node.bound, node.id);
      work_.send({std::move(node), snapshot_});
    }
  }

  void take(WorkerReport report) {
    forget(report.node);
    if (report.outcome.timed_out) {
      cancel_started(std::move(report.node));
      return;
    }
    const bool tables = !report.outcome.updates.empty();
    const double before = search_.incumbent_objective();
    search_.integrate(report.node, std::move(report.outcome));
    if (tables || search_.incumbent_objective() < before) publish();
  }

  void forget(const Node& node) {
    auto range = in_flight_.equal_range(node.bound);
    for (auto it = range.first; it != range.second; ++it) {
      if (it->second == node.id) {
        in_flight_.erase(it);
        return;
      }
    }
  }

  // Node was dispatched but its result is discarded; it returns to the open
  // set so the reported bound stays valid.
  void cancel_started(Node node) {
    search_.count_cancelled();
    search_.push_back(std::move(node));
  }

  void cancel(Node node) {
    forget(node);
    cancel_started(std::move(node));
  }

  void work() {
    while (auto item = work_.receive(Deadline())) {
      WorkerReport report{std::move(item->node), {}};
      NodeContext ctx{search_.model(), search_.options(), *item->pseudo_costs,
                      incumbent_.load(std::memory_order_acquire), search_.deadline()};
      try {
        report.outcome = process_node(report.node, ctx);
      } catch (const std::exception&) {
        // Same policy as a failed relaxation: prune and count.
        report.outcome = NodeOutcome{};
        report.outcome.failure = NlpStatus::kNumericalError;
      }
      reports_.send(std::move(report));
    }
  }

  detail::TreeSearch& search_;
  const int worker_count_;
  Channel<WorkItem> work_;
  Channel<WorkerReport> reports_;
  std::atomic<double> incumbent_{kInf};
  std::shared_ptr<const PseudoCostTable> snapshot_;
  // Bound -> node id of every dispatched node awaiting its report.
  std::multimap<double, std::int64_t> in_flight_;
};

}  // namespace

SolveResult parallel_solve(const Model& model, const SolverOptions& options) {
  if (options.workers < 2) throw ContractViolation("parallel search needs at least 2 workers");
  options.validate();
  detail::TreeSearch search(model, options);
  if (!search.prepare() || !search.solve_root()) return search.finish();
  Orchestrator(search, options.workers - 1).run();
  return search.finish();
}

}  // namespace nlbb
