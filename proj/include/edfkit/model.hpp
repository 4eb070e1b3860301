#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edfkit/rational.hpp"

namespace edfkit {

/// Time in integer scheduler ticks.
using Ticks = std::int64_t;

/// One sporadic task with synchronous release (phase 0).
struct Task {
  Ticks wcet = 1;      // C
  Ticks deadline = 1;  // D, relative to release
  Ticks period = 1;    // T, minimum inter-release distance

  Rational utilization() const { return Rational(wcet, period); }

  friend bool operator==(const Task&, const Task&) = default;
};

/// Non-empty, validated, immutable list of tasks.
///
/// Construction checks every task (C, D, T >= 1 and C <= T) and computes the
/// exact utilization once.
class TaskSet {
 public:
  explicit TaskSet(std::vector<Task> tasks, std::optional<std::string> name = std::nullopt);

  std::span<const Task> tasks() const noexcept { return tasks_; }
  const Task& operator[](std::size_t i) const { return tasks_[i]; }
  std::size_t size() const noexcept { return tasks_.size(); }
  auto begin() const noexcept { return tasks_.begin(); }
  auto end() const noexcept { return tasks_.end(); }

  const std::optional<std::string>& name() const noexcept { return name_; }

  /// Sum of C/T, exact.
  const Rational& utilization() const noexcept { return utilization_; }

  Ticks max_deadline() const noexcept { return max_deadline_; }

  /// True when every task has D == T.
  bool implicit_deadlines() const noexcept;

  /// Equality compares tasks in order; the name is a label only.
  friend bool operator==(const TaskSet& a, const TaskSet& b) { return a.tasks_ == b.tasks_; }

 private:
  std::vector<Task> tasks_;
  std::optional<std::string> name_;
  Rational utilization_;
  Ticks max_deadline_ = 0;
};

/// Check a single task; throws ValidationError naming `index`.
void validate_task(const Task& task, std::size_t index);

/// lcm of all periods; throws OverflowError if it leaves the int64 range.
Ticks hyperperiod(const TaskSet& ts);

/// Parse the JSON task-file format:
///   {"name": "...", "tasks": [{"c": 1, "d": 2, "t": 4}, ...]}
/// Throws ParseError for malformed documents and ValidationError for
/// well-formed documents describing an invalid set.
TaskSet parse_taskset(std::string_view text);

/// Canonical serialization: compact JSON, keys in the order name, tasks and
/// c, d, t, terminated by a newline.
std::string serialize_taskset(const TaskSet& ts);

TaskSet load_taskset(const std::string& path);
void save_taskset(const TaskSet& ts, const std::string& path);

}  // namespace edfkit
