#pragma once

#include <gmpxx.h>

#include <limits>
#include <queue>
#include <vector>

#include "edfkit/analysis.hpp"
#include "edfkit/model.hpp"
#include "edfkit/rational.hpp"

namespace edfkit::analysis::detail {

/// Running approximated demand, kept exact over a common denominator.
///
/// All quantities are integers scaled by L = lcm(T_1..T_n): a task's slope
/// C/T becomes C * (L/T), and its approximation cost frac((I-D)/T) * C
/// becomes ((I-D) mod T) * C * (L/T). Updates are therefore integer
/// additions with no gcd normalization.
class DemandLedger {
 public:
  explicit DemandLedger(const TaskSet& ts);

  /// Slide the approximated tasks' linear part forward by `dt` ticks.
  void advance(Ticks dt);
  /// One more exactly counted job of task i.
  void add_job(std::size_t i);
  /// Start approximating task i from its current deadline on.
  void approximate(std::size_t i);
  /// Stop approximating task i at `interval` and drop its overestimate.
  void withdraw(std::size_t i, Ticks interval);

  /// demand > interval
  bool exceeds(Ticks interval);

  /// Overestimate task i currently carries at `interval`, scaled by L.
  mpz_class scaled_cost(std::size_t i, Ticks interval) const;

  Rational demand() const;
  Rational ready_utilization() const;

 private:
  const TaskSet* ts_;
  mpz_class scale_;
  std::vector<mpz_class> slope_;
  mpz_class demand_;
  mpz_class ready_;
  mpz_class scratch_;
};

struct LaterEvent {
  bool operator()(const TestEvent& a, const TestEvent& b) const noexcept {
    if (a.interval != b.interval) return a.interval > b.interval;
    return a.task_index > b.task_index;
  }
};

/// Min-queue on (interval, task index).
using EventQueue = std::priority_queue<TestEvent, std::vector<TestEvent>, LaterEvent>;

/// Integer bound B with: I < horizon  <=>  I < B, saturated to int64 max.
Ticks exclusive_limit(const Rational& horizon);

/// im_level without overflow errors: saturates at int64 max.
Ticks saturating_im_level(const Task& task, std::int64_t level);

}  // namespace edfkit::analysis::detail
