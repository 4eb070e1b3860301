#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "edfkit/model.hpp"
#include "edfkit/rational.hpp"

namespace edfkit::demand {

/// Value of a demand bound function at one interval length.
struct DemandPoint {
  Ticks interval = 0;
  Rational demand;
};

enum class HorizonSource { Baruah, George, Superposition, Hyperperiod, Combined };

std::string_view to_string(HorizonSource source);

/// Upper limit of the interval lengths an exact test has to examine.
/// Only deadline events strictly below a bounded horizon need checking.
struct Horizon {
  std::optional<Rational> value;  // nullopt = unbounded
  HorizonSource source = HorizonSource::Combined;

  bool bounded() const noexcept { return value.has_value(); }
};

/// Number of jobs of `task` with release and deadline inside [0, interval].
std::int64_t job_count(Ticks interval, const Task& task);

/// Integer form of dbf_task. Throws OverflowError on 64-bit overflow.
Ticks dbf_task_ticks(Ticks interval, const Task& task);
/// Integer form of dbf. Throws OverflowError on 64-bit overflow.
Ticks dbf_ticks(Ticks interval, const TaskSet& ts);

/// Demand bound of a single task: 0 below D, else (floor((I-D)/T) + 1) * C.
Rational dbf_task(Ticks interval, const Task& task);
Rational dbf(Ticks interval, const TaskSet& ts);

/// Deadline of the `level`-th job, (level - 1) * T + D. Up to this interval the
/// approximation at that level is exact.
Ticks im_level(const Task& task, std::int64_t level);

/// Approximated demand: exact up to `im`, then a line of slope C/T.
Rational dbf_star_task(Ticks interval, const Task& task, Ticks im);

/// First synchronous deadline of `task` strictly after `interval`.
/// Requires interval >= D (PreconditionError otherwise).
Ticks next_int(Ticks interval, const Task& task);

/// Overestimation of dbf_star_task beyond the exact window:
/// frac((I - D) / T) * C. Requires interval >= D.
Rational app_cost(Ticks interval, const Task& task);

/// (U / (1 - U)) * max(T_i - D_i), clamped at 0. Requires U < 1.
Horizon bound_baruah(const TaskSet& ts);
/// sum over D_i <= T_i of (1 - D_i/T_i) C_i, divided by 1 - U. Requires U < 1.
Horizon bound_george(const TaskSet& ts);
/// max(D_max, sum over all tasks of (1 - D_i/T_i) C_i / (1 - U)). Requires U < 1.
Horizon bound_superposition(const TaskSet& ts);

/// Smallest of the three analytic bounds when U < 1. At U == 1 falls back to
/// the hyperperiod, extended by the largest D_i - T_i when some deadline
/// exceeds its period. Throws HorizonUnavailable for U > 1 or when the
/// hyperperiod overflows.
Horizon test_horizon(const TaskSet& ts);

}  // namespace edfkit::demand
