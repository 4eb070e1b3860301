#include "edfkit/demand.hpp"

#include <algorithm>
#include <limits>

#include "edfkit/errors.hpp"

namespace edfkit::demand {

namespace {

Ticks checked_mul(Ticks a, Ticks b) {
  Ticks r = 0;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw OverflowError("tick arithmetic overflow");
  }
  return r;
}

Ticks checked_add(Ticks a, Ticks b) {
  Ticks r = 0;
  if (__builtin_add_overflow(a, b, &r)) {
    throw OverflowError("tick arithmetic overflow");
  }
  return r;
}

void require_interval(Ticks interval) {
  if (interval < 0) {
    throw PreconditionError("negative interval");
  }
}

void require_below_one(const TaskSet& ts, std::string_view bound) {
  if (ts.utilization() >= Rational(1)) {
    throw HorizonUnavailable(std::string(bound) + " bound needs U < 1 (U = " +
                             ts.utilization().to_string() + ")");
  }
}

/// sum of (1 - D_i/T_i) * C_i over the tasks selected by `keep`.
template <class Pred>
Rational slack_sum(const TaskSet& ts, Pred keep) {
  mpq_class sum = 0;
  for (const Task& t : ts) {
    if (keep(t)) {
      mpq_class term(t.period - t.deadline, t.period);
      term.canonicalize();
      sum += term * t.wcet;
    }
  }
  return Rational(std::move(sum));
}

}  // namespace

std::string_view to_string(HorizonSource source) {
  switch (source) {
    case HorizonSource::Baruah: return "baruah";
    case HorizonSource::George: return "george";
    case HorizonSource::Superposition: return "superposition";
    case HorizonSource::Hyperperiod: return "hyperperiod";
    case HorizonSource::Combined: return "combined";
  }
  return "unknown";
}

std::int64_t job_count(Ticks interval, const Task& task) {
  require_interval(interval);
  if (interval < task.deadline) return 0;
  return (interval - task.deadline) / task.period + 1;
}

Ticks dbf_task_ticks(Ticks interval, const Task& task) {
  return checked_mul(job_count(interval, task), task.wcet);
}

Ticks dbf_ticks(Ticks interval, const TaskSet& ts) {
  Ticks sum = 0;
  for (const Task& t : ts) {
    sum = checked_add(sum, dbf_task_ticks(interval, t));
  }
  return sum;
}

Rational dbf_task(Ticks interval, const Task& task) {
  return Rational(dbf_task_ticks(interval, task));
}

Rational dbf(Ticks interval, const TaskSet& ts) {
  return Rational(dbf_ticks(interval, ts));
}

Ticks im_level(const Task& task, std::int64_t level) {
  if (level < 1) {
    throw PreconditionError("approximation level must be >= 1");
  }
  return checked_add(checked_mul(level - 1, task.period), task.deadline);
}

Rational dbf_star_task(Ticks interval, const Task& task, Ticks im) {
  require_interval(interval);
  if (interval <= im) {
    return dbf_task(interval, task);
  }
  return dbf_task(im, task) + task.utilization() * Rational(interval - im);
}

Ticks next_int(Ticks interval, const Task& task) {
  if (interval < task.deadline) {
    throw PreconditionError("next_int called before the task's first deadline");
  }
  const Ticks k = (interval - task.deadline) / task.period + 1;
  return checked_add(checked_mul(k, task.period), task.deadline);
}

Rational app_cost(Ticks interval, const Task& task) {
  if (interval < task.deadline) {
    throw PreconditionError("app_cost called before the task's first deadline");
  }
  const Ticks residue = (interval - task.deadline) % task.period;
  return Rational(residue, task.period) * Rational(task.wcet);
}

Horizon bound_baruah(const TaskSet& ts) {
  require_below_one(ts, "Baruah");
  Ticks max_slack = std::numeric_limits<Ticks>::min();
  for (const Task& t : ts) {
    max_slack = std::max(max_slack, t.period - t.deadline);
  }
  const Rational& u = ts.utilization();
  if (max_slack <= 0) {
    return {Rational(0), HorizonSource::Baruah};
  }
  return {u / (Rational(1) - u) * Rational(max_slack), HorizonSource::Baruah};
}

Horizon bound_george(const TaskSet& ts) {
  require_below_one(ts, "George");
  const Rational sum = slack_sum(ts, [](const Task& t) { return t.deadline <= t.period; });
  return {sum / (Rational(1) - ts.utilization()), HorizonSource::George};
}

Horizon bound_superposition(const TaskSet& ts) {
  require_below_one(ts, "superposition");
  const Rational sum = slack_sum(ts, [](const Task&) { return true; });
  const Rational linear = sum / (Rational(1) - ts.utilization());
  return {std::max(Rational(ts.max_deadline()), linear), HorizonSource::Superposition};
}

Horizon test_horizon(const TaskSet& ts) {
  const auto order = ts.utilization() <=> Rational(1);
  if (order > 0) {
    throw HorizonUnavailable("U > 1: no feasibility horizon");
  }
  if (order == 0) {
    Ticks h = 0;
    try {
      h = hyperperiod(ts);
    } catch (const OverflowError&) {
      throw HorizonUnavailable("U = 1 and the hyperperiod overflows");
    }
    Ticks tail = 0;
    for (const Task& t : ts) {
      tail = std::max(tail, t.deadline - t.period);
    }
    Ticks value = 0;
    if (__builtin_add_overflow(h, tail, &value)) {
      throw HorizonUnavailable("U = 1 and the hyperperiod horizon overflows");
    }
    return {Rational(value), HorizonSource::Hyperperiod};
  }
  Rational best = *bound_baruah(ts).value;
  best = std::min(best, *bound_george(ts).value);
  best = std::min(best, *bound_superposition(ts).value);
  return {best, HorizonSource::Combined};
}

}  // namespace edfkit::demand
