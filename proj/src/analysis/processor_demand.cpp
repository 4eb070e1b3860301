#include <algorithm>

#include "edfkit/analysis.hpp"
#include "edfkit/demand.hpp"
#include "edfkit/errors.hpp"
#include "ledger.hpp"

namespace edfkit::analysis {

namespace {

/// Min-queue over (next deadline, task index); each task holds one entry.
class DeadlineMerge {
 public:
  DeadlineMerge(const TaskSet& ts, Ticks limit) : ts_(ts), limit_(limit) {
    heap_.reserve(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (ts[i].deadline < limit_) heap_.push_back({ts[i].deadline, i});
    }
    std::make_heap(heap_.begin(), heap_.end(), later);
  }

  bool empty() const noexcept { return heap_.empty(); }
  Ticks peek() const noexcept { return heap_.front().first; }

  /// Remove the head, schedule that task's next deadline if still below the
  /// limit, and return the task index.
  std::size_t pop() {
    std::pop_heap(heap_.begin(), heap_.end(), later);
    auto& entry = heap_.back();
    const std::size_t index = entry.second;
    Ticks next = 0;
    if (!__builtin_add_overflow(entry.first, ts_[index].period, &next) && next < limit_) {
      entry.first = next;
      std::push_heap(heap_.begin(), heap_.end(), later);
    } else {
      heap_.pop_back();
    }
    return index;
  }

 private:
  static bool later(const std::pair<Ticks, std::size_t>& a, const std::pair<Ticks, std::size_t>& b) {
    return a > b;
  }

  const TaskSet& ts_;
  Ticks limit_;
  std::vector<std::pair<Ticks, std::size_t>> heap_;
};

}  // namespace

Verdict processor_demand(const TaskSet& ts, const DemandOptions& options) {
  IterationStats stats;
  if (ts.utilization() > Rational(1)) {
    stats.intervals_checked = 1;
    return Verdict::overloaded(stats);
  }
  const demand::Horizon horizon = demand::test_horizon(ts);
  stats.horizon_used = horizon.value;
  const Ticks limit = detail::exclusive_limit(*horizon.value);

  DeadlineMerge events(ts, limit);
  Ticks demand = 0;
  std::uint64_t checked = 0;
  while (!events.empty()) {
    if (options.iteration_cap && checked >= *options.iteration_cap) {
      stats.intervals_checked = checked;
      stats.truncated = true;
      return Verdict::unknown(stats);
    }
    const Ticks interval = events.peek();
    while (!events.empty() && events.peek() == interval) {
      if (__builtin_add_overflow(demand, ts[events.pop()].wcet, &demand)) {
        throw OverflowError("processor demand exceeds 64-bit range");
      }
    }
    ++checked;
    if (demand > interval) {
      stats.intervals_checked = checked;
      return Verdict::infeasible(interval, stats);
    }
  }
  // Nothing below the horizon: the utilization check alone decided.
  stats.intervals_checked = std::max<std::uint64_t>(checked, 1);
  return Verdict::feasible(stats);
}

std::vector<Ticks> deadline_events(const TaskSet& ts, const Rational& horizon) {
  const Ticks limit = detail::exclusive_limit(horizon);
  std::vector<Ticks> out;
  DeadlineMerge events(ts, limit);
  while (!events.empty()) {
    const Ticks interval = events.peek();
    while (!events.empty() && events.peek() == interval) events.pop();
    out.push_back(interval);
  }
  return out;
}

}  // namespace edfkit::analysis
