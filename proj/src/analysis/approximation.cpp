#include <algorithm>
#include <limits>
#include <stdexcept>

#include "edfkit/analysis.hpp"
#include "edfkit/demand.hpp"
#include "edfkit/errors.hpp"
#include "ledger.hpp"

namespace edfkit::analysis {

namespace {

using detail::DemandLedger;
using detail::EventQueue;

constexpr std::int64_t kMaxLevel = std::int64_t{1} << 62;

/// Mirrors the queue contents so the running demand can be compared with a
/// direct dbf evaluation over the tasks popped so far.
class LedgerCheck {
 public:
  LedgerCheck(const TaskSet& ts, bool enabled)
      : ts_(ts), enabled_(enabled), seen_(ts.size()), pending_(ts.size(), -1) {}

  void pushed(std::size_t i, Ticks interval) {
    if (enabled_) pending_[i] = interval;
  }
  void popped(std::size_t i) {
    if (!enabled_) return;
    seen_[i] = true;
    pending_[i] = -1;
  }

  /// Call only while no task is approximated. Jobs whose deadline equals
  /// `interval` but are still queued are not yet part of the ledger.
  void check(const DemandLedger& ledger, Ticks interval) const {
    if (!enabled_) return;
    Ticks exact = 0;
    for (std::size_t i = 0; i < ts_.size(); ++i) {
      if (!seen_[i]) continue;
      exact += demand::dbf_task_ticks(interval, ts_[i]);
      if (pending_[i] == interval) exact -= ts_[i].wcet;
    }
    if (ledger.demand() != Rational(exact)) {
      throw std::logic_error("demand ledger drifted at interval " + std::to_string(interval) +
                             ": " + ledger.demand().to_string() + " vs dbf " +
                             std::to_string(exact));
    }
  }

 private:
  const TaskSet& ts_;
  bool enabled_;
  std::vector<bool> seen_;
  std::vector<Ticks> pending_;
};

enum class LevelPolicy { Fixed, Doubling };

struct LevelledRun {
  LevelPolicy policy = LevelPolicy::Doubling;
  std::int64_t start_level = 1;
  std::optional<std::int64_t> level_cap;
  bool verify_ledger = false;
};

IterationStats precheck_stats() {
  IterationStats stats;
  stats.intervals_checked = 1;
  return stats;
}

Verdict run_levelled(const TaskSet& ts, const LevelledRun& run) {
  if (ts.utilization() > Rational(1)) {
    return Verdict::overloaded(precheck_stats());
  }
  const demand::Horizon horizon = demand::test_horizon(ts);
  const Ticks limit = detail::exclusive_limit(*horizon.value);

  IterationStats stats;
  stats.horizon_used = horizon.value;
  std::int64_t level = run.start_level;
  stats.level_reached = level;

  DemandLedger ledger(ts);
  LedgerCheck check(ts, run.verify_ledger);
  EventQueue queue;
  auto push = [&](std::size_t i, Ticks interval) {
    queue.push({i, interval});
    check.pushed(i, interval);
  };
  for (std::size_t i = 0; i < ts.size(); ++i) push(i, ts[i].deadline);
  std::vector<std::size_t> approximated;
  Ticks previous = 0;

  auto finish = [&](Verdict v) {
    v.stats.intervals_checked = std::max<std::uint64_t>(v.stats.intervals_checked, 1);
    return v;
  };

  while (!queue.empty() && queue.top().interval < limit) {
    const TestEvent event = queue.top();
    queue.pop();
    ++stats.intervals_checked;
    check.popped(event.task_index);
    const Ticks now = event.interval;
    ledger.advance(now - previous);
    ledger.add_job(event.task_index);
    previous = now;

    while (ledger.exceeds(now)) {
      if (approximated.empty()) {
        check.check(ledger, now);
        if (run.policy == LevelPolicy::Fixed) return finish(Verdict::unknown(stats));
        return finish(Verdict::infeasible(now, stats));
      }
      if (run.policy == LevelPolicy::Fixed) return finish(Verdict::unknown(stats));
      if (run.level_cap && level >= *run.level_cap) return finish(Verdict::unknown(stats));

      level = std::min(level * 2, kMaxLevel);
      if (run.level_cap) level = std::min(level, *run.level_cap);
      stats.level_reached = level;

      // Tasks that still own exact deadlines under the new level go back to
      // exact accounting; the others stay approximated.
      auto keep = std::stable_partition(approximated.begin(), approximated.end(), [&](std::size_t i) {
        return demand::next_int(now, ts[i]) > detail::saturating_im_level(ts[i], level);
      });
      for (auto it = keep; it != approximated.end(); ++it) {
        ledger.withdraw(*it, now);
        push(*it, demand::next_int(now, ts[*it]));
        ++stats.revisions;
      }
      approximated.erase(keep, approximated.end());
    }

    const Task& task = ts[event.task_index];
    if (now < detail::saturating_im_level(task, level)) {
      push(event.task_index, demand::next_int(now, task));
    } else {
      ledger.approximate(event.task_index);
      approximated.push_back(event.task_index);
    }

    if (approximated.empty()) check.check(ledger, now);
  }
  return finish(Verdict::feasible(stats));
}

}  // namespace

Verdict superpos(const TaskSet& ts, std::int64_t level, const SuperposOptions& options) {
  if (level < 1) {
    throw PreconditionError("superposition level must be >= 1");
  }
  LevelledRun run;
  run.policy = LevelPolicy::Fixed;
  run.start_level = level;
  run.verify_ledger = options.verify_ledger;
  return run_levelled(ts, run);
}

Verdict dynamic_error(const TaskSet& ts, const DynamicOptions& options) {
  if (options.level_cap && *options.level_cap < 1) {
    throw PreconditionError("level cap must be >= 1");
  }
  LevelledRun run;
  run.policy = LevelPolicy::Doubling;
  run.level_cap = options.level_cap;
  run.verify_ledger = options.verify_ledger;
  return run_levelled(ts, run);
}

Verdict all_approximated(const TaskSet& ts, const AllApproxOptions& options) {
  const auto order = ts.utilization() <=> Rational(1);
  if (order > 0) {
    return Verdict::overloaded(precheck_stats());
  }

  IterationStats stats;
  // Withdrawals stop beyond the superposition bound only when U < 1. At
  // U = 1 the run is cut off past the hyperperiod horizon and the first
  // deadline of every task instead.
  std::optional<Ticks> limit;
  if (order == 0) {
    const demand::Horizon horizon = demand::test_horizon(ts);
    limit = std::max(detail::exclusive_limit(*horizon.value), ts.max_deadline() + 1);
    stats.horizon_used = horizon.value;
  }
  DemandLedger ledger(ts);
  LedgerCheck check(ts, options.verify_ledger);
  EventQueue queue;
  auto push = [&](std::size_t i, Ticks interval) {
    queue.push({i, interval});
    check.pushed(i, interval);
  };
  for (std::size_t i = 0; i < ts.size(); ++i) push(i, ts[i].deadline);
  std::vector<std::size_t> approximated;  // oldest first
  Ticks previous = 0;

  while (!queue.empty() && (!limit || queue.top().interval < *limit)) {
    const TestEvent event = queue.top();
    queue.pop();
    ++stats.intervals_checked;
    check.popped(event.task_index);
    const Ticks now = event.interval;
    ledger.advance(now - previous);
    ledger.add_job(event.task_index);
    previous = now;

    while (ledger.exceeds(now)) {
      if (approximated.empty()) {
        check.check(ledger, now);
        return Verdict::infeasible(now, stats);
      }
      auto victim = approximated.begin();
      if (options.withdrawal == Withdrawal::LargestCost) {
        mpz_class best = ledger.scaled_cost(*victim, now);
        for (auto it = std::next(victim); it != approximated.end(); ++it) {
          mpz_class cost = ledger.scaled_cost(*it, now);
          if (cost > best) {
            best = std::move(cost);
            victim = it;
          }
        }
      }
      const std::size_t i = *victim;
      approximated.erase(victim);
      ledger.withdraw(i, now);
      push(i, demand::next_int(now, ts[i]));
      ++stats.revisions;
    }

    ledger.approximate(event.task_index);
    approximated.push_back(event.task_index);
  }
  stats.intervals_checked = std::max<std::uint64_t>(stats.intervals_checked, 1);
  return Verdict::feasible(stats);
}

}  // namespace edfkit::analysis
