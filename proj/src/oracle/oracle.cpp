#include "edfkit/oracle.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <queue>
#include <vector>

#include "edfkit/errors.hpp"

namespace edfkit::oracle {

namespace {

__extension__ typedef __int128 Wide;

[[noreturn]] void overflow(const char* what) { throw OverflowError(std::string("oracle: ") + what); }

Wide gcd_wide(Wide a, Wide b) {
  if (a < 0) a = -a;
  while (b != 0) {
    const Wide r = a % b;
    a = b;
    b = r;
  }
  return a;
}

/// sum C_i / T_i > 1, with a 128-bit running fraction.
bool overloaded(const TaskSet& ts) {
  constexpr Wide kLimit = Wide{1} << 120;
  Wide num = 0;
  Wide den = 1;
  for (const Task& t : ts) {
    num = num * t.period + Wide{t.wcet} * den;
    den = den * t.period;
    const Wide g = gcd_wide(num, den);
    num /= g;
    den /= g;
    if (num > kLimit || den > kLimit) overflow("utilization fraction too large");
  }
  return num > den;
}

Ticks lcm_of_periods(const TaskSet& ts) {
  Ticks h = 1;
  for (const Task& t : ts) {
    Ticks a = h;
    Ticks b = t.period;
    while (b != 0) {
      const Ticks r = a % b;
      a = b;
      b = r;
    }
    Ticks next = 0;
    if (__builtin_mul_overflow(h / a, t.period, &next)) overflow("hyperperiod exceeds 64 bits");
    h = next;
  }
  return h;
}

Ticks scan_horizon(const TaskSet& ts) {
  const Ticks h = lcm_of_periods(ts);
  Ticks dmax = 0;
  for (const Task& t : ts) dmax = std::max(dmax, t.deadline);
  Ticks end = 0;
  if (__builtin_add_overflow(h, dmax, &end)) overflow("simulation horizon exceeds 64 bits");
  return end;
}

IterationStats counted(std::uint64_t n) {
  IterationStats s;
  s.intervals_checked = std::max<std::uint64_t>(n, 1);
  return s;
}

}  // namespace

Verdict dbf_scan(const TaskSet& ts) {
  if (overloaded(ts)) return Verdict::overloaded(counted(1));
  const Ticks end = scan_horizon(ts);

  using Entry = std::pair<Ticks, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> deadlines;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts[i].deadline <= end) deadlines.emplace(ts[i].deadline, i);
  }

  std::uint64_t checked = 0;
  while (!deadlines.empty()) {
    const Ticks at = deadlines.top().first;
    while (!deadlines.empty() && deadlines.top().first == at) {
      const std::size_t i = deadlines.top().second;
      deadlines.pop();
      if (at <= end - ts[i].period) deadlines.emplace(at + ts[i].period, i);
    }
    // Demand straight from the closed form, recomputed for every task.
    Wide demand = 0;
    for (const Task& t : ts) {
      if (at >= t.deadline) demand += Wide{(at - t.deadline) / t.period + 1} * t.wcet;
    }
    ++checked;
    if (demand > at) return Verdict::infeasible(at, counted(checked));
  }
  return Verdict::feasible(counted(checked));
}

SimTrace simulate_edf(const TaskSet& ts) {
  struct Job {
    Ticks release;
    Ticks deadline;
    Ticks remaining;
  };
  const Ticks end = scan_horizon(ts);
  const std::size_t n = ts.size();
  std::vector<std::deque<Job>> pending(n);
  std::vector<Ticks> next_release(n, 0);

  SimTrace trace;
  trace.horizon = end;
  Ticks now = 0;
  while (true) {
    for (std::size_t i = 0; i < n; ++i) {
      while (next_release[i] <= now && next_release[i] <= end) {
        pending[i].push_back({next_release[i], next_release[i] + ts[i].deadline, ts[i].wcet});
        next_release[i] += ts[i].period;
      }
    }

    // Any unfinished job whose deadline has passed is a miss.
    for (std::size_t i = 0; i < n; ++i) {
      if (!pending[i].empty() && pending[i].front().deadline <= now) {
        const Miss miss{pending[i].front().deadline, i};
        if (!trace.first_miss || miss.time < trace.first_miss->time) trace.first_miss = miss;
      }
    }
    if (trace.first_miss || now >= end) return trace;

    std::optional<std::size_t> run;
    for (std::size_t i = 0; i < n; ++i) {
      if (pending[i].empty()) continue;
      if (!run) {
        run = i;
        continue;
      }
      const Job& a = pending[i].front();
      const Job& b = pending[*run].front();
      if (a.deadline < b.deadline || (a.deadline == b.deadline && a.release < b.release)) run = i;
    }

    Ticks arrival = end;
    for (std::size_t i = 0; i < n; ++i) {
      if (next_release[i] <= end) arrival = std::min(arrival, next_release[i]);
    }

    if (!run) {
      now = arrival;
      continue;
    }
    Job& job = pending[*run].front();
    const Ticks until = std::min({now + job.remaining, arrival, job.deadline});
    job.remaining -= until - now;
    now = until;
    if (job.remaining == 0) pending[*run].pop_front();
  }
}

Verdict edf_sim(const TaskSet& ts) {
  if (overloaded(ts)) return Verdict::overloaded(counted(1));
  const SimTrace trace = simulate_edf(ts);
  if (trace.first_miss) return Verdict::infeasible(trace.first_miss->time, counted(1));
  return Verdict::feasible(counted(1));
}

}  // namespace edfkit::oracle
