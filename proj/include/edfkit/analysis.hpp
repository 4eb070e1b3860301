#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "edfkit/model.hpp"
#include "edfkit/rational.hpp"
#include "edfkit/verdict.hpp"

// Uniprocessor EDF feasibility tests for synchronous sporadic task sets.
//
// Every test returns a Verdict together with the number of test intervals it
// examined. Sufficient tests (Devi, SuperPos) answer Feasible or Unknown;
// exact tests (processor demand, dynamic error, all approximated) answer
// Feasible or Infeasible and agree on the witness interval.

namespace edfkit::analysis {

/// Entry of the event queue driving the approximation-based tests.
struct TestEvent {
  std::size_t task_index = 0;
  Ticks interval = 0;  // a synchronous deadline k*T + D of that task
};

/// Order in which the all-approximated test gives up approximations.
enum class Withdrawal {
  Fifo,         // oldest approximation first
  LargestCost,  // largest current overestimate first
};

/// Liu & Layland bound; only defined when every D equals T
/// (throws InapplicableTest otherwise).
Verdict liu_layland(const TaskSet& ts);

/// Devi's sufficient test over tasks ordered by nondecreasing deadline.
Verdict devi(const TaskSet& ts);

struct SuperposOptions {
  bool verify_ledger = false;
};

/// Superposition test at a fixed level: the first `level` jobs of every task
/// are examined exactly, the rest through the utilization slope.
Verdict superpos(const TaskSet& ts, std::int64_t level, const SuperposOptions& options = {});

struct DemandOptions {
  /// Give up (Unknown, stats.truncated) after this many intervals.
  std::optional<std::uint64_t> iteration_cap;
};

/// Exact processor demand test over every deadline below test_horizon.
Verdict processor_demand(const TaskSet& ts, const DemandOptions& options = {});

struct DynamicOptions {
  /// Highest approximation level allowed; reaching it yields Unknown.
  std::optional<std::int64_t> level_cap;
  /// Cross-check the running demand against a direct dbf evaluation
  /// whenever no task is approximated (throws std::logic_error on mismatch).
  bool verify_ledger = false;
};

/// Dynamic error test: starts at level 1 and doubles the level whenever the
/// approximation exceeds the capacity. Exact without a level cap.
Verdict dynamic_error(const TaskSet& ts, const DynamicOptions& options = {});

struct AllApproxOptions {
  Withdrawal withdrawal = Withdrawal::Fifo;
  bool verify_ledger = false;
};

/// All approximated test: every task is approximated right after each
/// examined deadline and approximations are withdrawn one at a time only
/// when the demand exceeds the capacity. Exact. At U = 1 the run stops once
/// both the hyperperiod horizon and every first deadline are passed.
Verdict all_approximated(const TaskSet& ts, const AllApproxOptions& options = {});

/// Distinct synchronous deadlines strictly below `horizon`, ascending.
std::vector<Ticks> deadline_events(const TaskSet& ts, const Rational& horizon);

}  // namespace edfkit::analysis
