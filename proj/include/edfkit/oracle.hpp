#pragma once

#include <cstddef>
#include <optional>

#include "edfkit/model.hpp"
#include "edfkit/verdict.hpp"

// Brute-force feasibility oracles for small task sets. They share no code
// with the analytic tests: utilization, hyperperiod, deadline enumeration and
// demand are all recomputed here from the raw task parameters.

namespace edfkit::oracle {

struct Miss {
  Ticks time = 0;  // absolute deadline of the job that missed
  std::size_t task_index = 0;

  friend bool operator==(const Miss&, const Miss&) = default;
};

struct SimTrace {
  std::optional<Miss> first_miss;
  Ticks horizon = 0;  // simulated window [0, horizon]
};

/// Check dbf(I) <= I at every synchronous deadline I <= hyperperiod + D_max.
/// Throws OverflowError when the hyperperiod does not fit in 64 bits.
Verdict dbf_scan(const TaskSet& ts);

/// Preemptive EDF schedule of the synchronous periodic release pattern over
/// [0, hyperperiod + D_max]. Ties on absolute deadline go to the earlier
/// release, then to the lower task index.
SimTrace simulate_edf(const TaskSet& ts);

/// Verdict form of simulate_edf; the witness is the first miss time.
Verdict edf_sim(const TaskSet& ts);

}  // namespace edfkit::oracle
