#include <algorithm>
#include <numeric>

#include "edfkit/analysis.hpp"
#include "edfkit/errors.hpp"

namespace edfkit {

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Feasible: return "feasible";
    case Outcome::Infeasible: return "infeasible";
    case Outcome::Unknown: return "unknown";
  }
  return "unknown";
}

namespace analysis {

Verdict liu_layland(const TaskSet& ts) {
  if (!ts.implicit_deadlines()) {
    throw InapplicableTest("deadline != period: the Liu & Layland bound does not apply");
  }
  IterationStats stats;
  stats.intervals_checked = 1;
  if (ts.utilization() <= Rational(1)) {
    return Verdict::feasible(stats);
  }
  return Verdict::overloaded(stats);
}

Verdict devi(const TaskSet& ts) {
  std::vector<std::size_t> order(ts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ts[a].deadline < ts[b].deadline;
  });

  IterationStats stats;
  mpq_class utilization = 0;
  mpq_class slack = 0;  // sum of (T - min(T, D)) / T * C
  for (std::size_t i : order) {
    const Task& t = ts[i];
    mpq_class u(t.wcet, t.period);
    u.canonicalize();
    utilization += u;
    if (t.deadline < t.period) {
      mpq_class s(t.period - t.deadline, t.period);
      s.canonicalize();
      slack += s * t.wcet;
    }
    ++stats.intervals_checked;
    mpq_class lhs = slack / t.deadline;
    lhs += utilization;
    if (lhs > 1) {
      return Verdict::unknown(stats);
    }
  }
  return Verdict::feasible(stats);
}

}  // namespace analysis
}  // namespace edfkit
