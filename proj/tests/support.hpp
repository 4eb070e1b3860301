#pragma once

#include <cstdint>
#include <vector>

#include "edfkit/generator.hpp"
#include "edfkit/model.hpp"

namespace edfkit::testing {

inline TaskSet gamma_a() { return TaskSet({{1, 2, 4}, {2, 4, 6}}, "gamma_a"); }
inline TaskSet gamma_b() { return TaskSet({{1, 1, 2}, {2, 2, 5}}, "gamma_b"); }

struct SmallSetShape {
  int n_max = 6;
  Ticks t_max = 30;
  double u_min = 0.5;
  double u_max = 1.0;
  bool allow_late_deadlines = true;  // D > T
};

/// Random small set: n <= n_max, periods <= t_max, realized utilization in
/// [u_min, u_max]. Draws until the utilization lands in the window.
inline TaskSet random_small_set(generator::Xoshiro256& rng, const SmallSetShape& shape = {}) {
  while (true) {
    const auto n = rng.uniform_int(1, shape.n_max);
    std::vector<Task> tasks;
    Rational u(0);
    for (std::int64_t i = 0; i < n; ++i) {
      Task t;
      t.period = rng.uniform_int(1, shape.t_max);
      t.wcet = rng.uniform_int(1, std::max<Ticks>(1, t.period / std::max<std::int64_t>(1, n - 1)));
      t.wcet = std::min(t.wcet, t.period);
      const Ticks d_hi = shape.allow_late_deadlines ? t.period + t.period / 2 : t.period;
      t.deadline = rng.uniform_int(t.wcet, std::max(t.wcet, d_hi));
      tasks.push_back(t);
      u += t.utilization();
    }
    if (u >= Rational::from_double(shape.u_min) && u <= Rational::from_double(shape.u_max)) {
      return TaskSet(std::move(tasks));
    }
  }
}

}  // namespace edfkit::testing
