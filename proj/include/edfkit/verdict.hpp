#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "edfkit/model.hpp"
#include "edfkit/rational.hpp"

namespace edfkit {

enum class Outcome { Feasible, Infeasible, Unknown };

std::string_view to_string(Outcome outcome);

/// Work counters; intervals_checked is the comparison metric between tests.
struct IterationStats {
  std::uint64_t intervals_checked = 0;
  std::int64_t level_reached = 1;
  std::uint64_t revisions = 0;  // approximations withdrawn
  std::optional<Rational> horizon_used;
  bool truncated = false;  // stopped by an iteration cap, outcome is Unknown

  friend bool operator==(const IterationStats&, const IterationStats&) = default;
};

struct Verdict {
  Outcome outcome = Outcome::Unknown;
  std::optional<Ticks> witness;  // first interval with demand > capacity
  IterationStats stats;

  static Verdict feasible(IterationStats stats) { return {Outcome::Feasible, std::nullopt, std::move(stats)}; }
  static Verdict infeasible(Ticks witness, IterationStats stats) {
    return {Outcome::Infeasible, witness, std::move(stats)};
  }
  /// Infeasible without a specific interval (U > 1).
  static Verdict overloaded(IterationStats stats) {
    return {Outcome::Infeasible, std::nullopt, std::move(stats)};
  }
  static Verdict unknown(IterationStats stats) { return {Outcome::Unknown, std::nullopt, std::move(stats)}; }

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

}  // namespace edfkit
