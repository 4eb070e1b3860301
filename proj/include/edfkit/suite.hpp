#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edfkit/model.hpp"
#include "edfkit/verdict.hpp"

namespace edfkit::suite {

enum class Algorithm {
  LiuLayland,
  Devi,
  SuperPos,
  ProcessorDemand,
  Dynamic,
  AllApprox,
  OracleScan,
  OracleSim,
};

/// Command-line / CSV name: ll, devi, superpos1, pd, dynamic, allapprox,
/// oracle-scan, oracle-sim.
std::string_view name(Algorithm a);

/// Accepts every name() plus the alias "superpos".
std::optional<Algorithm> parse_algorithm(std::string_view text);

bool is_exact(Algorithm a);
bool is_oracle(Algorithm a);

std::span<const Algorithm> all_algorithms();

struct RunOptions {
  std::int64_t level = 1;                    // SuperPos level
  std::optional<std::int64_t> level_cap;     // Dynamic only
  std::optional<std::uint64_t> pd_iteration_cap;
  bool verify_ledger = false;
};

Verdict run(Algorithm a, const TaskSet& ts, const RunOptions& options = {});

struct CheckAllOptions {
  /// Oracles are skipped when hyperperiod + D_max exceeds this.
  Ticks oracle_limit = 20'000'000;
  bool verify_ledger = true;
};

struct CheckRow {
  Algorithm algorithm;
  std::optional<Verdict> verdict;
  std::string skipped;  // reason, when verdict is empty
};

struct ConsistencyReport {
  std::vector<CheckRow> rows;
  std::vector<std::string> problems;

  bool consistent() const { return problems.empty(); }
  /// Outcome agreed on by the exact tests that ran.
  std::optional<Outcome> exact_outcome;
};

/// Run every applicable test and cross-check: exact tests and oracles agree
/// on the outcome, analytic exact tests and the dbf scan agree on the
/// witness, the simulated miss is no later than that witness, and no
/// sufficient test accepts a set the exact tests reject.
ConsistencyReport check_all(const TaskSet& ts, const CheckAllOptions& options = {});

}  // namespace edfkit::suite
