#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "edfkit/generator.hpp"
#include "edfkit/suite.hpp"

namespace edfkit::bench {

struct ExperimentRow {
  std::string experiment;
  std::string param;
  std::string algorithm;
  std::uint64_t sets = 0;  // sets aggregated (excluded ones not counted)
  double avg_iterations = 0.0;
  std::uint64_t max_iterations = 0;
  double accept_rate = 0.0;
  double infeasible_rate = 0.0;
  std::uint64_t excluded = 0;  // errors, unavailable horizons, capped runs
};

/// One sweep value together with the generator family producing its sets.
struct Cell {
  std::string param;
  generator::GenParams params;
};

struct BenchOptions {
  std::uint64_t sets_per_cell = 1;
  std::uint64_t seed = 1;
  unsigned jobs = 0;  // 0 = hardware concurrency
  std::optional<std::uint64_t> pd_iteration_cap;
  bool with_oracles = false;
  /// Per-set log: experiment,param,index,algorithm,outcome,iterations,excluded
  std::ostream* log = nullptr;
};

/// Algorithms measured by default: devi, superpos1, pd, dynamic, allapprox.
std::vector<suite::Algorithm> bench_algorithms(bool with_oracles);

/// Gap cells 0.2, 0.3, 0.4; n in [5, 100]; U in [0.90, 0.99]; T uniform on
/// [10, 10^6].
std::vector<Cell> utilization_cells(std::uint64_t seed);
/// T_max / T_min in {1e2 .. 1e6}; n in [5, 100]; mean gap in [0.1, 0.5];
/// U in [0.90, 1.00).
std::vector<Cell> period_ratio_cells(std::uint64_t seed);

/// Generate `sets_per_cell` sets per cell, run every algorithm on each and
/// aggregate per (cell, algorithm) in that order. Output is independent of
/// the worker count.
std::vector<ExperimentRow> run_cells(const std::string& experiment, const std::vector<Cell>& cells,
                                     const BenchOptions& options);

std::vector<ExperimentRow> run_experiment_utilization(const BenchOptions& options);
std::vector<ExperimentRow> run_experiment_period_ratio(const BenchOptions& options);

/// Header plus one line per row. Throws PreconditionError for empty input.
void emit_csv(const std::vector<ExperimentRow>& rows, std::ostream& out);
/// Writes to `path`; no file is created for empty input. Throws IoError.
void emit_csv(const std::vector<ExperimentRow>& rows, const std::string& path);

extern const char* const kCsvHeader;

}  // namespace edfkit::bench
