#include "edfkit/suite.hpp"

#include <array>
#include <numeric>

#include "edfkit/analysis.hpp"
#include "edfkit/errors.hpp"
#include "edfkit/oracle.hpp"

namespace edfkit::suite {

namespace {

constexpr std::array kAll = {
    Algorithm::LiuLayland, Algorithm::Devi,      Algorithm::SuperPos,   Algorithm::ProcessorDemand,
    Algorithm::Dynamic,    Algorithm::AllApprox, Algorithm::OracleScan, Algorithm::OracleSim,
};

bool analytic_exact(Algorithm a) {
  return a == Algorithm::ProcessorDemand || a == Algorithm::Dynamic || a == Algorithm::AllApprox;
}

/// hyperperiod + D_max, or nullopt on overflow.
std::optional<Ticks> oracle_span(const TaskSet& ts) {
  try {
    Ticks h = hyperperiod(ts);
    Ticks end = 0;
    if (__builtin_add_overflow(h, ts.max_deadline(), &end)) return std::nullopt;
    return end;
  } catch (const OverflowError&) {
    return std::nullopt;
  }
}

std::string witness_text(const Verdict& v) {
  return v.witness ? std::to_string(*v.witness) : std::string("none");
}

}  // namespace

std::string_view name(Algorithm a) {
  switch (a) {
    case Algorithm::LiuLayland: return "ll";
    case Algorithm::Devi: return "devi";
    case Algorithm::SuperPos: return "superpos1";
    case Algorithm::ProcessorDemand: return "pd";
    case Algorithm::Dynamic: return "dynamic";
    case Algorithm::AllApprox: return "allapprox";
    case Algorithm::OracleScan: return "oracle-scan";
    case Algorithm::OracleSim: return "oracle-sim";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view text) {
  if (text == "superpos") return Algorithm::SuperPos;
  for (Algorithm a : kAll) {
    if (name(a) == text) return a;
  }
  return std::nullopt;
}

bool is_exact(Algorithm a) { return analytic_exact(a) || is_oracle(a); }

bool is_oracle(Algorithm a) { return a == Algorithm::OracleScan || a == Algorithm::OracleSim; }

std::span<const Algorithm> all_algorithms() { return kAll; }

Verdict run(Algorithm a, const TaskSet& ts, const RunOptions& options) {
  switch (a) {
    case Algorithm::LiuLayland: return analysis::liu_layland(ts);
    case Algorithm::Devi: return analysis::devi(ts);
    case Algorithm::SuperPos:
      return analysis::superpos(ts, options.level, {.verify_ledger = options.verify_ledger});
    case Algorithm::ProcessorDemand:
      return analysis::processor_demand(ts, {.iteration_cap = options.pd_iteration_cap});
    case Algorithm::Dynamic:
      return analysis::dynamic_error(
          ts, {.level_cap = options.level_cap, .verify_ledger = options.verify_ledger});
    case Algorithm::AllApprox:
      return analysis::all_approximated(ts, {.verify_ledger = options.verify_ledger});
    case Algorithm::OracleScan: return oracle::dbf_scan(ts);
    case Algorithm::OracleSim: return oracle::edf_sim(ts);
  }
  throw PreconditionError("unknown algorithm");
}

ConsistencyReport check_all(const TaskSet& ts, const CheckAllOptions& options) {
  ConsistencyReport report;
  const std::optional<Ticks> span = oracle_span(ts);
  const bool overloaded = ts.utilization() > Rational(1);

  RunOptions run_options;
  run_options.verify_ledger = options.verify_ledger;

  for (Algorithm a : kAll) {
    CheckRow row{a, std::nullopt, {}};
    if (a == Algorithm::LiuLayland && !ts.implicit_deadlines()) {
      row.skipped = "deadline != period";
    } else if (is_oracle(a) && !overloaded && (!span || *span > options.oracle_limit)) {
      row.skipped = "hyperperiod too large";
    } else {
      try {
        row.verdict = run(a, ts, run_options);
      } catch (const Error& e) {
        row.skipped = e.what();
      } catch (const std::logic_error& e) {
        report.problems.push_back(std::string(name(a)) + ": internal check failed: " + e.what());
      }
    }
    report.rows.push_back(std::move(row));
  }

  const Verdict* reference = nullptr;
  Algorithm reference_alg = Algorithm::ProcessorDemand;
  for (const CheckRow& row : report.rows) {
    if (!row.verdict || !is_exact(row.algorithm) || row.verdict->stats.truncated) continue;
    if (!reference) {
      reference = &*row.verdict;
      reference_alg = row.algorithm;
      report.exact_outcome = reference->outcome;
      continue;
    }
    if (row.verdict->outcome != reference->outcome) {
      report.problems.push_back(std::string(name(row.algorithm)) + " says " +
                                std::string(to_string(row.verdict->outcome)) + " but " +
                                std::string(name(reference_alg)) + " says " +
                                std::string(to_string(reference->outcome)));
    }
  }

  // Witnesses: analytic exact tests and the dbf scan report the first
  // violating deadline; the simulation may miss earlier, never later.
  std::optional<Ticks> witness;
  for (const CheckRow& row : report.rows) {
    if (!row.verdict || row.verdict->outcome != Outcome::Infeasible) continue;
    if (!(analytic_exact(row.algorithm) || row.algorithm == Algorithm::OracleScan)) continue;
    if (!witness) {
      witness = row.verdict->witness;
      if (!witness) witness = -1;  // U > 1, no interval
    } else if (row.verdict->witness.value_or(-1) != *witness) {
      report.problems.push_back(std::string(name(row.algorithm)) + " witness " +
                                witness_text(*row.verdict) + " differs from " +
                                std::to_string(*witness));
    }
  }
  for (const CheckRow& row : report.rows) {
    if (row.algorithm != Algorithm::OracleSim || !row.verdict || !witness || *witness < 0) continue;
    if (row.verdict->witness && *row.verdict->witness > *witness) {
      report.problems.push_back("oracle-sim miss at " + witness_text(*row.verdict) +
                                " is later than the demand witness " + std::to_string(*witness));
    }
  }

  if (report.exact_outcome) {
    for (const CheckRow& row : report.rows) {
      if (!row.verdict || is_exact(row.algorithm)) continue;
      const Outcome o = row.verdict->outcome;
      if (o == Outcome::Feasible && *report.exact_outcome != Outcome::Feasible) {
        report.problems.push_back(std::string(name(row.algorithm)) +
                                  " accepts a set the exact tests reject");
      }
      if (o == Outcome::Infeasible && *report.exact_outcome != Outcome::Infeasible) {
        report.problems.push_back(std::string(name(row.algorithm)) +
                                  " rejects a set the exact tests accept");
      }
    }
  }
  return report;
}

}  // namespace edfkit::suite
