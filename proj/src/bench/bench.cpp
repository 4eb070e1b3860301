#include "edfkit/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include "edfkit/errors.hpp"

namespace edfkit::bench {

const char* const kCsvHeader =
    "experiment,param,algorithm,sets,avg_iterations,max_iterations,accept_rate,infeasible_rate,"
    "excluded";

namespace {

constexpr Ticks kOracleSpanLimit = 10'000'000;

struct Measurement {
  Outcome outcome = Outcome::Unknown;
  std::uint64_t iterations = 0;
  bool excluded = false;
};

Measurement measure(suite::Algorithm a, const TaskSet& ts, const BenchOptions& options) {
  Measurement m;
  if (suite::is_oracle(a)) {
    try {
      const Ticks h = hyperperiod(ts);
      if (h > kOracleSpanLimit - ts.max_deadline()) {
        m.excluded = true;
        return m;
      }
    } catch (const OverflowError&) {
      m.excluded = true;
      return m;
    }
  }
  suite::RunOptions run;
  run.pd_iteration_cap = options.pd_iteration_cap;
  try {
    const Verdict v = suite::run(a, ts, run);
    m.outcome = v.outcome;
    m.iterations = v.stats.intervals_checked;
    m.excluded = v.stats.truncated;
  } catch (const Error&) {
    m.excluded = true;
  }
  return m;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

generator::GenParams base_params(std::uint64_t seed) {
  generator::GenParams p;
  p.n_min = 5;
  p.n_max = 100;
  p.seed = seed;
  return p;
}

}  // namespace

std::vector<suite::Algorithm> bench_algorithms(bool with_oracles) {
  using suite::Algorithm;
  std::vector<Algorithm> out = {Algorithm::Devi, Algorithm::SuperPos, Algorithm::ProcessorDemand,
                                Algorithm::Dynamic, Algorithm::AllApprox};
  if (with_oracles) {
    out.push_back(Algorithm::OracleScan);
    out.push_back(Algorithm::OracleSim);
  }
  return out;
}

std::vector<Cell> utilization_cells(std::uint64_t seed) {
  std::vector<Cell> cells;
  for (const auto& [label, gap] : {std::pair{"0.2", 0.2}, std::pair{"0.3", 0.3}, std::pair{"0.4", 0.4}}) {
    generator::GenParams p = base_params(seed);
    p.u_min = 0.90;
    p.u_max = 0.99;
    p.gap_avg = gap;
    p.t_min = 10;
    p.t_max = 1000000;
    p.periods = generator::PeriodDistribution::Uniform;
    cells.push_back({label, p});
  }
  return cells;
}

std::vector<Cell> period_ratio_cells(std::uint64_t seed) {
  std::vector<Cell> cells;
  Ticks ratio = 100;
  for (int k = 2; k <= 6; ++k, ratio *= 10) {
    generator::GenParams p = base_params(seed);
    p.u_min = 0.90;
    p.u_max = 1.00;
    p.gap_avg = 0.1;
    p.gap_avg_max = 0.5;
    p.t_min = 1000;
    p.t_max = p.t_min * ratio;
    p.periods = generator::PeriodDistribution::LogUniform;
    cells.push_back({std::to_string(ratio), p});
  }
  return cells;
}

std::vector<ExperimentRow> run_cells(const std::string& experiment, const std::vector<Cell>& cells,
                                     const BenchOptions& options) {
  if (options.sets_per_cell < 1) throw PreconditionError("sets_per_cell must be >= 1");
  for (const Cell& c : cells) generator::validate(c.params);

  const std::vector<suite::Algorithm> algorithms = bench_algorithms(options.with_oracles);
  const std::size_t per_cell = options.sets_per_cell;
  const std::size_t total = cells.size() * per_cell;
  std::vector<Measurement> results(total * algorithms.size());

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr failure;
  auto worker = [&] {
    while (true) {
      const std::size_t job = next.fetch_add(1);
      if (job >= total) return;
      try {
        const Cell& cell = cells[job / per_cell];
        const TaskSet ts = generator::gen_taskset(cell.params, job % per_cell);
        for (std::size_t a = 0; a < algorithms.size(); ++a) {
          results[job * algorithms.size() + a] = measure(algorithms[a], ts, options);
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!failure) failure = std::current_exception();
        next.store(total);
      }
    }
  };

  unsigned jobs = options.jobs ? options.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, total));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<ExperimentRow> rows;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
      ExperimentRow row;
      row.experiment = experiment;
      row.param = cells[c].param;
      row.algorithm = std::string(suite::name(algorithms[a]));
      std::uint64_t sum = 0;
      std::uint64_t feasible = 0;
      std::uint64_t infeasible = 0;
      for (std::size_t s = 0; s < per_cell; ++s) {
        const Measurement& m = results[(c * per_cell + s) * algorithms.size() + a];
        if (options.log) {
          *options.log << experiment << ',' << cells[c].param << ',' << s << ',' << row.algorithm
                       << ',' << to_string(m.outcome) << ',' << m.iterations << ','
                       << (m.excluded ? 1 : 0) << '\n';
        }
        if (m.excluded) {
          ++row.excluded;
          continue;
        }
        ++row.sets;
        sum += m.iterations;
        row.max_iterations = std::max(row.max_iterations, m.iterations);
        feasible += m.outcome == Outcome::Feasible;
        infeasible += m.outcome == Outcome::Infeasible;
      }
      if (row.sets) {
        const auto n = static_cast<double>(row.sets);
        row.avg_iterations = static_cast<double>(sum) / n;
        row.accept_rate = static_cast<double>(feasible) / n;
        row.infeasible_rate = static_cast<double>(infeasible) / n;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<ExperimentRow> run_experiment_utilization(const BenchOptions& options) {
  return run_cells("utilization", utilization_cells(options.seed), options);
}

std::vector<ExperimentRow> run_experiment_period_ratio(const BenchOptions& options) {
  return run_cells("period-ratio", period_ratio_cells(options.seed), options);
}

void emit_csv(const std::vector<ExperimentRow>& rows, std::ostream& out) {
  if (rows.empty()) throw PreconditionError("no experiment rows to write");
  out << kCsvHeader << '\n';
  for (const ExperimentRow& r : rows) {
    out << r.experiment << ',' << r.param << ',' << r.algorithm << ',' << r.sets << ','
        << fixed6(r.avg_iterations) << ',' << r.max_iterations << ',' << fixed6(r.accept_rate)
        << ',' << fixed6(r.infeasible_rate) << ',' << r.excluded << '\n';
  }
}

void emit_csv(const std::vector<ExperimentRow>& rows, const std::string& path) {
  if (rows.empty()) throw PreconditionError("no experiment rows to write");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  emit_csv(rows, out);
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace edfkit::bench
