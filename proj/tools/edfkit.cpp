// edfkit: command-line front end for the EDF feasibility toolkit.
//
// Exit codes: 0 feasible, 1 infeasible, 2 unknown, 64 usage error,
// 65 input/parse error, 70 internal limit (overflow, no horizon, or an
// inconsistency in `check --test all`), 74 I/O error.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "edfkit/bench.hpp"
#include "edfkit/errors.hpp"
#include "edfkit/generator.hpp"
#include "edfkit/model.hpp"
#include "edfkit/suite.hpp"

namespace {

using namespace edfkit;

enum Exit : int {
  kFeasible = 0,
  kInfeasible = 1,
  kUnknown = 2,
  kUsage = 64,
  kDataError = 65,
  kInternal = 70,
  kIoError = 74,
};

constexpr const char* kPrngDoc =
    "Random sets: set (seed, index) draws from xoshiro256** 1.0 whose state is four\n"
    "consecutive SplitMix64 outputs seeded with SplitMix64(seed).next() XOR\n"
    "(index * 0x9E3779B97F4A7C15). Uniform doubles take the top 53 bits; integers\n"
    "use rejection sampling. Per set: n ~ U{n_min..n_max}, target U ~ U[u_min,u_max),\n"
    "shares by UUniFast, T log-uniform (or uniform) on [t_min,t_max] rounded,\n"
    "C = max(1, round(u*T)), gap g ~ U[0, 2*gap), D = max(C, round(T*(1-g))).";

int exit_for(Outcome o) {
  switch (o) {
    case Outcome::Feasible: return kFeasible;
    case Outcome::Infeasible: return kInfeasible;
    case Outcome::Unknown: return kUnknown;
  }
  return kInternal;
}

struct CheckArgs {
  std::string file;
  std::string test = "all";
  std::optional<std::int64_t> level;
  std::optional<std::int64_t> level_cap;
  std::optional<std::uint64_t> pd_cap;
  bool stats = false;
  std::string format = "text";
};

nlohmann::ordered_json verdict_json(std::string_view test, const Verdict& v) {
  nlohmann::ordered_json j;
  j["test"] = test;
  j["verdict"] = to_string(v.outcome);
  j["witness"] = v.witness ? nlohmann::ordered_json(*v.witness) : nlohmann::ordered_json(nullptr);
  nlohmann::ordered_json s;
  s["intervals_checked"] = v.stats.intervals_checked;
  s["level_reached"] = v.stats.level_reached;
  s["revisions"] = v.stats.revisions;
  s["horizon_used"] = v.stats.horizon_used ? nlohmann::ordered_json(v.stats.horizon_used->to_string())
                                           : nlohmann::ordered_json(nullptr);
  s["truncated"] = v.stats.truncated;
  j["stats"] = s;
  return j;
}

std::string verdict_text(std::string_view test, const Verdict& v, bool with_stats) {
  std::ostringstream os;
  os << "test=" << test << " verdict=" << to_string(v.outcome);
  if (v.witness) os << " witness=" << *v.witness;
  if (with_stats) {
    os << "\nintervals_checked=" << v.stats.intervals_checked
       << " level_reached=" << v.stats.level_reached << " revisions=" << v.stats.revisions
       << " horizon_used=" << (v.stats.horizon_used ? v.stats.horizon_used->to_string() : "none");
    if (v.stats.truncated) os << " truncated=1";
  }
  return os.str();
}

int check_all(const TaskSet& ts, const CheckArgs& args) {
  const suite::ConsistencyReport report = suite::check_all(ts);
  if (args.format == "json") {
    nlohmann::ordered_json j;
    j["results"] = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
      if (row.verdict) {
        j["results"].push_back(verdict_json(suite::name(row.algorithm), *row.verdict));
      } else {
        j["results"].push_back({{"test", suite::name(row.algorithm)}, {"skipped", row.skipped}});
      }
    }
    j["consistent"] = report.consistent();
    j["problems"] = report.problems;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << std::left << std::setw(12) << "test" << std::setw(11) << "verdict" << std::setw(10)
              << "witness" << std::setw(12) << "intervals" << std::setw(7) << "level"
              << "revisions\n";
    for (const auto& row : report.rows) {
      std::cout << std::setw(12) << suite::name(row.algorithm);
      if (!row.verdict) {
        std::cout << "skipped (" << row.skipped << ")\n";
        continue;
      }
      const Verdict& v = *row.verdict;
      std::cout << std::setw(11) << to_string(v.outcome) << std::setw(10)
                << (v.witness ? std::to_string(*v.witness) : "-") << std::setw(12)
                << v.stats.intervals_checked << std::setw(7) << v.stats.level_reached
                << v.stats.revisions << '\n';
    }
    std::cout << "consistent: " << (report.consistent() ? "yes" : "NO") << '\n';
    for (const auto& p : report.problems) std::cout << "  " << p << '\n';
  }
  if (!report.consistent() || !report.exact_outcome) return kInternal;
  return exit_for(*report.exact_outcome);
}

int run_check(const CheckArgs& args) {
  const bool all = args.test == "all";
  const auto algorithm = suite::parse_algorithm(args.test);
  if (!all && !algorithm) {
    std::cerr << "unknown test '" << args.test << "'\n";
    return kUsage;
  }
  if (args.level && (all || *algorithm != suite::Algorithm::SuperPos)) {
    std::cerr << "--level only applies to --test superpos\n";
    return kUsage;
  }
  if (args.level && *args.level < 1) {
    std::cerr << "--level must be >= 1\n";
    return kUsage;
  }
  if (args.level_cap && (all || *algorithm != suite::Algorithm::Dynamic)) {
    std::cerr << "--level-cap only applies to --test dynamic\n";
    return kUsage;
  }
  if (args.level_cap && *args.level_cap < 1) {
    std::cerr << "--level-cap must be >= 1\n";
    return kUsage;
  }
  if (args.format != "text" && args.format != "json") {
    std::cerr << "--format must be text or json\n";
    return kUsage;
  }

  TaskSet ts = load_taskset(args.file);
  if (all) return check_all(ts, args);

  suite::RunOptions options;
  options.level = args.level.value_or(1);
  options.level_cap = args.level_cap;
  options.pd_iteration_cap = args.pd_cap;
  const Verdict v = suite::run(*algorithm, ts, options);
  std::string label(suite::name(*algorithm));
  if (*algorithm == suite::Algorithm::SuperPos) label = "superpos" + std::to_string(options.level);
  if (args.format == "json") {
    std::cout << verdict_json(label, v).dump() << '\n';
  } else {
    std::cout << verdict_text(label, v, args.stats) << '\n';
  }
  return exit_for(v.outcome);
}

struct GenArgs {
  generator::GenParams params;
  std::string periods = "log-uniform";
  std::uint64_t first_index = 0;
  std::string out_dir = ".";
};

int run_gen(GenArgs args) {
  if (args.periods == "log-uniform") {
    args.params.periods = generator::PeriodDistribution::LogUniform;
  } else if (args.periods == "uniform") {
    args.params.periods = generator::PeriodDistribution::Uniform;
  } else {
    std::cerr << "--periods must be log-uniform or uniform\n";
    return kUsage;
  }
  generator::validate(args.params);

  std::error_code ec;
  std::filesystem::create_directories(args.out_dir, ec);
  if (ec) throw IoError("cannot create '" + args.out_dir + "': " + ec.message());

  double lo = 2.0, hi = 0.0, sum = 0.0;
  for (std::uint64_t k = 0; k < args.params.count; ++k) {
    const std::uint64_t index = args.first_index + k;
    const TaskSet ts = generator::gen_taskset(args.params, index);
    const auto path = std::filesystem::path(args.out_dir) /
                      (std::to_string(args.params.seed) + "-" + std::to_string(index) + ".json");
    save_taskset(ts, path.string());
    const double u = ts.utilization().to_double();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  if (args.params.count) {
    std::cout << "wrote " << args.params.count << " sets to " << args.out_dir << std::fixed
              << std::setprecision(6) << "; realized utilization min=" << lo
              << " mean=" << sum / static_cast<double>(args.params.count) << " max=" << hi << '\n';
  } else {
    std::cout << "wrote 0 sets\n";
  }
  return 0;
}

struct BenchArgs {
  std::string experiment;
  std::uint64_t sets = 0;
  std::uint64_t seed = 1;
  std::string out;
  unsigned jobs = 0;
  std::optional<std::uint64_t> pd_cap;
  std::string log;
  bool oracles = false;
};

int run_bench(const BenchArgs& args) {
  if (args.experiment != "utilization" && args.experiment != "period-ratio") {
    std::cerr << "--experiment must be utilization or period-ratio\n";
    return kUsage;
  }
  if (args.sets < 1) {
    std::cerr << "--sets must be >= 1\n";
    return kUsage;
  }
  bench::BenchOptions options;
  options.sets_per_cell = args.sets;
  options.seed = args.seed;
  options.jobs = args.jobs;
  options.pd_iteration_cap = args.pd_cap;
  options.with_oracles = args.oracles;
  std::ofstream log;
  if (!args.log.empty()) {
    log.open(args.log, std::ios::binary | std::ios::trunc);
    if (!log) throw IoError("cannot open '" + args.log + "' for writing");
    options.log = &log;
  }
  const auto rows = args.experiment == "utilization" ? bench::run_experiment_utilization(options)
                                                     : bench::run_experiment_period_ratio(options);
  bench::emit_csv(rows, args.out);
  if (log.is_open()) {
    log.close();
    if (!log) throw IoError("failed writing '" + args.log + "'");
  }

  std::string current;
  std::ostringstream line;
  auto flush = [&] {
    if (!current.empty()) std::cout << line.str() << '\n';
    line.str("");
  };
  for (const auto& r : rows) {
    if (r.param != current) {
      flush();
      current = r.param;
      line << args.experiment << " " << r.param << ":";
    }
    line << " " << r.algorithm << " avg=" << std::fixed << std::setprecision(1) << r.avg_iterations
         << " max=" << r.max_iterations;
    if (r.excluded) line << " (excluded " << r.excluded << ")";
  }
  flush();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"edfkit: exact and approximate EDF feasibility analysis"};
  app.footer(std::string("\n") + kPrngDoc +
             "\n\nExit codes: 0 feasible, 1 infeasible, 2 unknown, 64 usage, 65 bad input,\n"
             "70 internal limit or inconsistency, 74 I/O error.");
  app.require_subcommand(1);

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Run a feasibility test on a task file");
  check_cmd->add_option("file", check.file, "Task file (JSON)")->required();
  check_cmd->add_option("--test", check.test,
                        "ll, devi, superpos (alias superpos1), pd, dynamic, allapprox, "
                        "oracle-scan, oracle-sim, or all")
      ->capture_default_str();
  check_cmd->add_option("--level", check.level, "SuperPos level (default 1)");
  check_cmd->add_option("--level-cap", check.level_cap, "Highest level for the dynamic test");
  check_cmd->add_option("--pd-iteration-cap", check.pd_cap, "Stop the pd test after N intervals");
  check_cmd->add_flag("--stats", check.stats, "Print iteration statistics");
  check_cmd->add_option("--format", check.format, "text or json")->capture_default_str();

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate random task files");
  gen_cmd->add_option("--count", gen.params.count, "Number of sets")->capture_default_str();
  gen_cmd->add_option("--seed", gen.params.seed, "Seed")->capture_default_str();
  gen_cmd->add_option("--first-index", gen.first_index, "Index of the first set")->capture_default_str();
  gen_cmd->add_option("--n-min", gen.params.n_min)->capture_default_str();
  gen_cmd->add_option("--n-max", gen.params.n_max)->capture_default_str();
  gen_cmd->add_option("--u-min", gen.params.u_min)->capture_default_str();
  gen_cmd->add_option("--u-max", gen.params.u_max)->capture_default_str();
  gen_cmd->add_option("--gap", gen.params.gap_avg, "Mean relative deadline gap")->capture_default_str();
  gen_cmd->add_option("--gap-max", gen.params.gap_avg_max, "Draw each set's mean gap from [gap, gap-max]");
  gen_cmd->add_option("--t-min", gen.params.t_min)->capture_default_str();
  gen_cmd->add_option("--t-max", gen.params.t_max)->capture_default_str();
  gen_cmd->add_option("--periods", gen.periods, "log-uniform or uniform")->capture_default_str();
  gen_cmd->add_option("--out-dir", gen.out_dir, "Output directory")->capture_default_str();

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Run an iteration-count experiment");
  bench_cmd->add_option("--experiment", bench_args.experiment, "utilization or period-ratio")->required();
  bench_cmd->add_option("--sets", bench_args.sets, "Sets per cell")->required();
  bench_cmd->add_option("--seed", bench_args.seed)->capture_default_str();
  bench_cmd->add_option("--out", bench_args.out, "CSV output file")->required();
  bench_cmd->add_option("--jobs", bench_args.jobs, "Worker threads (0 = all cores)")->capture_default_str();
  bench_cmd->add_option("--pd-iteration-cap", bench_args.pd_cap, "Cap on pd intervals per set");
  bench_cmd->add_option("--log", bench_args.log, "Per-set CSV log");
  bench_cmd->add_flag("--with-oracles", bench_args.oracles, "Add oracle-scan and oracle-sim rows");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const bool checking = check_cmd->parsed();
  try {
    if (checking) return run_check(check);
    if (gen_cmd->parsed()) return run_gen(gen);
    return run_bench(bench_args);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const InapplicableTest& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return checking ? kDataError : kIoError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}
