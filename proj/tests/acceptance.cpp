// Acceptance suite. Run with criterion numbers as arguments, or with none to
// run them all. Prints one PASS/FAIL line per criterion; the exit status is
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "edfkit/analysis.hpp"
#include "edfkit/bench.hpp"
#include "edfkit/demand.hpp"
#include "edfkit/errors.hpp"
#include "edfkit/oracle.hpp"
#include "edfkit/suite.hpp"
#include "support.hpp"

using namespace edfkit;

namespace {

struct Result {
  bool pass = true;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

/// Corpus for the containment and Devi criteria: small sets of every shape
/// plus generator sets of 5 to 100 tasks.
std::vector<TaskSet> mixed_corpus() {
  std::vector<TaskSet> sets;
  generator::Xoshiro256 rng = generator::Xoshiro256::from_seed(2002);
  for (int k = 0; k < 5000; ++k) {
    sets.push_back(testing::random_small_set(rng, {.n_max = 8, .t_max = 60, .u_min = 0.2, .u_max = 1.0}));
  }
  const double gaps[] = {0.0, 0.1, 0.2, 0.3, 0.4};
  for (std::uint64_t i = 0; i < 5000; ++i) {
    generator::GenParams p;
    p.seed = 2003;
    p.n_min = 5;
    p.n_max = 100;
    p.u_min = 0.3;
    p.u_max = 0.99;
    p.gap_avg = gaps[i % 5];
    p.t_min = 100;
    p.t_max = 100000;
    sets.push_back(generator::gen_taskset(p, i));
  }
  return sets;
}

const std::vector<TaskSet>& corpus() {
  static const std::vector<TaskSet> sets = mixed_corpus();
  return sets;
}

Result exactness_triad() {
  generator::Xoshiro256 rng = generator::Xoshiro256::from_seed(1001);
  const int total = 10000;
  int infeasible = 0;
  int full = 0;
  Result r;
  for (int k = 0; k < total && r.pass; ++k) {
    const TaskSet ts = testing::random_small_set(rng, {.n_max = 6, .t_max = 30, .u_min = 0.5, .u_max = 1.0});
    full += ts.utilization() == Rational(1);
    const Verdict scan = oracle::dbf_scan(ts);
    const Verdict sim = oracle::edf_sim(ts);
    const Verdict pd = analysis::processor_demand(ts);
    const Verdict dyn = analysis::dynamic_error(ts, {.level_cap = std::nullopt, .verify_ledger = true});
    const Verdict aa = analysis::all_approximated(ts, {.withdrawal = analysis::Withdrawal::Fifo, .verify_ledger = true});
    const bool agree = scan.outcome == sim.outcome && pd.outcome == scan.outcome &&
                       dyn.outcome == scan.outcome && aa.outcome == scan.outcome;
    const bool witnesses = pd.witness == dyn.witness && pd.witness == aa.witness && pd.witness == scan.witness;
    if (!agree || !witnesses) {
      r.pass = false;
      r.detail = "disagreement on " + serialize_taskset(ts);
    }
    infeasible += pd.outcome == Outcome::Infeasible;
  }
  if (r.pass) {
    r.detail = std::to_string(total) + " sets (" + std::to_string(infeasible) + " infeasible, " +
               std::to_string(full) + " at U = 1), zero disagreements";
  }
  return r;
}

Result containment() {
  Result r;
  int devi_ok = 0, sp_ok = 0, rejected = 0;
  for (const TaskSet& ts : corpus()) {
    const Outcome exact = analysis::all_approximated(ts).outcome;
    const Outcome d = analysis::devi(ts).outcome;
    const Outcome s1 = analysis::superpos(ts, 1).outcome;
    const Outcome s4 = analysis::superpos(ts, 4).outcome;
    devi_ok += d == Outcome::Feasible;
    sp_ok += s1 == Outcome::Feasible;
    rejected += exact == Outcome::Infeasible;
    bool bad = d == Outcome::Feasible && s1 != Outcome::Feasible;
    if (exact == Outcome::Infeasible) {
      bad = bad || d == Outcome::Feasible || s1 == Outcome::Feasible || s4 == Outcome::Feasible;
      if (ts.implicit_deadlines()) bad = bad || analysis::liu_layland(ts).outcome == Outcome::Feasible;
    }
    if (bad) {
      r.pass = false;
      r.detail = "violation on " + serialize_taskset(ts);
      return r;
    }
  }
  r.detail = std::to_string(corpus().size()) + " sets: devi accepts " + std::to_string(devi_ok) +
             ", superpos1 accepts " + std::to_string(sp_ok) + ", exact rejects " + std::to_string(rejected);
  return r;
}

Result devi_equivalence() {
  Result r;
  int seen = 0;
  for (const TaskSet& ts : corpus()) {
    if (analysis::devi(ts).outcome != Outcome::Feasible) continue;
    ++seen;
    const Verdict aa = analysis::all_approximated(ts);
    if (aa.outcome != Outcome::Feasible || aa.stats.intervals_checked != ts.size() || aa.stats.revisions != 0) {
      r.pass = false;
      r.detail = "mismatch on " + serialize_taskset(ts);
      return r;
    }
  }
  r.pass = seen >= 1000;
  r.detail = std::to_string(seen) + " devi-accepted sets, all with n intervals and no revisions";
  return r;
}

Result dynamic_level_one() {
  Result r;
  int seen = 0;
  for (const TaskSet& ts : corpus()) {
    if (analysis::devi(ts).outcome != Outcome::Feasible) continue;
    ++seen;
    const Verdict v = analysis::dynamic_error(ts);
    if (v.outcome != Outcome::Feasible || v.stats.level_reached != 1 || v.stats.revisions != 0) {
      r.pass = false;
      r.detail = "level raised on " + serialize_taskset(ts);
      return r;
    }
  }
  r.pass = seen >= 1000;
  r.detail = std::to_string(seen) + " devi-accepted sets, all at level 1 with no revisions";
  return r;
}

std::map<std::string, const bench::ExperimentRow*> by_algorithm(const std::vector<bench::ExperimentRow>& rows,
                                                                const std::string& param) {
  std::map<std::string, const bench::ExperimentRow*> out;
  for (const auto& row : rows) {
    if (row.param == param) out[row.algorithm] = &row;
  }
  return out;
}

Result utilization_ratios() {
  bench::BenchOptions options;
  options.sets_per_cell = 600;
  options.seed = 1;
  const auto rows = bench::run_experiment_utilization(options);
  Result r;
  std::ostringstream detail;
  for (const auto& cell : bench::utilization_cells(options.seed)) {
    const auto row = by_algorithm(rows, cell.param);
    const auto& pd = *row.at("pd");
    const auto& aa = *row.at("allapprox");
    const double avg_ratio = pd.avg_iterations / aa.avg_iterations;
    const double max_ratio = static_cast<double>(pd.max_iterations) / static_cast<double>(aa.max_iterations);
    const bool ok = aa.avg_iterations * 5.0 <= pd.avg_iterations && aa.max_iterations * 20 <= pd.max_iterations &&
                    pd.excluded == 0 && aa.excluded == 0;
    r.pass = r.pass && ok;
    detail << "gap " << cell.param << ": avg " << fmt(pd.avg_iterations) << "/" << fmt(aa.avg_iterations) << " = "
           << fmt(avg_ratio) << "x, max " << pd.max_iterations << "/" << aa.max_iterations << " = "
           << fmt(max_ratio) << "x; ";
  }
  r.detail = detail.str();
  return r;
}

Result ratio_independence() {
  bench::BenchOptions options;
  options.sets_per_cell = 200;
  options.seed = 1;
  options.pd_iteration_cap = 100'000'000;
  const auto rows = bench::run_experiment_period_ratio(options);
  const auto cells = bench::period_ratio_cells(options.seed);

  double aa_min = std::numeric_limits<double>::infinity(), aa_max = 0.0;
  double pd_min = std::numeric_limits<double>::infinity(), pd_max = 0.0;
  double pd_min_small = pd_min, pd_max_small = 0.0;
  bool capped = false;
  bool dynamic_below = true;
  std::ostringstream detail;
  for (const auto& cell : cells) {
    const auto row = by_algorithm(rows, cell.param);
    const auto& pd = *row.at("pd");
    const auto& aa = *row.at("allapprox");
    const auto& dyn = *row.at("dynamic");
    aa_min = std::min(aa_min, aa.avg_iterations);
    aa_max = std::max(aa_max, aa.avg_iterations);
    dynamic_below = dynamic_below && dyn.avg_iterations < pd.avg_iterations;
    if (pd.excluded) {
      capped = true;
    } else {
      pd_min = std::min(pd_min, pd.avg_iterations);
      pd_max = std::max(pd_max, pd.avg_iterations);
      if (std::stoll(cell.param) <= 100000) {
        pd_min_small = std::min(pd_min_small, pd.avg_iterations);
        pd_max_small = std::max(pd_max_small, pd.avg_iterations);
      }
    }
    detail << cell.param << ": pd " << fmt(pd.avg_iterations) << (pd.excluded ? " (capped)" : "") << ", allapprox "
           << fmt(aa.avg_iterations) << "; ";
  }
  const double aa_quotient = aa_max / aa_min;
  const double pd_quotient = capped ? pd_max_small / pd_min_small : pd_max / pd_min;
  Result r;
  r.pass = aa_quotient < 5.0 && (capped ? pd_quotient > 20.0 : pd_quotient > 100.0) && dynamic_below;
  detail << "allapprox quotient " << fmt(aa_quotient) << ", pd quotient " << fmt(pd_quotient)
         << (capped ? " (uncapped cells <= 1e5)" : "");
  r.detail = detail.str();
  return r;
}

/// One hundred edge sets: late deadlines, implicit deadlines, single tasks,
/// utilization at or just below 1 and horizons that collapse to zero.
std::vector<TaskSet> edge_sets() {
  std::vector<TaskSet> sets;
  const std::vector<std::vector<Task>> literal = {
      {{1, 2, 4}, {2, 4, 6}},
      {{1, 1, 2}, {2, 2, 5}},
      {{1, 1, 1}},
      {{1, 5, 3}},
      {{1, 2, 4}, {1, 5, 3}},
      {{1, 1, 2}, {1, 1, 2}},
      {{1, 2, 2}, {1, 2, 2}},
      {{1, 3, 2}, {1, 2, 2}},
      {{2, 3, 3}, {3, 4, 5}},
      {{2, 5, 3}, {1, 2, 6}},
      {{1, 1, 10}, {8, 9, 10}},
      {{1, 2, 2}, {1, 3, 3}, {1, 7, 6}},
      {{3, 3, 4}, {1, 4, 4}},
      {{3, 7, 4}, {1, 7, 4}},
      {{2, 2, 3}, {1, 3, 3}},
      {{1, 1, 3}, {1, 2, 3}, {1, 3, 3}},
      {{1, 30, 30}, {1, 1, 2}, {7, 14, 15}},
      {{5, 5, 10}, {5, 9, 10}},
      {{5, 5, 10}, {5, 10, 10}},
      {{5, 6, 10}, {5, 12, 10}},
  };
  for (const auto& tasks : literal) sets.emplace_back(tasks);

  // Single tasks: D below, at and above T, including C = T.
  for (Ticks t : {1, 2, 7, 30}) {
    for (Ticks d : {t, t + 1, 2 * t + 1}) sets.push_back(TaskSet({{t, d, t}}));
    sets.push_back(TaskSet({{1, std::max<Ticks>(1, t / 2), t}}));
  }
  // Utilization exactly 1 with implicit, constrained and late deadlines.
  for (Ticks k = 2; k <= 7; ++k) {
    sets.push_back(TaskSet({{1, k, k}, {k - 1, k, k}}));
    sets.push_back(TaskSet({{1, k - 1, k}, {k - 1, k, k}}));
    sets.push_back(TaskSet({{1, k + 1, k}, {k - 1, 2 * k, k}}));
  }
  // Utilization just below 1.
  for (Ticks k = 3; k <= 10; ++k) {
    sets.push_back(TaskSet({{k - 1, k, k}, {1, k - 1, k * k}}));
    sets.push_back(TaskSet({{k - 1, k - 1, k + 1}, {1, k + 1, (k + 1) * k}}));
  }
  // Horizons of zero: every D >= T with U < 1.
  for (Ticks k = 2; k <= 9; ++k) sets.push_back(TaskSet({{1, k, k}, {1, 2 * k + 1, 2 * k}, {1, 3 * k + 2, 3 * k}}));
  // Infeasible just below U = 1 through tight first deadlines.
  for (Ticks k = 2; k <= 9; ++k) sets.push_back(TaskSet({{k, k, 4 * k}, {k, k, 4 * k}, {1, 2, 4 * k}}));
  // Late deadlines close to full utilization.
  for (Ticks k = 2; k <= 9; ++k) sets.push_back(TaskSet({{k, 2 * k + 1, k + 1}, {1, k + 2, (k + 1) * (k + 1)}}));
  // Many identical tasks (all ties on every deadline).
  for (int n = 2; n <= 7; ++n) {
    std::vector<Task> tasks(static_cast<std::size_t>(n), Task{1, n, n});
    tasks.push_back({1, n + 1, 2 * n});
    sets.emplace_back(tasks);
  }
  return sets;
}

Result consistency_on_edges() {
  const auto sets = edge_sets();
  Result r;
  int problems = 0;
  std::map<Outcome, int> outcomes;
  for (const TaskSet& ts : sets) {
    const auto report = suite::check_all(ts);
    if (!report.consistent() || !report.exact_outcome) {
      ++problems;
      if (r.detail.empty()) r.detail = "inconsistent: " + serialize_taskset(ts);
    } else {
      ++outcomes[*report.exact_outcome];
    }
  }
  r.pass = problems == 0 && sets.size() == 100;
  if (r.pass) {
    r.detail = std::to_string(sets.size()) + " edge sets consistent (" + std::to_string(outcomes[Outcome::Feasible]) +
               " feasible, " + std::to_string(outcomes[Outcome::Infeasible]) + " infeasible)";
  } else if (r.detail.empty()) {
    r.detail = "expected 100 edge sets, built " + std::to_string(sets.size());
  }
  return r;
}

Result approximation_identity() {
  generator::Xoshiro256 rng = generator::Xoshiro256::from_seed(8008);
  Result r;
  for (int k = 0; k < 1000; ++k) {
    Task t;
    t.period = rng.uniform_int(1, 1'000'000'000);
    t.wcet = rng.uniform_int(1, t.period);
    t.deadline = rng.uniform_int(1, 3 * t.period);
    const std::int64_t level = rng.uniform_int(1, 1000);
    const Ticks im = demand::im_level(t, level);
    const Ticks interval = im + rng.uniform_int(1, 50 * t.period);
    const Rational lhs = demand::dbf_star_task(interval, t, im) - demand::dbf_task(interval, t);
    if (lhs != demand::app_cost(interval, t)) {
      r.pass = false;
      r.detail = "identity fails for C=" + std::to_string(t.wcet) + " D=" + std::to_string(t.deadline) +
                 " T=" + std::to_string(t.period) + " I=" + std::to_string(interval);
      return r;
    }
  }
  r.detail = "1000 triples, identity exact";
  return r;
}

Result horizon_soundness() {
  generator::Xoshiro256 rng = generator::Xoshiro256::from_seed(9009);
  Result r;
  int sets = 0, infeasible = 0;
  while (sets < 1000) {
    const TaskSet ts = testing::random_small_set(rng, {.n_max = 8, .t_max = 60, .u_min = 0.5, .u_max = 0.999});
    if (ts.utilization() >= Rational(1)) continue;
    Ticks h = 0;
    try {
      h = hyperperiod(ts);
    } catch (const OverflowError&) {
      continue;
    }
    if (h > 10'000'000) continue;
    ++sets;
    const Rational horizon = *demand::test_horizon(ts).value;
    const Verdict scan = oracle::dbf_scan(ts);
    const Verdict pd = analysis::processor_demand(ts);
    infeasible += scan.outcome == Outcome::Infeasible;
    const bool late_violation = scan.witness && Rational(*scan.witness) >= horizon;
    if (late_violation || pd.outcome != scan.outcome || pd.witness != scan.witness) {
      r.pass = false;
      r.detail = "violation at or beyond the horizon for " + serialize_taskset(ts);
      return r;
    }
  }
  r.detail = std::to_string(sets) + " sets scanned to hyperperiod + D_max (" + std::to_string(infeasible) +
             " infeasible), no violation at or beyond the horizon";
  return r;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Result()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "exactness triad", exactness_triad},
      {2, "containment chain", containment},
      {3, "all-approximated matches devi", devi_equivalence},
      {4, "dynamic stays at level 1", dynamic_level_one},
      {5, "utilization sweep iteration ratios", utilization_ratios},
      {6, "period-ratio independence", ratio_independence},
      {7, "consistency on edge sets", consistency_on_edges},
      {8, "approximation error identity", approximation_identity},
      {9, "horizon soundness", horizon_soundness},
  };

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::stoi(argv[i]));
  if (selected.empty()) {
    for (const auto& c : criteria) selected.push_back(c.id);
  }

  int failed = 0;
  for (int id : selected) {
    const auto it = std::find_if(criteria.begin(), criteria.end(), [&](const Criterion& c) { return c.id == id; });
    if (it == criteria.end()) {
      std::cerr << "no criterion " << id << '\n';
      return 64;
    }
    const auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = it->run();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << it->id << " (" << it->name << "): " << r.detail
              << " [" << fmt(secs) << " s]" << std::endl;
    failed += !r.pass;
  }
  return failed ? 1 : 0;
}
