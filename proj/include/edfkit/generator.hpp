#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "edfkit/model.hpp"
#include "edfkit/rational.hpp"

namespace edfkit::generator {

/// SplitMix64 (Steele, Lea, Flood); used only to expand seeds.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

/// xoshiro256** 1.0 (Blackman, Vigna). Platform independent: the output
/// sequence depends only on the 256-bit state.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::array<std::uint64_t, 4> state) : s_(state) {}

  /// State = four consecutive SplitMix64 outputs starting from `seed`.
  static Xoshiro256 from_seed(std::uint64_t seed);

  std::uint64_t next();
  std::uint64_t operator()() { return next(); }
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

  /// Top 53 bits scaled into [0, 1).
  double uniform01();
  /// Uniform integer in [lo, hi] by rejection (no modulo bias).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

 private:
  std::array<std::uint64_t, 4> s_;
};

/// Stream of the set (seed, index):
///   Xoshiro256::from_seed(SplitMix64(seed).next() ^ (index * 0x9E3779B97F4A7C15))
Xoshiro256 set_stream(std::uint64_t seed, std::uint64_t index);

enum class PeriodDistribution { LogUniform, Uniform };

std::string_view to_string(PeriodDistribution d);

struct GenParams {
  int n_min = 5;
  int n_max = 100;
  double u_min = 0.90;
  double u_max = 0.99;
  double gap_avg = 0.3;  // mean of (T - D) / T
  /// When set, each set draws its own mean gap uniformly from
  /// [gap_avg, gap_avg_max].
  std::optional<double> gap_avg_max;
  Ticks t_min = 1000;
  Ticks t_max = 100000;
  PeriodDistribution periods = PeriodDistribution::LogUniform;
  std::uint64_t seed = 1;
  std::uint64_t count = 1;
};

/// Throws ValidationError describing the first broken constraint.
void validate(const GenParams& p);

/// UUniFast in floating point: n nonnegative shares summing to `total`.
std::vector<double> uunifast_double(int n, double total, Xoshiro256& rng);

/// UUniFast shares converted to exact rationals and rescaled so they sum
/// to `total` exactly.
std::vector<Rational> uunifast(int n, const Rational& total, Xoshiro256& rng);

/// Set number `index` of the family described by `p`. A pure function of
/// (p, index); the set is named "<seed>-<index>".
///
/// Draw order: n, target utilization, the set's mean gap (only with
/// gap_avg_max), the UUniFast shares, then per task its period and its
/// deadline gap.
TaskSet gen_taskset(const GenParams& p, std::uint64_t index);

}  // namespace edfkit::generator
