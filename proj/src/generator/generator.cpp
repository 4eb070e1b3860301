#include "edfkit/generator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "edfkit/errors.hpp"

namespace edfkit::generator {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Xoshiro256 Xoshiro256::from_seed(std::uint64_t seed) {
  SplitMix64 sm(seed);
  return Xoshiro256({sm.next(), sm.next(), sm.next(), sm.next()});
}

std::uint64_t Xoshiro256::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::int64_t Xoshiro256::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw PreconditionError("uniform_int: empty range");
  const std::uint64_t range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (range == 0) return static_cast<std::int64_t>(next());  // full 64-bit range
  const std::uint64_t threshold = (0 - range) % range;
  while (true) {
    const std::uint64_t x = next();
    if (x >= threshold) {
      return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + x % range);
    }
  }
}

Xoshiro256 set_stream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 base(seed);
  return Xoshiro256::from_seed(base.next() ^ (index * 0x9E3779B97F4A7C15ULL));
}

std::string_view to_string(PeriodDistribution d) {
  return d == PeriodDistribution::LogUniform ? "log-uniform" : "uniform";
}

void validate(const GenParams& p) {
  if (p.n_min < 1) throw ValidationError("n_min must be >= 1");
  if (p.n_max < p.n_min) throw ValidationError("n_max must be >= n_min");
  if (!(p.u_min > 0.0)) throw ValidationError("u_min must be > 0");
  if (!(p.u_max <= 1.0)) throw ValidationError("u_max must be <= 1");
  if (!(p.u_min <= p.u_max)) throw ValidationError("u_min must be <= u_max");
  if (!(p.gap_avg >= 0.0 && p.gap_avg < 1.0)) throw ValidationError("gap must lie in [0, 1)");
  if (p.gap_avg_max && !(*p.gap_avg_max >= p.gap_avg && *p.gap_avg_max < 1.0)) {
    throw ValidationError("gap range must satisfy gap <= gap_max < 1");
  }
  if (p.t_min < 2) throw ValidationError("t_min must be >= 2");
  if (p.t_max < p.t_min) throw ValidationError("t_max must be >= t_min");
}

std::vector<double> uunifast_double(int n, double total, Xoshiro256& rng) {
  if (n < 1) throw PreconditionError("uunifast needs n >= 1");
  std::vector<double> shares;
  shares.reserve(static_cast<std::size_t>(n));
  double sum = total;
  for (int i = 1; i < n; ++i) {
    const double next = sum * std::pow(rng.uniform01(), 1.0 / static_cast<double>(n - i));
    shares.push_back(sum - next);
    sum = next;
  }
  shares.push_back(sum);
  return shares;
}

std::vector<Rational> uunifast(int n, const Rational& total, Xoshiro256& rng) {
  if (total.sign() <= 0 || total > Rational(1)) {
    throw PreconditionError("uunifast needs 0 < total <= 1");
  }
  const std::vector<double> raw = uunifast_double(n, total.to_double(), rng);
  std::vector<Rational> exact;
  exact.reserve(raw.size());
  Rational sum(0);
  for (double v : raw) {
    exact.push_back(Rational::from_double(std::max(v, 0.0)));
    sum += exact.back();
  }
  if (sum.sign() == 0) {
    // Every share underflowed; give the whole budget to the last task.
    exact.back() = total;
    return exact;
  }
  const Rational scale = total / sum;
  for (Rational& r : exact) r *= scale;
  return exact;
}

TaskSet gen_taskset(const GenParams& p, std::uint64_t index) {
  validate(p);
  Xoshiro256 rng = set_stream(p.seed, index);

  const int n = static_cast<int>(rng.uniform_int(p.n_min, p.n_max));
  const double target = p.u_min + rng.uniform01() * (p.u_max - p.u_min);
  double gap_avg = p.gap_avg;
  if (p.gap_avg_max) gap_avg += rng.uniform01() * (*p.gap_avg_max - p.gap_avg);
  const std::vector<double> shares = uunifast_double(n, target, rng);

  const double log_lo = std::log(static_cast<double>(p.t_min));
  const double log_hi = std::log(static_cast<double>(p.t_max));
  auto draw_period = [&]() -> Ticks {
    if (p.periods == PeriodDistribution::Uniform) return rng.uniform_int(p.t_min, p.t_max);
    const double x = std::exp(log_lo + rng.uniform01() * (log_hi - log_lo));
    return std::clamp<Ticks>(std::llround(x), p.t_min, p.t_max);
  };

  std::vector<Task> tasks;
  tasks.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Task t;
    do {
      t.period = draw_period();
      t.wcet = std::max<Ticks>(1, std::llround(shares[static_cast<std::size_t>(i)] *
                                               static_cast<double>(t.period)));
    } while (t.wcet > t.period);
    const double gap = std::min(rng.uniform01() * 2.0 * gap_avg, std::nextafter(1.0, 0.0));
    t.deadline = std::max<Ticks>(t.wcet, std::llround(static_cast<double>(t.period) * (1.0 - gap)));
    tasks.push_back(t);
  }
  return TaskSet(std::move(tasks), std::to_string(p.seed) + "-" + std::to_string(index));
}

}  // namespace edfkit::generator
