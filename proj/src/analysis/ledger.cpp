#include "ledger.hpp"

#include "edfkit/errors.hpp"

namespace edfkit::analysis::detail {

namespace {

static_assert(sizeof(unsigned long) == sizeof(Ticks), "GMP interop assumes LP64");

unsigned long as_ulong(Ticks v) { return static_cast<unsigned long>(v); }

}  // namespace

DemandLedger::DemandLedger(const TaskSet& ts) : ts_(&ts), scale_(1) {
  for (const Task& t : ts) {
    mpz_lcm_ui(scale_.get_mpz_t(), scale_.get_mpz_t(), as_ulong(t.period));
  }
  slope_.reserve(ts.size());
  for (const Task& t : ts) {
    mpz_class s = scale_ / as_ulong(t.period);
    s *= as_ulong(t.wcet);
    slope_.push_back(std::move(s));
  }
}

void DemandLedger::advance(Ticks dt) {
  if (dt > 0 && sgn(ready_) != 0) {
    mpz_addmul_ui(demand_.get_mpz_t(), ready_.get_mpz_t(), as_ulong(dt));
  }
}

void DemandLedger::add_job(std::size_t i) {
  mpz_addmul_ui(demand_.get_mpz_t(), scale_.get_mpz_t(), as_ulong((*ts_)[i].wcet));
}

void DemandLedger::approximate(std::size_t i) { ready_ += slope_[i]; }

void DemandLedger::withdraw(std::size_t i, Ticks interval) {
  const Task& t = (*ts_)[i];
  if (interval < t.deadline) {
    throw PreconditionError("withdrawing a task before its first deadline");
  }
  ready_ -= slope_[i];
  const Ticks residue = (interval - t.deadline) % t.period;
  mpz_submul_ui(demand_.get_mpz_t(), slope_[i].get_mpz_t(), as_ulong(residue));
}

bool DemandLedger::exceeds(Ticks interval) {
  mpz_mul_ui(scratch_.get_mpz_t(), scale_.get_mpz_t(), as_ulong(interval));
  return demand_ > scratch_;
}

mpz_class DemandLedger::scaled_cost(std::size_t i, Ticks interval) const {
  const Task& t = (*ts_)[i];
  return slope_[i] * as_ulong((interval - t.deadline) % t.period);
}

Rational DemandLedger::demand() const { return Rational(mpq_class(demand_, scale_)); }

Rational DemandLedger::ready_utilization() const { return Rational(mpq_class(ready_, scale_)); }

Ticks exclusive_limit(const Rational& horizon) {
  if (horizon.sign() <= 0) return 0;
  try {
    return horizon.ceil();
  } catch (const OverflowError&) {
    return std::numeric_limits<Ticks>::max();
  }
}

Ticks saturating_im_level(const Task& task, std::int64_t level) {
  Ticks r = 0;
  if (__builtin_mul_overflow(level - 1, task.period, &r) ||
      __builtin_add_overflow(r, task.deadline, &r)) {
    return std::numeric_limits<Ticks>::max();
  }
  return r;
}

}  // namespace edfkit::analysis::detail
