#include "edfkit/rational.hpp"

#include <cmath>
#include <ostream>

#include "edfkit/errors.hpp"

namespace edfkit {

namespace {

static_assert(sizeof(long) == sizeof(std::int64_t), "GMP interop assumes LP64");

mpz_class mpz_from_int64(std::int64_t v) { return mpz_class(static_cast<long>(v)); }

}  // namespace

std::int64_t to_int64(const mpz_class& value) {
  if (!value.fits_slong_p()) {
    throw OverflowError("integer " + value.get_str() + " does not fit in 64 bits");
  }
  return static_cast<std::int64_t>(value.get_si());
}

Rational::Rational(std::int64_t value) : value_(mpz_from_int64(value)) {}

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) {
    throw PreconditionError("rational with zero denominator");
  }
  value_ = mpq_class(mpz_from_int64(numerator), mpz_from_int64(denominator));
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) {
  value_.canonicalize();
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) {
    throw PreconditionError("cannot represent a non-finite double exactly");
  }
  return Rational(mpq_class(value));
}

std::int64_t Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return to_int64(q);
}

std::int64_t Rational::ceil() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return to_int64(q);
}

Rational Rational::floor_rational() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return Rational(mpq_class(q));
}

std::string Rational::to_string() const {
  if (is_integer()) {
    return value_.get_num().get_str();
  }
  return value_.get_str();
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.sign() == 0) {
    throw PreconditionError("rational division by zero");
  }
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::operator-() const {
  return Rational(mpq_class(-value_));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.to_string();
}

}  // namespace edfkit
