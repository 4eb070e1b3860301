#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace edfkit {

/// Exact fraction, always kept in lowest terms with a positive denominator.
///
/// Backed by GMP so sums of many task utilizations (whose common
/// denominator is the lcm of all periods) never wrap. Narrowing back to
/// 64-bit ticks is checked and throws OverflowError.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t numerator, std::int64_t denominator);
  explicit Rational(mpq_class value);

  /// Exact value of a finite double (every double is a dyadic rational).
  static Rational from_double(double value);

  const mpq_class& value() const noexcept { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  /// Largest integer <= *this, narrowed to int64 (throws OverflowError).
  std::int64_t floor() const;
  /// Smallest integer >= *this, narrowed to int64 (throws OverflowError).
  std::int64_t ceil() const;
  /// Value with its fractional part discarded toward -infinity.
  Rational floor_rational() const;

  double to_double() const { return value_.get_d(); }

  /// "p/q", or just "p" when the value is integral.
  std::string to_string() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  /// Division by zero throws PreconditionError.
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Narrow an arbitrary-precision integer to int64, throwing OverflowError.
std::int64_t to_int64(const mpz_class& value);

}  // namespace edfkit
