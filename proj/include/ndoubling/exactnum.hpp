#pragma once

// Exact integers and rationals on top of GMP, plus the handful of
// number-theoretic utilities the rest of the library is built from.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ndoubling/errors.hpp"

namespace ndoubling {

// Signed arbitrary-precision integer. Used for interval indices and numerators.
using Integer = mpz_class;

std::strong_ordering compare(const Integer& lhs, const Integer& rhs);

// Arbitrary-precision nonnegative integer.
class Natural {
 public:
  Natural() = default;

  template <std::integral T>
  Natural(T value) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<T>) {
      if (value < 0) throw DomainError("Natural: negative value");
      value_ = static_cast<long>(value);
    } else {
      value_ = static_cast<unsigned long>(value);
    }
  }

  explicit Natural(Integer value);

  static Natural parse(std::string_view text);

  const Integer& value() const noexcept { return value_; }
  bool is_zero() const { return value_ == 0; }
  bool fits_ulong() const { return value_.fits_ulong_p(); }
  // Throws CapacityError when the value does not fit.
  unsigned long to_ulong() const;
  std::string to_string() const { return value_.get_str(); }

  Natural pow(unsigned long exponent) const;

  friend Natural operator+(const Natural& lhs, const Natural& rhs);
  friend Natural operator*(const Natural& lhs, const Natural& rhs);
  // Floor division; throws DomainError on a zero divisor.
  friend Natural operator/(const Natural& lhs, const Natural& rhs);
  friend Natural operator%(const Natural& lhs, const Natural& rhs);

  friend bool operator==(const Natural& lhs, const Natural& rhs) {
    return lhs.value_ == rhs.value_;
  }
  friend std::strong_ordering operator<=>(const Natural& lhs, const Natural& rhs) {
    return compare(lhs.value_, rhs.value_);
  }

 private:
  Integer value_;
};

Natural gcd(const Natural& lhs, const Natural& rhs);

// Exact rational number, always in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;

  template <std::integral T>
  Rational(T value) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<T>) {
      value_ = static_cast<long>(value);
    } else {
      value_ = static_cast<unsigned long>(value);
    }
  }
  Rational(const Integer& value);  // NOLINT(google-explicit-constructor)
  Rational(const Natural& value);  // NOLINT(google-explicit-constructor)
  // Throws DomainError when den == 0.
  Rational(const Integer& num, const Integer& den);

  // Accepts "p/q", "-p/q" and integer literals. Throws ParseError.
  static Rational parse(std::string_view text);

  Integer num() const { return value_.get_num(); }
  Integer den() const { return value_.get_den(); }
  const mpq_class& mpq() const noexcept { return value_; }

  int sign() const { return sgn(value_); }
  bool is_integer() const { return value_.get_den() == 1; }
  Integer floor() const;
  Rational abs() const;
  // Throws DomainError on zero.
  Rational reciprocal() const;
  // Negative exponents invert; 0^negative is a DomainError.
  Rational pow(long exponent) const;

  double to_double() const { return value_.get_d(); }
  // "p/q", or "p" when the denominator is 1.
  std::string to_string() const;
  // Display-only decimal rendering with the given number of significant digits.
  std::string to_decimal(int significant_digits = 12) const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  friend Rational operator-(const Rational& value);

  friend bool operator==(const Rational& lhs, const Rational& rhs) {
    return lhs.value_ == rhs.value_;
  }
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

 private:
  explicit Rational(mpq_class value) : value_(std::move(value)) {}

  mpq_class value_;
};

Rational min(const Rational& lhs, const Rational& rhs);
Rational max(const Rational& lhs, const Rational& rhs);

struct PrimePower {
  Natural prime;
  unsigned long exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Primes strictly increasing, exponents >= 1.
struct PrimeFactorization {
  std::vector<PrimePower> factors;

  Natural product() const;
  friend bool operator==(const PrimeFactorization&, const PrimeFactorization&) = default;
};

// Process-wide upper bound (exclusive) on inputs to factorize(). Defaults to
// 2^63, or the value of the NDOUBLING_FACTOR_BOUND environment variable.
Natural default_factor_bound();
void set_default_factor_bound(const Natural& bound);

// Trial division. Throws DomainError for x == 0 and CapacityError for
// x >= bound.
PrimeFactorization factorize(const Natural& x);
PrimeFactorization factorize(const Natural& x, const Natural& bound);

// Largest t with n^t <= m^ell, by exact comparison. Throws DomainError when
// m < 2 or n < 2.
unsigned long floor_log_ratio(const Natural& m, unsigned long ell, const Natural& n);

// m = base^m_exponent and n = base^n_exponent with base minimal.
struct CommonBase {
  Natural base;
  unsigned long m_exponent = 0;
  unsigned long n_exponent = 0;

  friend bool operator==(const CommonBase&, const CommonBase&) = default;
};

// Present iff log n / log m is rational. Throws DomainError when m or n < 2.
std::optional<CommonBase> multiplicatively_dependent(const Natural& m, const Natural& n);

}  // namespace ndoubling
