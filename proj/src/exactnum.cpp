#include "ndoubling/exactnum.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <numeric>

namespace ndoubling {

std::strong_ordering compare(const Integer& lhs, const Integer& rhs) {
  const int c = cmp(lhs, rhs);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Parses an optionally signed run of decimal digits. `offset` is added to
// reported error positions.
Integer parse_integer(std::string_view text, std::size_t offset, bool allow_sign) {
  std::size_t i = 0;
  if (allow_sign && !text.empty() && (text[0] == '-' || text[0] == '+')) i = 1;
  if (i == text.size()) throw ParseError("expected digits", offset + i);
  for (std::size_t j = i; j < text.size(); ++j) {
    if (!is_digit(text[j])) {
      throw ParseError("unexpected character '" + std::string(1, text[j]) + "'", offset + j);
    }
  }
  std::string digits(text.substr(text[0] == '+' ? 1 : 0));
  return Integer(digits, 10);
}

}  // namespace

// --- Natural ---------------------------------------------------------------

Natural::Natural(Integer value) : value_(std::move(value)) {
  if (value_ < 0) throw DomainError("Natural: negative value " + value_.get_str());
}

Natural Natural::parse(std::string_view text) {
  return Natural(parse_integer(text, 0, false));
}

unsigned long Natural::to_ulong() const {
  if (!value_.fits_ulong_p()) throw CapacityError("value " + to_string() + " exceeds machine word");
  return value_.get_ui();
}

Natural Natural::pow(unsigned long exponent) const {
  Integer result;
  mpz_pow_ui(result.get_mpz_t(), value_.get_mpz_t(), exponent);
  return Natural(std::move(result));
}

Natural operator+(const Natural& lhs, const Natural& rhs) {
  return Natural(Integer(lhs.value_ + rhs.value_));
}

Natural operator*(const Natural& lhs, const Natural& rhs) {
  return Natural(Integer(lhs.value_ * rhs.value_));
}

Natural operator/(const Natural& lhs, const Natural& rhs) {
  if (rhs.is_zero()) throw DomainError("division by zero");
  return Natural(Integer(lhs.value_ / rhs.value_));
}

Natural operator%(const Natural& lhs, const Natural& rhs) {
  if (rhs.is_zero()) throw DomainError("division by zero");
  return Natural(Integer(lhs.value_ % rhs.value_));
}

Natural gcd(const Natural& lhs, const Natural& rhs) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), lhs.value().get_mpz_t(), rhs.value().get_mpz_t());
  return Natural(std::move(g));
}

// --- Rational --------------------------------------------------------------

Rational::Rational(const Integer& value) : value_(value) {}

Rational::Rational(const Natural& value) : value_(value.value()) {}

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  if (text.empty()) throw ParseError("empty rational", 0);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, 0, true));
  Integer num = parse_integer(text.substr(0, slash), 0, true);
  Integer den = parse_integer(text.substr(slash + 1), slash + 1, false);
  if (den == 0) throw ParseError("zero denominator", slash + 1);
  return Rational(num, den);
}

Integer Rational::floor() const {
  Integer result;
  mpz_fdiv_q(result.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return result;
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

Rational Rational::reciprocal() const {
  if (sign() == 0) throw DomainError("reciprocal of zero");
  return Rational(mpq_class(1 / value_));
}

Rational Rational::pow(long exponent) const {
  if (exponent < 0) return reciprocal().pow(-exponent);
  Integer num;
  Integer den;
  const auto e = static_cast<unsigned long>(exponent);
  mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), e);
  // Powers of coprime integers stay coprime.
  mpq_class result;
  result.get_num() = num;
  result.get_den() = den;
  return Rational(std::move(result));
}

std::string Rational::to_string() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::to_decimal(int significant_digits) const {
  // Precision in bits well above what the requested digits need.
  const auto bits = static_cast<mp_bitcnt_t>(significant_digits * 4 + 64);
  mpf_class f(value_, bits);
  char* raw = nullptr;
  gmp_asprintf(&raw, "%.*Fg", significant_digits, f.get_mpf_t());
  std::string out(raw);
  void (*free_fn)(void*, size_t) = nullptr;
  mp_get_memory_functions(nullptr, nullptr, &free_fn);
  free_fn(raw, out.size() + 1);
  return out;
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
  if (rhs.sign() == 0) throw DomainError("division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational operator-(const Rational& value) { return Rational(mpq_class(-value.value_)); }

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
  const int c = cmp(lhs.value_, rhs.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational min(const Rational& lhs, const Rational& rhs) { return rhs < lhs ? rhs : lhs; }
Rational max(const Rational& lhs, const Rational& rhs) { return lhs < rhs ? rhs : lhs; }

// --- factorization ---------------------------------------------------------

Natural PrimeFactorization::product() const {
  Natural result = 1;
  for (const auto& [prime, exponent] : factors) result = result * prime.pow(exponent);
  return result;
}

namespace {

std::mutex bound_mutex;
std::optional<Natural> bound_override;

Natural bound_from_environment() {
  if (const char* env = std::getenv("NDOUBLING_FACTOR_BOUND"); env != nullptr && *env != '\0') {
    try {
      return Natural::parse(env);
    } catch (const ParseError&) {
      // Malformed override falls back to the built-in default.
    }
  }
  return Natural(2).pow(63);
}

PrimeFactorization factorize_word(std::uint64_t x) {
  PrimeFactorization out;
  auto take = [&](std::uint64_t p) {
    unsigned long e = 0;
    while (x % p == 0) {
      x /= p;
      ++e;
    }
    if (e > 0) out.factors.push_back({Natural(p), e});
  };
  take(2);
  for (std::uint64_t d = 3; static_cast<unsigned __int128>(d) * d <= x; d += 2) take(d);
  if (x > 1) out.factors.push_back({Natural(x), 1});
  return out;
}

PrimeFactorization factorize_big(Integer x) {
  PrimeFactorization out;
  Integer d = 2;
  while (d * d <= x) {
    unsigned long e = 0;
    while (mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0) {
      x /= d;
      ++e;
    }
    if (e > 0) out.factors.push_back({Natural(d), e});
    d += (d == 2) ? 1 : 2;
  }
  if (x > 1) out.factors.push_back({Natural(x), 1});
  return out;
}

}  // namespace

Natural default_factor_bound() {
  std::lock_guard lock(bound_mutex);
  if (!bound_override) bound_override = bound_from_environment();
  return *bound_override;
}

void set_default_factor_bound(const Natural& bound) {
  std::lock_guard lock(bound_mutex);
  bound_override = bound;
}

PrimeFactorization factorize(const Natural& x) { return factorize(x, default_factor_bound()); }

PrimeFactorization factorize(const Natural& x, const Natural& bound) {
  if (x.is_zero()) throw DomainError("factorize: input must be >= 1");
  if (x >= bound) {
    throw CapacityError("factorize: " + x.to_string() + " exceeds factorization bound " +
                        bound.to_string());
  }
  if (x.fits_ulong()) {
    return factorize_word(x.value().get_ui());
  }
  return factorize_big(x.value());
}

// --- logarithm ratio -------------------------------------------------------

unsigned long floor_log_ratio(const Natural& m, unsigned long ell, const Natural& n) {
  if (m < Natural(2) || n < Natural(2)) throw DomainError("floor_log_ratio: bases must be >= 2");
  const Natural target = m.pow(ell);
  // n^t <= m^ell with n >= 2 forces t <= log2(m^ell) < bit length.
  unsigned long lo = 0;
  unsigned long hi = mpz_sizeinbase(target.value().get_mpz_t(), 2);
  while (lo < hi) {
    const unsigned long mid = lo + (hi - lo + 1) / 2;
    if (n.pow(mid) <= target) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

// --- multiplicative dependence ---------------------------------------------

std::optional<CommonBase> multiplicatively_dependent(const Natural& m, const Natural& n) {
  if (m < Natural(2) || n < Natural(2)) {
    throw DomainError("multiplicatively_dependent: inputs must be >= 2");
  }
  const auto fm = factorize(m).factors;
  const auto fn = factorize(n).factors;
  if (fm.size() != fn.size()) return std::nullopt;
  for (std::size_t i = 0; i < fm.size(); ++i) {
    if (fm[i].prime != fn[i].prime) return std::nullopt;
  }
  unsigned long gm = 0;
  unsigned long gn = 0;
  for (std::size_t i = 0; i < fm.size(); ++i) {
    gm = std::gcd(gm, fm[i].exponent);
    gn = std::gcd(gn, fn[i].exponent);
  }
  // Primitive direction must coincide: e_m / gm == e_n / gn componentwise.
  Natural base = 1;
  for (std::size_t i = 0; i < fm.size(); ++i) {
    if (fm[i].exponent / gm != fn[i].exponent / gn) return std::nullopt;
    base = base * fm[i].prime.pow(fm[i].exponent / gm);
  }
  return CommonBase{base, gm, gn};
}

}  // namespace ndoubling
