#include "ndoubling/pairs.hpp"

#include <numeric>
#include <stdexcept>

namespace ndoubling {

namespace {

Natural reconstruct(const std::vector<Natural>& primes, const std::vector<unsigned long>& exps) {
  Natural out = 1;
  for (std::size_t i = 0; i < primes.size(); ++i) out = out * primes[i].pow(exps[i]);
  return out;
}

void require_bases(const Natural& m, const Natural& n) {
  if (m < Natural(2) || n < Natural(2)) throw DomainError("pair bases must be >= 2");
}

}  // namespace

Natural ExponentPair::n() const { return reconstruct(primes, n_exponents); }

Natural ExponentPair::m() const { return reconstruct(primes, m_exponents); }

ExponentPair ExponentPair::powered(unsigned long m_power, unsigned long n_power) const {
  ExponentPair out = *this;
  for (auto& e : out.m_exponents) e *= m_power;
  for (auto& e : out.n_exponents) e *= n_power;
  return out;
}

ExponentPair exponent_pair(const Natural& m, const Natural& n) {
  require_bases(m, n);
  const auto fm = factorize(m).factors;
  const auto fn = factorize(n).factors;
  ExponentPair out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < fm.size() || j < fn.size()) {
    if (j == fn.size() || (i < fm.size() && fm[i].prime < fn[j].prime)) {
      out.primes.push_back(fm[i].prime);
      out.m_exponents.push_back(fm[i++].exponent);
      out.n_exponents.push_back(0);
    } else if (i == fm.size() || fn[j].prime < fm[i].prime) {
      out.primes.push_back(fn[j].prime);
      out.m_exponents.push_back(0);
      out.n_exponents.push_back(fn[j++].exponent);
    } else {
      out.primes.push_back(fm[i].prime);
      out.m_exponents.push_back(fm[i++].exponent);
      out.n_exponents.push_back(fn[j++].exponent);
    }
  }
  return out;
}

SolvabilityResult is_solvable(const ExponentPair& pair) {
  // n^l | m^(l-1) iff b_i (l-1) >= a_i l, i.e. l (b_i - a_i) >= b_i, for all i.
  unsigned long ell = 1;
  for (std::size_t i = 0; i < pair.primes.size(); ++i) {
    const unsigned long a = pair.n_exponents[i];
    const unsigned long b = pair.m_exponents[i];
    if (a == 0) continue;
    if (b <= a) return {};
    ell = std::max(ell, (b + (b - a) - 1) / (b - a));
  }
  const Natural numerator = pair.m().pow(ell - 1);
  const Natural denominator = pair.n().pow(ell);
  if (!(numerator % denominator).is_zero()) {
    throw std::logic_error("is_solvable: closed-form witness is not integral");
  }
  return {true, ell, numerator / denominator};
}

SolvabilityResult is_solvable(const Natural& m, const Natural& n) {
  return is_solvable(exponent_pair(m, n));
}

bool is_good_pair(const ExponentPair& pair) {
  if (!(pair.m() > pair.n())) return false;
  bool tight = false;
  for (std::size_t i = 0; i < pair.primes.size(); ++i) {
    const unsigned long a = pair.n_exponents[i];
    const unsigned long b = pair.m_exponents[i];
    if (b < a) return false;
    if (a == b && a > 0) tight = true;
  }
  return tight;
}

bool is_good_pair(const Natural& m, const Natural& n) { return is_good_pair(exponent_pair(m, n)); }

bool is_semi_good_pair(const ExponentPair& pair) {
  if (!(pair.m() > pair.n())) return false;
  for (std::size_t i = 0; i < pair.primes.size(); ++i) {
    if (pair.m_exponents[i] <= pair.n_exponents[i]) return false;
  }
  return true;
}

bool is_semi_good_pair(const Natural& m, const Natural& n) {
  return is_semi_good_pair(exponent_pair(m, n));
}

unsigned long make_semi_good(const ExponentPair& pair) {
  unsigned long e = 1;
  for (std::size_t i = 0; i < pair.primes.size(); ++i) {
    const unsigned long a = pair.n_exponents[i];
    const unsigned long b = pair.m_exponents[i];
    if (a == 0) continue;
    if (b == 0) {
      throw DomainError("make_semi_good: prime " + pair.primes[i].to_string() +
                        " divides n but not m (1/n is m-far)");
    }
    e = std::max(e, a / b + 1);
  }
  const Natural m = pair.m();
  const Natural n = pair.n();
  while (!(m.pow(e) > n)) ++e;
  return e;
}

unsigned long make_semi_good(const Natural& m, const Natural& n) {
  return make_semi_good(exponent_pair(m, n));
}

LiftExponents lift_to_good(const ExponentPair& pair) {
  if (!is_semi_good_pair(pair)) throw DomainError("lift_to_good: pair is not semi-good");
  // max a_i / b_i over a_i > 0, compared by cross-multiplication
  unsigned long best_a = 0;
  unsigned long best_b = 1;
  for (std::size_t i = 0; i < pair.primes.size(); ++i) {
    const unsigned long a = pair.n_exponents[i];
    const unsigned long b = pair.m_exponents[i];
    if (a == 0) continue;
    if (a * best_b > best_a * b) {
      best_a = a;
      best_b = b;
    }
  }
  const unsigned long g = std::gcd(best_a, best_b);
  return {best_a / g, best_b / g};
}

LiftExponents lift_to_good(const Natural& m, const Natural& n) {
  return lift_to_good(exponent_pair(m, n));
}

std::string kind_name(const PairClassification& c) {
  switch (c.index()) {
    case 0:
      return "Dependent";
    case 1:
      return "FarCase";
    default:
      return "GoodLift";
  }
}

bool is_dependent(const PairClassification& c) {
  return std::holds_alternative<classification::Dependent>(c);
}

PairClassification classify_pair(const Natural& n, const Natural& m) {
  require_bases(m, n);
  if (auto common = multiplicatively_dependent(m, n)) {
    return classification::Dependent{*common};
  }
  const Rational inverse_n(Integer(1), n.value());
  if (is_far(inverse_n, m)) return classification::FarCase{far_constant(inverse_n, m)};

  const ExponentPair base_pair = exponent_pair(m, n);
  const unsigned long e = make_semi_good(base_pair);
  const ExponentPair semi_good = base_pair.powered(e, 1);
  const LiftExponents lift = lift_to_good(semi_good);
  ExponentPair lifted = semi_good.powered(lift.m_power, lift.n_power);

  if (!(lifted.m() > lifted.n())) {
    throw std::logic_error("classify_pair: lift of (" + m.to_string() + ", " + n.to_string() +
                           ") does not satisfy m^x > n^y");
  }
  if (!is_good_pair(lifted) || is_solvable(lifted).solvable) {
    throw std::logic_error("classify_pair: lifted pair failed good/unsolvable re-verification");
  }
  return classification::GoodLift{e, e * lift.m_power, lift.n_power, std::move(lifted)};
}

}  // namespace ndoubling
