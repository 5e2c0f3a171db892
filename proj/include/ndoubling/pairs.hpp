#pragma once

// Solvability of k / m^(l-1) = 1 / n^l, good and semi-good base pairs, and the
// classification of independent base pairs into the far case and the
// good-pair lift.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ndoubling/exactnum.hpp"
#include "ndoubling/farness.hpp"

namespace ndoubling {

// Prime exponents of n and m aligned over the union of their supports.
struct ExponentPair {
  std::vector<Natural> primes;
  std::vector<unsigned long> n_exponents;
  std::vector<unsigned long> m_exponents;

  Natural n() const;
  Natural m() const;
  // Exponents of (m^m_power, n^n_power).
  ExponentPair powered(unsigned long m_power, unsigned long n_power) const;

  friend bool operator==(const ExponentPair&, const ExponentPair&) = default;
};

ExponentPair exponent_pair(const Natural& m, const Natural& n);

struct SolvabilityResult {
  bool solvable = false;
  std::optional<unsigned long> ell_min;
  std::optional<Natural> k_witness;
};

SolvabilityResult is_solvable(const ExponentPair& pair);
SolvabilityResult is_solvable(const Natural& m, const Natural& n);

bool is_good_pair(const ExponentPair& pair);
bool is_good_pair(const Natural& m, const Natural& n);
bool is_semi_good_pair(const ExponentPair& pair);
bool is_semi_good_pair(const Natural& m, const Natural& n);

// Minimal exponent e with m^e > n and e * b_i > a_i for every prime. Throws
// DomainError when n has a prime factor not dividing m.
unsigned long make_semi_good(const ExponentPair& pair);
unsigned long make_semi_good(const Natural& m, const Natural& n);

// (m^x, n^y) is good where x/y = max_i a_i/b_i in lowest terms.
struct LiftExponents {
  unsigned long m_power = 0;
  unsigned long n_power = 0;

  friend bool operator==(const LiftExponents&, const LiftExponents&) = default;
};

// Throws DomainError when the pair is not semi-good.
LiftExponents lift_to_good(const ExponentPair& pair);
LiftExponents lift_to_good(const Natural& m, const Natural& n);

namespace classification {

// log n / log m rational: both are powers of `common.base`.
struct Dependent {
  CommonBase common;
};

// 1/n is m-far.
struct FarCase {
  FarReport report;
};

// (m^m_power, n^n_power) is a good pair; m_power already includes the
// semi-good exponent.
struct GoodLift {
  unsigned long semi_good_exponent = 1;
  unsigned long m_power = 1;
  unsigned long n_power = 1;
  ExponentPair lifted;
};

}  // namespace classification

using PairClassification =
    std::variant<classification::Dependent, classification::FarCase, classification::GoodLift>;

std::string kind_name(const PairClassification& c);
bool is_dependent(const PairClassification& c);

// Dependent, else FarCase when 1/n is m-far, else GoodLift. The lifted pair
// is re-verified good and unsolvable; a failure there is a std::logic_error.
PairClassification classify_pair(const Natural& n, const Natural& m);

}  // namespace ndoubling
