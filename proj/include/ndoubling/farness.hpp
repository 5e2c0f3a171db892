#pragma once

#include <optional>

#include "ndoubling/exactnum.hpp"

namespace ndoubling {

// A rational delta is n-far iff it is not of the form k / n^m, i.e. iff its
// reduced denominator has a prime factor not dividing n.
bool is_far(const Rational& delta, const Natural& n);

struct FarReport {
  bool is_far = false;
  // Optimal C = min over m >= 0 of n^m * dist(delta, n^-m Z); in (0, 1/2].
  std::optional<Rational> constant;
  // Smallest m attaining the minimum.
  std::optional<unsigned long> witness_level;
};

// Exact optimal far constant. The fractional parts of n^m * delta form an
// eventually periodic orbit of numerator residues modulo the reduced
// denominator; the minimum is taken over its pre-period and one period.
// Throws CapacityError when the denominator is too large to walk the orbit.
FarReport far_constant(const Rational& delta, const Natural& n);

}  // namespace ndoubling
