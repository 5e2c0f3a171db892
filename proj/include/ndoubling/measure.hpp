#pragma once

// The n-adic doubling measure built by iterated weight redistribution.
//
// On (-inf, 0) the measure is Lebesgue. On each unit interval [l, l+1), l >= 0,
// the leftmost n-adic child is reweighted by a and the rightmost by b, and the
// redistribution is repeated inside the reweighted children only, l+1 levels
// deep in total. A point's density is therefore read off its base-n digits:
// a per leading 0, b per leading n-1, stopping at the first middle digit or
// after l+1 digits.

#include <optional>
#include <set>
#include <vector>

#include "ndoubling/adic.hpp"
#include "ndoubling/exactnum.hpp"

namespace ndoubling {

class MeasureSpec {
 public:
  // Requires a + b == 2 and 0 < a < 1 < b. A base of 2 is replaced by 4 (both
  // generate the same doubling class) and the original is kept in
  // promoted_from(). Throws DomainError on invalid parameters.
  MeasureSpec(Natural n, Rational a, Rational b);

  // a = 1/2, b = 3/2.
  static MeasureSpec with_default_weights(Natural n);

  const Natural& n() const noexcept { return n_; }
  const Rational& a() const noexcept { return a_; }
  const Rational& b() const noexcept { return b_; }
  const std::optional<Natural>& promoted_from() const noexcept { return promoted_from_; }

  // Weight factor applied to the child with the given digit of a redistributed cell.
  const Rational& factor(unsigned long digit) const;

 private:
  Natural n_;
  Rational a_;
  Rational b_;
  Rational one_ = 1;
  std::optional<Natural> promoted_from_;
};

Rational default_weight_a();
Rational default_weight_b();

struct CellWeight {
  AdicInterval cell;
  Rational density;
};

Rational density(const Rational& x, const MeasureSpec& spec);

// Maximal constant-density cells tiling [ell, ell+1), left to right, obtained
// by explicit enumeration of the redistribution tree.
std::vector<CellWeight> unit_cells(unsigned long ell, const MeasureSpec& spec);

// F(x) = mu([0, x)) for x >= 0 and F(x) = x for x < 0.
Rational cdf(const Rational& x, const MeasureSpec& spec);

// mu([p, q)). Throws DomainError when p > q.
Rational measure_interval(const Rational& p, const Rational& q, const MeasureSpec& spec);

// mu([p, q)) as the sum of density x overlap length over the unit_cells of
// every unit interval meeting [p, q), plus the Lebesgue part left of 0. An
// enumeration route independent of cdf(). Throws DomainError when p > q.
Rational cell_overlap_measure(const Rational& p, const Rational& q, const MeasureSpec& spec);

struct DoublingAudit {
  // max over audited intervals of max_{j1,j2} mu(I_j1) / mu(I_j2)
  Rational max_ratio;
  // every distinct child-to-child ratio observed
  std::set<Rational> ratios;
  // an interval whose children attain max_ratio
  std::optional<AdicInterval> attained_at;
  std::size_t intervals_checked = 0;
};

// Exhaustive check of the n-adic child ratios over every n-adic interval
// I of [0, range_end) at levels 0 .. max_depth-1. Unit intervals are audited
// in parallel. Throws DomainError when max_depth == 0.
DoublingAudit doubling_audit(const MeasureSpec& spec, unsigned long max_depth,
                             unsigned long range_end);

struct NonDoublingWitness {
  Rational left;   // ell - n^-(ell+1)
  Rational right;  // ell + n^-(ell+1)
  Rational ratio;  // mu(left half) / mu(right half)
};

// The interval straddling the integer ell whose halves have masses in ratio
// b^ell / a^(ell+1). Throws DomainError when ell == 0.
NonDoublingWitness non_doubling_witness(const MeasureSpec& spec, unsigned long ell);

}  // namespace ndoubling
