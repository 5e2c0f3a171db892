#pragma once

// Explicit m-adic sibling intervals whose mass ratio under the constructed
// n-adic doubling measure grows without bound, one witness per scale ell.

#include <optional>
#include <string>
#include <vector>

#include "ndoubling/adic.hpp"
#include "ndoubling/measure.hpp"
#include "ndoubling/pairs.hpp"

namespace ndoubling {

enum class WitnessCase {
  FarCaseI,    // point in a middle child of the located interval
  FarCaseII,   // point in its leftmost child
  FarCaseIII,  // point was in the rightmost child; descended descent_depth times
  NonFar,
};

// "FarCaseI", "FarCaseII", "FarCaseIII-depth-<d>" or "NonFar".
std::string case_tag(WitnessCase c, unsigned long descent_depth);

struct DivergenceWitness {
  unsigned long ell = 0;
  WitnessCase case_kind = WitnessCase::FarCaseI;
  unsigned long descent_depth = 0;
  AdicInterval left_interval;
  AdicInterval right_interval;
  // mu(left) / mu(right)
  Rational oriented_ratio;
  // max(oriented_ratio, 1 / oriented_ratio)
  Rational ratio;
  Rational lower_bound;
  // Base-N cells of constant density containing left/right (non-far path only).
  std::optional<AdicInterval> left_enclosure;
  std::optional<AdicInterval> right_enclosure;

  std::string tag() const { return case_tag(case_kind, descent_depth); }
};

// Requires 1/spec.n() to be m-far and ell >= 1. Locates the point ell + 1/n
// in the coarsest m-adic grid finer than n^-(ell+1), descends while the point
// sits in the rightmost child, then compares the leftmost and rightmost
// children. Asserts oriented_ratio >= min(C m, 1) a b^ell with C the exact
// far constant of 1/n in base m. Throws DomainError on a violated
// precondition (naming the common base when the pair is dependent).
DivergenceWitness far_case_witness(const MeasureSpec& spec, const Natural& m, unsigned long ell);

// Requires (M, N) good and ell >= 2, N >= 3. With t = floor_log_ratio(M, ell, N)
// and P = (t-1) + N^-ell, compares K = [P - M^-ell, P) and L = [P, P + M^-ell)
// under the base-N measure with weights (a, b). Asserts they are M-adic
// siblings and that mu(K)/mu(L) = a b^(t-ell).
DivergenceWitness nonfar_case_witness(const ExponentPair& good_pair, const Rational& a,
                                      const Rational& b, unsigned long ell);
DivergenceWitness nonfar_case_witness(const Natural& M, const Natural& N, const Rational& a,
                                      const Rational& b, unsigned long ell);

struct DivergenceSweep {
  PairClassification classification;
  // Base of the measure the witnesses were evaluated under (n, 4 for n = 2, or
  // the lifted n^y) and the m-adic base of the sibling intervals.
  Natural measure_base;
  Natural adic_base;
  std::vector<DivergenceWitness> rows;  // sorted by ell
};

// Routes to the far or the non-far witness per classify_pair(n, m). On the
// non-far path ells below 2 are skipped. Throws DomainError (naming the
// common base) for a dependent pair.
DivergenceSweep divergence_sweep(const Natural& n, const Natural& m,
                                 const std::vector<unsigned long>& ells, const Rational& a,
                                 const Rational& b);
DivergenceSweep divergence_sweep(const Natural& n, const Natural& m, unsigned long ell_from,
                                 unsigned long ell_to, const Rational& a, const Rational& b);

struct DependenceWitness {
  std::size_t n_index = 0;
  std::size_t m_index = 0;
  CommonBase common;
};

struct SeparationTarget {
  Natural m;
  PairClassification classification;
  DivergenceSweep sample;
};

struct SeparationReport {
  bool separable = false;
  std::optional<std::size_t> chosen_i;
  std::vector<SeparationTarget> per_target;
  // One blocking dependence per n_i when inseparable.
  std::vector<DependenceWitness> dependence_witnesses;
  // True when every target takes the far path, so one base-n measure serves
  // all of them.
  bool uniform_measure = false;
};

// Throws DomainError on empty lists.
SeparationReport separate_families(const std::vector<Natural>& ns, const std::vector<Natural>& ms,
                                   const std::vector<unsigned long>& sample_ells,
                                   const Rational& a, const Rational& b);

}  // namespace ndoubling
