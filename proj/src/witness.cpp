#include "ndoubling/witness.hpp"

#include <algorithm>
#include <stdexcept>

namespace ndoubling {

namespace {

// Case III descents stop once the point leaves the rightmost child; 64 extra
// levels is far beyond the run of trailing (m-1) digits any small 1/n has.
constexpr unsigned long kMaxExtraDescent = 64;

[[noreturn]] void throw_dependent(const Natural& n, const Natural& m, const CommonBase& common) {
  throw DomainError("pair (n=" + n.to_string() + ", m=" + m.to_string() +
                    ") is multiplicatively dependent: common base " + common.base.to_string());
}

Rational normalized(const Rational& oriented) { return max(oriented, oriented.reciprocal()); }

}  // namespace

std::string case_tag(WitnessCase c, unsigned long descent_depth) {
  switch (c) {
    case WitnessCase::FarCaseI:
      return "FarCaseI";
    case WitnessCase::FarCaseII:
      return "FarCaseII";
    case WitnessCase::FarCaseIII:
      return "FarCaseIII-depth-" + std::to_string(descent_depth);
    case WitnessCase::NonFar:
      return "NonFar";
  }
  return "?";
}

DivergenceWitness far_case_witness(const MeasureSpec& spec, const Natural& m, unsigned long ell) {
  if (ell == 0) throw DomainError("far_case_witness: ell must be >= 1");
  if (m < Natural(2)) throw DomainError("far_case_witness: m must be >= 2");
  const Natural& n = spec.n();
  if (auto common = multiplicatively_dependent(m, n)) throw_dependent(n, m, *common);
  const Rational inverse_n(Integer(1), n.value());
  if (!is_far(inverse_n, m)) {
    throw DomainError("far_case_witness: 1/" + n.to_string() + " is not " + m.to_string() + "-far");
  }
  const Rational c = *far_constant(inverse_n, m).constant;

  const Rational point = Rational(ell) + inverse_n;
  const Rational half_width = Rational(n).pow(-static_cast<long>(ell + 1));
  const unsigned long level = floor_log_ratio(n, ell + 1, m) + 1;

  AdicInterval located = locate(point, m, static_cast<std::int64_t>(level));
  if (located.left() < point - half_width || point + half_width < located.right()) {
    throw std::logic_error("far_case_witness: located interval escapes the straddling interval");
  }
  unsigned long descent = 0;
  while (located.rightmost_child().contains(point)) {
    located = located.rightmost_child();
    if (++descent > level + kMaxExtraDescent) {
      throw std::logic_error("far_case_witness: rightmost-child descent did not terminate");
    }
  }

  AdicInterval left = located.leftmost_child();
  AdicInterval right = located.rightmost_child();
  WitnessCase kind = WitnessCase::FarCaseI;
  if (descent > 0) {
    kind = WitnessCase::FarCaseIII;
  } else if (left.contains(point)) {
    kind = WitnessCase::FarCaseII;
  }

  const Rational oriented = measure_interval(left.left(), left.right(), spec) /
                            measure_interval(right.left(), right.right(), spec);
  const Rational bound =
      min(c * Rational(m), Rational(1)) * spec.a() * spec.b().pow(static_cast<long>(ell));
  if (oriented < bound) {
    throw std::logic_error("far_case_witness: ratio " + oriented.to_string() +
                           " below guaranteed bound " + bound.to_string());
  }
  return {ell, kind, descent, std::move(left), std::move(right), oriented, normalized(oriented),
          bound, std::nullopt, std::nullopt};
}

DivergenceWitness nonfar_case_witness(const ExponentPair& good_pair, const Rational& a,
                                      const Rational& b, unsigned long ell) {
  if (!is_good_pair(good_pair)) throw DomainError("nonfar_case_witness: pair is not good");
  if (ell < 2) throw DomainError("nonfar_case_witness: ell must be >= 2");
  const Natural big = good_pair.m();
  const Natural small = good_pair.n();
  if (small < Natural(3)) throw DomainError("nonfar_case_witness: measure base must be >= 3");
  const MeasureSpec spec(small, a, b);

  const unsigned long t = floor_log_ratio(big, ell, small);
  const auto level = static_cast<std::int64_t>(ell);
  const Rational point = Rational(t - 1) + Rational(small).pow(-level);
  const Rational side = Rational(big).pow(-level);

  AdicInterval left = locate(point - side, big, level);
  AdicInterval right = locate(point, big, level);
  if (left.right() != point || right.left() != point) {
    throw std::logic_error("nonfar_case_witness: P is not on the level-ell grid");
  }
  if (!are_siblings(left, right)) {
    throw std::logic_error("nonfar_case_witness: K and L are not siblings");
  }

  const auto coarse = static_cast<std::int64_t>(t);
  AdicInterval left_enclosure = locate(point - Rational(small).pow(-coarse), small, coarse);
  AdicInterval right_enclosure = locate(point, small, coarse);
  if (!left.within(left_enclosure) || !right.within(right_enclosure)) {
    throw std::logic_error("nonfar_case_witness: enclosure failed");
  }

  const Rational oriented = measure_interval(left.left(), left.right(), spec) /
                            measure_interval(right.left(), right.right(), spec);
  const Rational expected = a * b.pow(static_cast<long>(t - ell));
  if (oriented != expected) {
    throw std::logic_error("nonfar_case_witness: ratio " + oriented.to_string() +
                           " differs from a*b^(t-ell) = " + expected.to_string());
  }
  return {ell,
          WitnessCase::NonFar,
          0,
          std::move(left),
          std::move(right),
          oriented,
          normalized(oriented),
          expected,
          std::move(left_enclosure),
          std::move(right_enclosure)};
}

DivergenceWitness nonfar_case_witness(const Natural& M, const Natural& N, const Rational& a,
                                      const Rational& b, unsigned long ell) {
  return nonfar_case_witness(exponent_pair(M, N), a, b, ell);
}

DivergenceSweep divergence_sweep(const Natural& n, const Natural& m,
                                 const std::vector<unsigned long>& ells, const Rational& a,
                                 const Rational& b) {
  PairClassification c = classify_pair(n, m);
  std::vector<unsigned long> sorted = ells;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  if (const auto* dependent = std::get_if<classification::Dependent>(&c)) {
    throw_dependent(n, m, dependent->common);
  }
  if (std::holds_alternative<classification::FarCase>(c)) {
    const MeasureSpec spec(n, a, b);
    DivergenceSweep out{std::move(c), spec.n(), m, {}};
    for (unsigned long ell : sorted) {
      if (ell >= 1) out.rows.push_back(far_case_witness(spec, m, ell));
    }
    return out;
  }
  const auto& lift = std::get<classification::GoodLift>(c);
  DivergenceSweep out{c, lift.lifted.n(), lift.lifted.m(), {}};
  for (unsigned long ell : sorted) {
    if (ell >= 2) out.rows.push_back(nonfar_case_witness(lift.lifted, a, b, ell));
  }
  return out;
}

DivergenceSweep divergence_sweep(const Natural& n, const Natural& m, unsigned long ell_from,
                                 unsigned long ell_to, const Rational& a, const Rational& b) {
  std::vector<unsigned long> ells;
  for (unsigned long ell = ell_from; ell <= ell_to; ++ell) ells.push_back(ell);
  return divergence_sweep(n, m, ells, a, b);
}

SeparationReport separate_families(const std::vector<Natural>& ns, const std::vector<Natural>& ms,
                                   const std::vector<unsigned long>& sample_ells,
                                   const Rational& a, const Rational& b) {
  if (ns.empty() || ms.empty()) throw DomainError("separate_families: empty base list");
  SeparationReport out;
  for (std::size_t i = 0; i < ns.size() && !out.chosen_i; ++i) {
    std::optional<DependenceWitness> blocking;
    for (std::size_t j = 0; j < ms.size() && !blocking; ++j) {
      if (auto common = multiplicatively_dependent(ns[i], ms[j])) {
        blocking = DependenceWitness{i, j, *common};
      }
    }
    if (blocking) {
      out.dependence_witnesses.push_back(*blocking);
    } else {
      out.chosen_i = i;
    }
  }
  if (!out.chosen_i) return out;

  out.separable = true;
  out.dependence_witnesses.clear();
  out.uniform_measure = true;
  const Natural& n = ns[*out.chosen_i];
  for (const auto& m : ms) {
    DivergenceSweep sample = divergence_sweep(n, m, sample_ells, a, b);
    if (!std::holds_alternative<classification::FarCase>(sample.classification)) {
      out.uniform_measure = false;
    }
    PairClassification c = sample.classification;
    out.per_target.push_back({m, std::move(c), std::move(sample)});
  }
  return out;
}

}  // namespace ndoubling
