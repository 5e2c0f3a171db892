#include <doctest.h>

#include "ndoubling/pairs.hpp"
#include "oracles.hpp"

using namespace ndoubling;

TEST_CASE("exponent pairs") {
  const auto p = exponent_pair(108, 6);
  CHECK(p.primes == std::vector<Natural>{2, 3});
  CHECK(p.m_exponents == std::vector<unsigned long>{2, 3});
  CHECK(p.n_exponents == std::vector<unsigned long>{1, 1});
  CHECK(p.m() == Natural(108));
  CHECK(p.n() == Natural(6));

  const auto four = exponent_pair(4, 2);
  CHECK(four.primes == std::vector<Natural>{2});
  CHECK(four.m_exponents == std::vector<unsigned long>{2});
  CHECK(four.n_exponents == std::vector<unsigned long>{1});

  const auto p18 = exponent_pair(18, 12);
  CHECK(p18.m_exponents == std::vector<unsigned long>{1, 2});
  CHECK(p18.n_exponents == std::vector<unsigned long>{2, 1});

  const auto mixed = exponent_pair(10, 21);
  CHECK(mixed.primes == std::vector<Natural>{2, 3, 5, 7});
  CHECK(mixed.m_exponents == std::vector<unsigned long>{1, 0, 1, 0});
  CHECK(mixed.n_exponents == std::vector<unsigned long>{0, 1, 0, 1});
  CHECK(exponent_pair(12, 18).powered(6, 3).m() == Natural(12).pow(6));
}

TEST_CASE("solvability examples") {
  const auto s = is_solvable(108, 6);
  CHECK(s.solvable);
  CHECK(s.ell_min == 2UL);
  CHECK(s.k_witness == Natural(3));
  CHECK_FALSE(is_solvable(108, 36).solvable);
  const auto four = is_solvable(4, 2);
  CHECK(four.solvable);
  CHECK(four.ell_min == 2UL);
  CHECK(four.k_witness == Natural(1));
}

TEST_CASE("solvability closed form agrees with search") {
  for (unsigned long m = 2; m <= 60; ++m) {
    for (unsigned long n = 2; n <= 60; ++n) {
      const auto got = is_solvable(m, n);
      const auto want = oracle::solve_by_search(m, n, 200);
      REQUIRE(got.solvable == want.has_value());
      if (want) {
        CHECK(*got.ell_min == want->ell);
        CHECK(got.k_witness->value() == want->k);
      }
    }
  }
}

TEST_CASE("good and semi-good pairs") {
  CHECK(is_good_pair(108, 36));
  CHECK_FALSE(is_semi_good_pair(108, 36));
  CHECK(is_semi_good_pair(108, 6));
  CHECK_FALSE(is_good_pair(108, 6));
  CHECK_FALSE(is_good_pair(36, 108));
  CHECK_FALSE(is_semi_good_pair(36, 108));
  CHECK_FALSE(is_good_pair(4, 4));
}

TEST_CASE("semi-good exponent and lift") {
  CHECK(make_semi_good(18, 12) == 3);
  CHECK(make_semi_good(108, 6) == 1);
  CHECK(make_semi_good(4, 2) == 1);
  CHECK_THROWS_AS(make_semi_good(10, 3), DomainError);

  CHECK(lift_to_good(108, 6) == LiftExponents{1, 2});
  CHECK(lift_to_good(Natural(18).pow(3), 12) == LiftExponents{2, 3});
  // The naive lift of (4, 2) lands on (4, 4), which is not good.
  CHECK(lift_to_good(4, 2) == LiftExponents{1, 2});
  CHECK_FALSE(is_good_pair(4, 4));
  CHECK_THROWS_AS(lift_to_good(108, 36), DomainError);

  for (unsigned long m = 2; m <= 120; ++m) {
    for (unsigned long n = 2; n < m; ++n) {
      const auto pair = exponent_pair(m, n);
      if (!is_semi_good_pair(pair)) continue;
      const auto l = lift_to_good(pair);
      if (multiplicatively_dependent(m, n)) continue;
      CHECK(is_good_pair(pair.powered(l.m_power, l.n_power)));
    }
  }
}

TEST_CASE("classification") {
  const auto far = classify_pair(3, 5);
  REQUIRE(std::holds_alternative<classification::FarCase>(far));
  CHECK(std::get<classification::FarCase>(far).report.constant ==
        far_constant(Rational(Integer(1), Integer(3)), 5).constant);

  const auto lift = classify_pair(12, 18);
  REQUIRE(std::holds_alternative<classification::GoodLift>(lift));
  const auto& g = std::get<classification::GoodLift>(lift);
  CHECK(g.semi_good_exponent == 3);
  CHECK(g.m_power == 6);
  CHECK(g.n_power == 3);
  CHECK(g.lifted.m() == Natural(18).pow(6));
  CHECK(g.lifted.n() == Natural(12).pow(3));
  CHECK(is_good_pair(g.lifted));
  CHECK_FALSE(is_solvable(g.lifted).solvable);

  const auto dep = classify_pair(2, 4);
  REQUIRE(std::holds_alternative<classification::Dependent>(dep));
  CHECK(std::get<classification::Dependent>(dep).common.base == Natural(2));
  CHECK(kind_name(dep) == "Dependent");

  for (unsigned long n = 2; n <= 80; ++n) {
    for (unsigned long m = 2; m <= 80; ++m) {
      const auto c = classify_pair(n, m);
      CHECK(is_dependent(c) == is_dependent(classify_pair(m, n)));
      CHECK(is_dependent(c) == oracle::common_base_by_search(m, n).has_value());
      if (std::holds_alternative<classification::FarCase>(c)) {
        CHECK(!oracle::representable(Rational(Integer(1), Integer(n)), m));
      }
    }
  }
}
