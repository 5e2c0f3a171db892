#include <doctest.h>

#include <random>

#include "ndoubling/exactnum.hpp"
#include "oracles.hpp"

using namespace ndoubling;

TEST_CASE("rational parsing and normalization") {
  CHECK(Rational::parse("3/6") == Rational(Integer(1), Integer(2)));
  CHECK(Rational::parse("-4/8").to_string() == "-1/2");
  CHECK(Rational::parse("7").is_integer());
  CHECK(Rational::parse("+5/10") == Rational(Integer(1), Integer(2)));
  CHECK(Rational(Integer(6), Integer(-4)).to_string() == "-3/2");
  CHECK_THROWS_AS(Rational(Integer(1), Integer(0)), DomainError);

  SUBCASE("malformed input reports a position") {
    try {
      (void)Rational::parse("12/x4");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.position() == 3);
    }
    CHECK_THROWS_AS(Rational::parse(""), ParseError);
    CHECK_THROWS_AS(Rational::parse("1/"), ParseError);
    CHECK_THROWS_AS(Rational::parse("1//2"), ParseError);
  }
}

TEST_CASE("rational rendering") {
  CHECK(Rational(Integer(1), Integer(3)).to_decimal() == "0.333333333333");
  CHECK(Rational(3).to_decimal() == "3");
  CHECK(Rational(Integer(2), Integer(3)).pow(-2).to_string() == "9/4");
  CHECK(Rational(Integer(-7), Integer(2)).floor() == -4);
}

TEST_CASE("random rationals stay in lowest terms and form a field") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<long> num(-100000, 100000), den(1, 100000);
  auto draw = [&] { return Rational(Integer(num(rng)), Integer(den(rng))); };
  for (int i = 0; i < 500; ++i) {
    const Rational x = draw(), y = draw(), z = draw();
    Integer g;
    mpz_gcd(g.get_mpz_t(), Integer(abs(x.num())).get_mpz_t(), x.den().get_mpz_t());
    CHECK(g == 1);
    CHECK(x.den() > 0);
    CHECK((x + y) + z == x + (y + z));
    CHECK((x * y) * z == x * (y * z));
    CHECK(x + y == y + x);
    CHECK(x * y == y * x);
    CHECK(x * (y + z) == x * y + x * z);
    if (y.sign() != 0) CHECK((x / y) * y == x);
  }
}

TEST_CASE("factorize") {
  CHECK(factorize(108) == PrimeFactorization{{{2, 2}, {3, 3}}});
  CHECK(factorize(6) == PrimeFactorization{{{2, 1}, {3, 1}}});
  CHECK(factorize(1).factors.empty());
  CHECK_THROWS_AS(factorize(0), DomainError);
  CHECK_THROWS_AS(factorize(100, 50), CapacityError);
  // above 2^63 only with a raised bound; exercises the big-integer path
  const Natural wide(Integer(3) * (Integer(1) << 80) * 1000003);
  CHECK_THROWS_AS(factorize(wide), CapacityError);
  CHECK(factorize(wide, Natural(Integer(1) << 120)) ==
        PrimeFactorization{{{2, 80}, {3, 1}, {1000003, 1}}});
  CHECK(factorize(Natural(1099511627791UL)).factors.size() == 1);  // prime near 2^40

  for (unsigned long x = 2; x <= 5000; ++x) {
    const auto f = factorize(x);
    CHECK(f.product() == Natural(x));
    for (std::size_t i = 1; i < f.factors.size(); ++i) {
      CHECK(f.factors[i - 1].prime < f.factors[i].prime);
    }
  }
  // semiprime of two 20-bit primes
  const Natural big = Natural(1000003) * Natural(999983);
  CHECK(factorize(big).factors.size() == 2);
}

TEST_CASE("floor_log_ratio") {
  CHECK(floor_log_ratio(108, 1, 36) == 1);
  CHECK(floor_log_ratio(5, 7, 5) == 7);
  CHECK(floor_log_ratio(2, 10, 3) == 6);
  CHECK(floor_log_ratio(7, 0, 3) == 0);
  CHECK_THROWS_AS(floor_log_ratio(1, 3, 5), DomainError);
  CHECK_THROWS_AS(floor_log_ratio(5, 3, 1), DomainError);

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<unsigned long> base(2, 500), ell(0, 60);
  for (int i = 0; i < 300; ++i) {
    const unsigned long m = base(rng), n = base(rng), l = ell(rng);
    const unsigned long t = floor_log_ratio(m, l, n);
    const Natural rhs = Natural(m).pow(l);
    CHECK(Natural(n).pow(t) <= rhs);
    CHECK(rhs < Natural(n).pow(t + 1));
  }
}

TEST_CASE("multiplicative dependence") {
  CHECK(multiplicatively_dependent(2, 4) == CommonBase{2, 1, 2});
  CHECK_FALSE(multiplicatively_dependent(12, 18));
  CHECK(multiplicatively_dependent(8, 32) == CommonBase{2, 3, 5});
  CHECK(multiplicatively_dependent(36, 216) == CommonBase{6, 2, 3});

  for (unsigned long m = 2; m <= 150; ++m) {
    for (unsigned long n = 2; n <= 150; ++n) {
      const auto got = multiplicatively_dependent(m, n);
      const auto want = oracle::common_base_by_search(m, n);
      REQUIRE(got.has_value() == want.has_value());
      if (got) {
        CHECK(got->base == Natural(want->base));
        CHECK(got->m_exponent == want->s);
        CHECK(got->n_exponent == want->t);
      }
    }
  }
}
