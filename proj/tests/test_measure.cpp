#include <doctest.h>

#include <random>

#include "ndoubling/measure.hpp"
#include "oracles.hpp"

using namespace ndoubling;

namespace {
Rational q(long p, long d) { return Rational(Integer(p), Integer(d)); }
const Rational a = q(1, 2);
const Rational b = q(3, 2);
const MeasureSpec three = MeasureSpec::with_default_weights(3);

std::vector<Rational> densities(const std::vector<CellWeight>& cells) {
  std::vector<Rational> out;
  for (const auto& c : cells) out.push_back(c.density);
  return out;
}
}  // namespace

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(MeasureSpec(3, q(1, 2), q(1, 2)), DomainError);
  CHECK_THROWS_AS(MeasureSpec(3, q(1, 1), q(1, 1)), DomainError);
  CHECK_THROWS_AS(MeasureSpec(3, q(-1, 2), q(5, 2)), DomainError);
  CHECK_THROWS_AS(MeasureSpec(1, a, b), DomainError);
  const MeasureSpec two = MeasureSpec::with_default_weights(2);
  CHECK(two.n() == Natural(4));
  CHECK(two.promoted_from() == Natural(2));
  CHECK_FALSE(three.promoted_from());
}

TEST_CASE("density") {
  CHECK(density(q(7, 6), three) == a);
  CHECK(density(q(35, 18), three) == b * b);
  CHECK(density(-1, three) == 1);
  CHECK(density(q(1, 2), three) == 1);
  // depth cap: [0,1) is redistributed once only
  CHECK(density(0, three) == a);
}

TEST_CASE("unit cells") {
  CHECK(densities(unit_cells(0, three)) == std::vector<Rational>{a, 1, b});
  CHECK(densities(unit_cells(1, three)) == std::vector<Rational>{a * a, a, a * b, 1, b * a, b, b * b});

  for (unsigned long ell = 0; ell <= 6; ++ell) {
    for (unsigned long n : {3UL, 4UL, 7UL}) {
      const MeasureSpec spec(n, q(1, 3), q(5, 3));
      const auto cells = unit_cells(ell, spec);
      Rational mass = 0;
      Rational cursor(ell);
      for (const auto& c : cells) {
        CHECK(c.cell.left() == cursor);
        cursor = c.cell.right();
        mass += c.density * c.cell.sidelength();
        CHECK(c.density.sign() > 0);
        CHECK(c.density == density(c.cell.left(), spec));
      }
      CHECK(cursor == Rational(ell + 1));
      CHECK(mass == 1);
      // same tiling as the level-by-level construction
      const auto built = oracle::construction_cells(ell, n, spec.a(), spec.b());
      CHECK(built.size() == cells.size());
    }
  }
}

TEST_CASE("cdf and interval measure") {
  CHECK(cdf(0, three) == 0);
  CHECK(cdf(1, three) == 1);
  CHECK(cdf(q(1, 3), three) == q(1, 6));
  CHECK(cdf(q(-5, 2), three) == q(-5, 2));
  for (long ell = 0; ell <= 20; ++ell) CHECK(cdf(ell, three) == ell);

  CHECK(measure_interval(2 - q(1, 27), 2 + q(1, 27), three) == b * b / 27 + a * a * a / 27);
  CHECK(measure_interval(-2, 0, three) == 2);
  CHECK(measure_interval(q(-1, 2), q(1, 3), three) == q(1, 2) + q(1, 6));
  CHECK_THROWS_AS(measure_interval(1, 0, three), DomainError);
  for (long ell = 0; ell <= 8; ++ell) CHECK(measure_interval(ell, ell + 1, three) == 1);
}

TEST_CASE("measure agrees with both cell oracles") {
  std::mt19937_64 rng(314159);
  std::uniform_int_distribution<long> den(1, 2000);
  const MeasureSpec five(5, q(1, 4), q(7, 4));
  for (int i = 0; i < 150; ++i) {
    const long d1 = den(rng), d2 = den(rng);
    Rational p(Integer(std::uniform_int_distribution<long>(0, 5 * d1 - 1)(rng)), Integer(d1));
    Rational r(Integer(std::uniform_int_distribution<long>(0, 5 * d2 - 1)(rng)), Integer(d2));
    if (r < p) std::swap(p, r);
    const MeasureSpec& spec = i % 2 ? three : five;
    const Rational got = measure_interval(p, r, spec);
    CHECK(got == cell_overlap_measure(p, r, spec));
    CHECK(got == oracle::measure_by_construction(p, r, spec.n().to_ulong(), spec.a(), spec.b()));
    CHECK(got.sign() >= 0);

    const Rational mid = (p + r) / 2;
    CHECK(measure_interval(p, mid, spec) + measure_interval(mid, r, spec) == got);
  }
}

TEST_CASE("doubling audit") {
  const auto audit = doubling_audit(three, 4, 3);
  CHECK(audit.max_ratio == 3);
  REQUIRE(audit.attained_at);
  CHECK(audit.attained_at->level() == 0);
  const std::set<Rational> allowed{1, a, b, 1 / a, 1 / b, a / b, b / a};
  for (const auto& r : audit.ratios) CHECK(allowed.contains(r));
  CHECK_THROWS_AS(doubling_audit(three, 0, 3), DomainError);

  SUBCASE("matches child masses from measure_interval") {
    for (unsigned long n : {3UL, 4UL, 5UL}) {
      const MeasureSpec spec(n, q(2, 5), q(8, 5));
      const unsigned long depth = 4, range = 4;  // mixes both evaluation routes
      Rational best = 1;
      std::set<Rational> seen;
      for (unsigned long level = 0; level < depth; ++level) {
        const unsigned long count = range * Natural(n).pow(level).to_ulong();
        for (unsigned long k = 0; k < count; ++k) {
          const auto kids = AdicInterval(n, static_cast<std::int64_t>(level), Integer(k)).children();
          std::vector<Rational> mass;
          for (const auto& c : kids) mass.push_back(measure_interval(c.left(), c.right(), spec));
          for (const auto& x : mass) {
            for (const auto& y : mass) {
              seen.insert(x / y);
              best = max(best, x / y);
            }
          }
        }
      }
      const auto got = doubling_audit(spec, depth, range);
      CHECK(got.max_ratio == best);
      CHECK(got.ratios == seen);
      CHECK(got.max_ratio == spec.b() / spec.a());
    }
  }
}

TEST_CASE("non-doubling witness") {
  CHECK(non_doubling_witness(three, 1).ratio == b / (a * a));
  CHECK(non_doubling_witness(three, 2).ratio == 18);
  CHECK(non_doubling_witness(three, 2).left == 2 - q(1, 27));
  Rational previous = 0;
  for (unsigned long ell = 1; ell <= 12; ++ell) {
    const auto w = non_doubling_witness(three, ell);
    CHECK(w.ratio == b.pow(static_cast<long>(ell)) / a.pow(static_cast<long>(ell + 1)));
    CHECK(previous < w.ratio);
    previous = w.ratio;
  }
  CHECK_THROWS_AS(non_doubling_witness(three, 0), DomainError);
}
