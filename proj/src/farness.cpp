#include "ndoubling/farness.hpp"

#include <set>

namespace ndoubling {

namespace {

constexpr unsigned long kMaxOrbitDenominator = 1UL << 32;

void require_base(const Natural& n) {
  if (n < Natural(2)) throw DomainError("far-ness base must be >= 2");
}

}  // namespace

bool is_far(const Rational& delta, const Natural& n) {
  require_base(n);
  Integer den = delta.den();
  Integer g;
  for (;;) {
    mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), n.value().get_mpz_t());
    if (g == 1) break;
    den /= g;
  }
  return den > 1;
}

FarReport far_constant(const Rational& delta, const Natural& n) {
  if (!is_far(delta, n)) return {};
  const Integer q = delta.den();
  if (q > kMaxOrbitDenominator) {
    throw CapacityError("far_constant: denominator " + q.get_str() + " too large for orbit walk");
  }
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), delta.num().get_mpz_t(), q.get_mpz_t());

  std::set<Integer> visited;
  Integer best = q;
  unsigned long best_level = 0;
  for (unsigned long level = 0; visited.insert(r).second; ++level) {
    const Integer distance = r < q - r ? r : Integer(q - r);
    if (distance < best) {
      best = distance;
      best_level = level;
    }
    r = (r * n.value()) % q;
  }
  return {true, Rational(best, q), best_level};
}

}  // namespace ndoubling
