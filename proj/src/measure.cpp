#include "ndoubling/measure.hpp"

#include <future>
#include <map>

namespace ndoubling {

Rational default_weight_a() { return Rational(Integer(1), Integer(2)); }
Rational default_weight_b() { return Rational(Integer(3), Integer(2)); }

MeasureSpec::MeasureSpec(Natural n, Rational a, Rational b)
    : n_(std::move(n)), a_(std::move(a)), b_(std::move(b)) {
  if (n_ < Natural(2)) throw DomainError("measure base must be >= 2");
  if (n_ == Natural(2)) {
    promoted_from_ = n_;
    n_ = Natural(4);
  }
  if (!n_.fits_ulong()) throw CapacityError("measure base " + n_.to_string() + " too large");
  if (a_ + b_ != Rational(2)) throw DomainError("weights must satisfy a + b = 2");
  if (!(Rational(0) < a_ && a_ < Rational(1) && Rational(1) < b_)) {
    throw DomainError("weights must satisfy 0 < a < 1 < b");
  }
}

MeasureSpec MeasureSpec::with_default_weights(Natural n) {
  return MeasureSpec(std::move(n), default_weight_a(), default_weight_b());
}

const Rational& MeasureSpec::factor(unsigned long digit) const {
  if (digit == 0) return a_;
  if (digit + 1 == n_.to_ulong()) return b_;
  return one_;
}

namespace {

unsigned long unit_index(const Rational& x) {
  const Integer l = x.floor();
  if (!l.fits_ulong_p()) throw CapacityError("point " + x.to_string() + " too far right");
  return l.get_ui();
}

// Splits y in [0, 1) into its next base-n digit and the scaled remainder.
unsigned long next_digit(Rational& y, const Rational& base) {
  y *= base;
  const Integer d = y.floor();
  y -= Rational(d);
  return d.get_ui();
}

// mu([l, l + y)) for y in [0, 1), where the unit interval has l+1 levels of
// redistribution. Hot path of the doubling audit, hence raw mpz/mpq: digits
// of y come from integer long division, `mass` is density times width of the
// current spine cell.
Rational unit_cdf(const Rational& y, unsigned long depth, const MeasureSpec& spec) {
  const unsigned long n = spec.n().to_ulong();
  const mpq_class& a = spec.a().mpq();
  const mpq_class inv_n(1, n);
  Integer num = y.num();
  const Integer den = y.den();
  Integer digit;
  mpq_class acc = 0;
  mpq_class mass = 1;
  mpq_class term;
  for (unsigned long i = 0; i < depth; ++i) {
    mass *= inv_n;
    num *= n;
    mpz_fdiv_qr(digit.get_mpz_t(), num.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    const unsigned long d = digit.get_ui();
    if (d > 0) {
      // left siblings: one leftmost (factor a) and d-1 middles (factor 1)
      term = a + (d - 1);
      acc += mass * term;
    }
    if (d != 0 && d + 1 != n) break;
    mass *= spec.factor(d).mpq();
  }
  term = mpq_class(num, den);
  term.canonicalize();
  acc += mass * term;
  return Rational(acc.get_num(), acc.get_den());
}

void enumerate_cells(const AdicInterval& cell, const Rational& w, unsigned long depth,
                     unsigned long max_depth, const MeasureSpec& spec,
                     std::vector<CellWeight>& out) {
  if (depth == max_depth) {
    out.push_back({cell, w});
    return;
  }
  const unsigned long n = spec.n().to_ulong();
  for (unsigned long j = 0; j < n; ++j) {
    AdicInterval child = cell.child(Natural(j));
    if (j == 0 || j + 1 == n) {
      enumerate_cells(child, w * spec.factor(j), depth + 1, max_depth, spec, out);
    } else {
      out.push_back({std::move(child), w});
    }
  }
}

struct UnitAudit {
  // distinct child-mass profiles c_j / c_0, with one interval realizing each
  std::map<std::vector<Rational>, AdicInterval> profiles;
  std::size_t intervals_checked = 0;
};

UnitAudit audit_unit(const MeasureSpec& spec, unsigned long unit, unsigned long max_depth) {
  const unsigned long n = spec.n().to_ulong();
  const Natural cells_per_unit = spec.n().pow(max_depth);
  const unsigned long count = cells_per_unit.to_ulong();

  // Masses of the finest cells. Only ratios inside one unit matter, so when
  // the grid is at least as deep as the redistribution every cell has
  // constant density and its mass is recorded in units of n^-max_depth.
  std::vector<Rational> masses;
  masses.reserve(count);
  if (max_depth >= unit + 1) {
    const unsigned long scan = unit + 1;
    std::vector<unsigned long> place(scan);
    unsigned long pw = count;
    for (auto& p : place) p = pw /= n;
    // powers[z][o] = a^z b^o
    std::vector<std::vector<Rational>> powers(scan + 1);
    for (unsigned long z = 0; z <= scan; ++z) {
      for (unsigned long o = 0; o + z <= scan; ++o) {
        powers[z].push_back(spec.a().pow(static_cast<long>(z)) * spec.b().pow(static_cast<long>(o)));
      }
    }
    for (unsigned long j = 0; j < count; ++j) {
      unsigned long zeros = 0, tops = 0;
      for (unsigned long i = 0; i < scan; ++i) {
        const unsigned long d = (j / place[i]) % n;
        if (d == 0) {
          ++zeros;
        } else if (d + 1 == n) {
          ++tops;
        } else {
          break;
        }
      }
      masses.push_back(powers[zeros][tops]);
    }
  } else {
    const Integer scaled_unit = Integer(unit) * cells_per_unit.value();
    Rational previous = cdf(Rational(unit), spec);
    for (unsigned long j = 1; j <= count; ++j) {
      Rational current = cdf(Rational(scaled_unit + j, cells_per_unit.value()), spec);
      masses.push_back(current - previous);
      previous = std::move(current);
    }
  }

  UnitAudit out;
  bool seen_flat = false;  // the all-ones profile is recorded once
  for (unsigned long level = max_depth; level-- > 0;) {
    const std::size_t parents = masses.size() / n;
    std::vector<Rational> parent_masses;
    parent_masses.reserve(parents);
    for (std::size_t p = 0; p < parents; ++p) {
      const Rational& first = masses[p * n];
      bool flat = true;
      for (unsigned long j = 1; j < n && flat; ++j) flat = masses[p * n + j] == first;
      if (flat && seen_flat) {
        parent_masses.push_back(first * Rational(n));
        continue;
      }
      seen_flat = seen_flat || flat;
      std::vector<Rational> profile;
      profile.reserve(n - 1);
      Rational total = first;
      for (unsigned long j = 1; j < n; ++j) {
        const Rational& c = masses[p * n + j];
        profile.push_back(c / first);
        total += c;
      }
      if (!out.profiles.contains(profile)) {
        const Integer index = Integer(unit) * spec.n().pow(level).value() + Integer(p);
        out.profiles.emplace(std::move(profile),
                             AdicInterval(spec.n(), static_cast<std::int64_t>(level), index));
      }
      parent_masses.push_back(std::move(total));
    }
    out.intervals_checked += parents;
    masses = std::move(parent_masses);
  }
  return out;
}

}  // namespace

Rational density(const Rational& x, const MeasureSpec& spec) {
  if (x.sign() < 0) return Rational(1);
  const unsigned long l = unit_index(x);
  const unsigned long n = spec.n().to_ulong();
  const Rational base(spec.n());
  Rational y = x - Rational(l);
  Rational w = 1;
  for (unsigned long i = 0; i <= l; ++i) {
    const unsigned long d = next_digit(y, base);
    if (d != 0 && d + 1 != n) return w;
    w *= spec.factor(d);
  }
  return w;
}

std::vector<CellWeight> unit_cells(unsigned long ell, const MeasureSpec& spec) {
  std::vector<CellWeight> out;
  enumerate_cells(AdicInterval(spec.n(), 0, Integer(ell)), Rational(1), 0, ell + 1, spec, out);
  return out;
}

Rational cdf(const Rational& x, const MeasureSpec& spec) {
  if (x.sign() < 0) return x;
  const unsigned long l = unit_index(x);
  return Rational(l) + unit_cdf(x - Rational(l), l + 1, spec);
}

Rational measure_interval(const Rational& p, const Rational& q, const MeasureSpec& spec) {
  if (q < p) throw DomainError("measure_interval: p > q (" + p.to_string() + " > " + q.to_string() + ")");
  return cdf(q, spec) - cdf(p, spec);
}

Rational cell_overlap_measure(const Rational& p, const Rational& q, const MeasureSpec& spec) {
  if (q < p) throw DomainError("cell_overlap_measure: p > q");
  Rational total = 0;
  if (p.sign() < 0) total += min(q, Rational(0)) - p;
  if (q.sign() <= 0) return total;
  const Rational from = max(p, Rational(0));
  const unsigned long first = unit_index(from);
  const unsigned long last = unit_index(q) - (q.is_integer() ? 1 : 0);
  for (unsigned long ell = first; ell <= last; ++ell) {
    for (const auto& [cell, w] : unit_cells(ell, spec)) {
      const Rational lo = max(cell.left(), from);
      const Rational hi = min(cell.right(), q);
      if (lo < hi) total += w * (hi - lo);
    }
  }
  return total;
}

DoublingAudit doubling_audit(const MeasureSpec& spec, unsigned long max_depth,
                             unsigned long range_end) {
  if (max_depth == 0) throw DomainError("doubling_audit: max_depth must be >= 1");
  std::vector<std::future<UnitAudit>> jobs;
  jobs.reserve(range_end);
  for (unsigned long unit = 0; unit < range_end; ++unit) {
    jobs.push_back(std::async(std::launch::async, audit_unit, std::cref(spec), unit, max_depth));
  }

  std::map<std::vector<Rational>, AdicInterval> profiles;
  DoublingAudit out{Rational(1), {}, std::nullopt, 0};
  for (auto& job : jobs) {
    UnitAudit unit = job.get();
    out.intervals_checked += unit.intervals_checked;
    profiles.merge(unit.profiles);
  }

  for (const auto& [profile, interval] : profiles) {
    std::vector<Rational> relative{Rational(1)};
    relative.insert(relative.end(), profile.begin(), profile.end());
    Rational lo = relative.front();
    Rational hi = relative.front();
    for (const auto& r : relative) {
      lo = min(lo, r);
      hi = max(hi, r);
      for (const auto& s : relative) out.ratios.insert(r / s);
    }
    const Rational spread = hi / lo;
    if (!out.attained_at || out.max_ratio < spread) {
      out.max_ratio = spread;
      out.attained_at = interval;
    }
  }
  return out;
}

NonDoublingWitness non_doubling_witness(const MeasureSpec& spec, unsigned long ell) {
  if (ell == 0) throw DomainError("non_doubling_witness: ell must be >= 1");
  const Rational centre(ell);
  const Rational half = Rational(spec.n()).pow(-static_cast<long>(ell + 1));
  NonDoublingWitness out{centre - half, centre + half, Rational(0)};
  out.ratio = measure_interval(out.left, centre, spec) / measure_interval(centre, out.right, spec);
  return out;
}

}  // namespace ndoubling
