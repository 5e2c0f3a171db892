#include "ndoubling/adic.hpp"

namespace ndoubling {

const char* to_string(ChildPosition position) {
  switch (position) {
    case ChildPosition::Leftmost:
      return "leftmost";
    case ChildPosition::Middle:
      return "middle";
    case ChildPosition::Rightmost:
      return "rightmost";
  }
  return "?";
}

AdicInterval::AdicInterval(Natural base, std::int64_t level, Integer index)
    : base_(std::move(base)), level_(level), index_(std::move(index)) {
  if (base_ < Natural(2)) throw DomainError("adic interval base must be >= 2");
}

Rational AdicInterval::sidelength() const { return Rational(base_).pow(-level_); }

Rational AdicInterval::left() const { return Rational(index_) * sidelength(); }

Rational AdicInterval::right() const { return Rational(Integer(index_ + 1)) * sidelength(); }

bool AdicInterval::contains(const Rational& x) const { return left() <= x && x < right(); }

bool AdicInterval::within(const AdicInterval& other) const {
  return other.left() <= left() && right() <= other.right();
}

std::vector<AdicInterval> AdicInterval::children() const {
  const unsigned long n = base_.to_ulong();
  std::vector<AdicInterval> out;
  out.reserve(n);
  const Integer first = index_ * base_.value();
  for (unsigned long j = 0; j < n; ++j) out.emplace_back(base_, level_ + 1, Integer(first + j));
  return out;
}

AdicInterval AdicInterval::child(const Natural& digit) const {
  if (digit >= base_) throw DomainError("child digit " + digit.to_string() + " out of range");
  return AdicInterval(base_, level_ + 1, Integer(index_ * base_.value() + digit.value()));
}

AdicInterval AdicInterval::leftmost_child() const { return child(Natural(0)); }

AdicInterval AdicInterval::rightmost_child() const {
  return child(Natural(Integer(base_.value() - 1)));
}

AdicInterval AdicInterval::parent() const {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), index_.get_mpz_t(), base_.value().get_mpz_t());
  return AdicInterval(base_, level_ - 1, std::move(q));
}

ChildPosition AdicInterval::position() const {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), index_.get_mpz_t(), base_.value().get_mpz_t());
  if (r == 0) return ChildPosition::Leftmost;
  if (r == base_.value() - 1) return ChildPosition::Rightmost;
  return ChildPosition::Middle;
}

std::string AdicInterval::to_string() const {
  return base_.to_string() + ":" + std::to_string(level_) + ":" + index_.get_str();
}

std::string AdicInterval::endpoints_string() const {
  return left().to_string() + ".." + right().to_string();
}

AdicInterval locate(const Rational& x, const Natural& base, std::int64_t level) {
  if (base < Natural(2)) throw DomainError("locate: base must be >= 2");
  return AdicInterval(base, level, (x * Rational(base).pow(level)).floor());
}

bool are_siblings(const AdicInterval& lhs, const AdicInterval& rhs) {
  if (lhs.base() != rhs.base() || lhs.level() != rhs.level()) {
    throw DomainError("are_siblings: intervals differ in base or level");
  }
  return lhs.parent() == rhs.parent();
}

}  // namespace ndoubling
