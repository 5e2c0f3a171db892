#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ndoubling/exactnum.hpp"

namespace ndoubling {

enum class ChildPosition { Leftmost, Middle, Rightmost };

const char* to_string(ChildPosition position);

// The half-open base-adic interval [index / base^level, (index + 1) / base^level).
//
// Indices are zero-based. Negative levels (cells wider than 1) and negative
// indices (cells left of 0) are allowed.
class AdicInterval {
 public:
  // Throws DomainError when base < 2.
  AdicInterval(Natural base, std::int64_t level, Integer index);

  const Natural& base() const noexcept { return base_; }
  std::int64_t level() const noexcept { return level_; }
  const Integer& index() const noexcept { return index_; }

  Rational sidelength() const;
  Rational left() const;
  Rational right() const;
  bool contains(const Rational& x) const;
  // True iff this interval is a subset of `other` (any bases).
  bool within(const AdicInterval& other) const;

  // The base children at level + 1, left to right.
  std::vector<AdicInterval> children() const;
  AdicInterval child(const Natural& digit) const;
  AdicInterval leftmost_child() const;
  AdicInterval rightmost_child() const;
  AdicInterval parent() const;
  // Position of this interval among the children of its parent.
  ChildPosition position() const;

  // "base:level:index"
  std::string to_string() const;
  // Exact endpoints, "p/q..r/s".
  std::string endpoints_string() const;

  friend bool operator==(const AdicInterval&, const AdicInterval&) = default;

 private:
  Natural base_;
  std::int64_t level_;
  Integer index_;
};

// The unique level-`level` interval of the given base containing x.
AdicInterval locate(const Rational& x, const Natural& base, std::int64_t level);

// Throws DomainError when base or level differ.
bool are_siblings(const AdicInterval& lhs, const AdicInterval& rhs);

}  // namespace ndoubling
