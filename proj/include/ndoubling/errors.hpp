#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ndoubling {

// Input outside the mathematical domain of an operation (zero where a positive
// integer is required, a non-far delta on the far path, a dependent pair, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Input is valid but exceeds a configured resource bound (factorization size,
// orbit length).
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input. position() is the zero-based character offset of
// the first offending character.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace ndoubling
