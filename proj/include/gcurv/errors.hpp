#pragma once

#include <stdexcept>
#include <string>

namespace gcurv {

// Parameter outside a non-periodic chart interval, or a stencil leaving it.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// First-derivative matrix is rank deficient (not an immersion at that point).
struct DegenerateImmersionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LookupError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// Tube radius at or beyond the declared reach bound.
struct ReachError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace gcurv
