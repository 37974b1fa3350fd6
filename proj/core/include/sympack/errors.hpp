#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sympack {

/// Malformed or out-of-domain input: a non-positive capacity, an unparseable
/// rational, a length mismatch. The CLI maps this to exit code 2.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Well-formed input that violates a domain constraint. Carries every
/// violated condition, not just the first.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& what, std::vector<std::string> violations)
      : std::runtime_error(what), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

}  // namespace sympack
