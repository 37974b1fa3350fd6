#pragma once

#include <cstddef>
#include <string>

#include "sympack/rational.hpp"

namespace sympack {

inline constexpr unsigned kDefaultPrecisionBits = 128;

/// A certified lower bound for a real quantity that may be irrational.
///
/// The stored value is an exact rational that never exceeds the true
/// quantity: either the quantity itself (when it happens to be rational) or a
/// binary float obtained by rounding every intermediate step toward the safe
/// side at `precision_bits()`. Comparisons against it are exact.
class LowerBound {
 public:
  LowerBound(Rational value, unsigned precision_bits, bool exact)
      : value_(std::move(value)), precision_bits_(precision_bits), exact_(exact) {}

  const Rational& value() const noexcept { return value_; }
  unsigned precision_bits() const noexcept { return precision_bits_; }
  /// True when value() equals the quantity exactly.
  bool exact() const noexcept { return exact_; }

  /// Decimal string with `significant_digits` digits, truncated toward -inf,
  /// so the printed number is itself a lower bound.
  std::string decimal(int significant_digits = 20) const;
  double approx() const { return value_.to_double(); }

  /// bound * factor for factor > 0, rounded down at the same precision.
  LowerBound scaled(const Rational& factor) const;

 private:
  Rational value_;
  unsigned precision_bits_;
  bool exact_;
};

/// Smaller of the two bounds (ties keep `a`).
const LowerBound& min(const LowerBound& a, const LowerBound& b);

/// scale * (1 - sqrt(kappa_sq)) / (3 + sqrt(p)), rounded down.
/// Exact when both square roots are rational. Requires 0 <= kappa_sq < 1 and
/// scale > 0.
LowerBound dominance_bound(const Rational& scale, const Rational& kappa_sq, std::size_t p,
                           unsigned precision_bits = kDefaultPrecisionBits);

/// sqrt(x) for x >= 0, rounded down (exact for rational squares).
LowerBound sqrt_lower(const Rational& x, unsigned precision_bits = kDefaultPrecisionBits);

/// Exact square root when x is the square of a rational.
bool rational_sqrt(const Rational& x, Rational& out);

}  // namespace sympack
