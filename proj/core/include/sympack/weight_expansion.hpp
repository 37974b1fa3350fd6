#pragma once

#include <cstddef>
#include <vector>

#include "sympack/rational.hpp"

namespace sympack {

/// Ball capacities equivalent to an ellipsoid for embedding problems.
///
/// For E(1, a) the weights come from running Euclid's algorithm by
/// subtraction on (a, 1): every subtraction emits the smaller of the two
/// numbers. The sequence is non-increasing, its squares sum to `a`, and its
/// length is the sum of the partial quotients of the continued fraction of a.
struct WeightSequence {
  Rational source;
  std::vector<Rational> weights;

  std::size_t size() const noexcept { return weights.size(); }
  Rational sum_of_squares() const;
  Rational sum() const;
};

/// w(a) for rational a >= 1. Throws InvalidInput when a < 1.
WeightSequence weight_sequence(const Rational& a);

/// p(a): number of weights, computed from the continued fraction without
/// materializing the sequence.
std::size_t weight_count(const Rational& a);

/// Partial quotients [a0; a1, ..., an] of a positive rational.
std::vector<mpz_class> continued_fraction(const Rational& a);

/// Weights of E(a, b): min(a, b) * w(max/min). `source` holds max/min.
WeightSequence ellipsoid_weights(const Rational& a, const Rational& b);

}  // namespace sympack
