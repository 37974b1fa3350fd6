#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sympack/cremona.hpp"
#include "sympack/lower_bound.hpp"
#include "sympack/rational.hpp"
#include "sympack/toric_domains.hpp"

namespace sympack {

/// P^2(mu) blown up at balls of capacities lambdas (mu = 1 is the usual
/// normalization with lines of area 1).
struct BlowupOfP2 {
  Rational mu{1};
  std::vector<Rational> lambdas;
};

using Target = std::variant<BlowupOfP2, Ellipsoid, PseudoBall>;

/// Accepts the domain grammar plus blow-ups: "P2(mu)" or "P2(mu; l1, l2, ...)".
/// "B(c)" is read as the ellipsoid E(c, c).
Target parse_target(std::string_view text);
std::string to_string(const Target& t);
Rational volume(const Target& t);
Target scaled(const Target& t, const Rational& c);
/// Throws InvalidInput / ValidationError for an invalid target.
void validate(const Target& t);

enum class BoundMode { conservative, optimistic };
std::string to_string(BoundMode mode);
BoundMode parse_bound_mode(std::string_view text);

/// Data behind a threshold: bound = factor * scale * (1 - kappa)/(3 + sqrt p),
/// with factor 1/2 in conservative mode.
struct BoundDerivation {
  Rational scale;
  Rational kappa_squared;
  std::size_t p = 0;
  LowerBound optimistic;
  LowerBound conservative;

  const LowerBound& for_mode(BoundMode mode) const {
    return mode == BoundMode::optimistic ? optimistic : conservative;
  }
};

BoundDerivation derive_lambda_bound(const Target& t, unsigned precision_bits = kDefaultPrecisionBits);

/// Certified lower bound for the packing-stability threshold of `t`.
LowerBound lambda_bound(const Target& t, BoundMode mode = BoundMode::conservative,
                        unsigned precision_bits = kDefaultPrecisionBits);

struct BallCheck {
  Rational capacity;
  bool below_threshold = false;
};

struct Certificate {
  Target target;
  BoundMode mode = BoundMode::conservative;
  LowerBound lambda_threshold{Rational(0), kDefaultPrecisionBits, true};
  std::vector<BallCheck> balls;
  Rational target_volume;
  Rational ball_volume;
  Rational volume_slack;  // target_volume - ball_volume
  bool certified = false;
  std::vector<std::string> reasons;  // failed checks, empty when certified
};

/// CERTIFIED means every ball is strictly below the threshold and the balls
/// satisfy the (non-strict) volume constraint, in which case the open-ball
/// packing exists. NOT_CERTIFIED draws no conclusion.
Certificate certify_packing(const Target& t, std::span<const Rational> balls,
                            BoundMode mode = BoundMode::conservative,
                            unsigned precision_bits = kDefaultPrecisionBits);

struct EllipsoidDecision {
  bool accepted = false;
  PackingVector vector;  // normalized by a
  ReductionTrace trace;
};

/// Balls into E(1, a), a > 1 rational: packs P^2(a) with E(a-1, a) (through
/// its weights) plus the balls and asks the Cremona oracle.
EllipsoidDecision decide_balls_into_ellipsoid(const Rational& a, std::span<const Rational> balls);

enum class AxisRole { first_axis, second_axis, cross, free };

/// One branch of the curve at an assigned point: (component, branch index).
struct BranchRef {
  std::size_t component = 0;
  unsigned branch = 0;
  friend bool operator==(const BranchRef&, const BranchRef&) = default;
};

struct EllipsoidAssignment {
  AxisRole role = AxisRole::free;
  Ellipsoid ellipsoid;
  BranchRef first;   // used by first_axis and cross
  BranchRef second;  // used by second_axis and cross
};

struct DirectedCheck {
  bool satisfied = false;
  std::vector<Rational> slack;  // area(component) - assigned load
};

/// Area hypotheses for directing an ellipsoid packing along a curve: each
/// component must have area strictly greater than the sum of the axes
/// assigned to it. Throws InvalidInput on a cross whose two axes use the same
/// branch or on an out-of-range component.
DirectedCheck check_directed_hypotheses(std::span<const Rational> component_areas,
                                        std::span<const EllipsoidAssignment> assignments);

}  // namespace sympack
