#pragma once

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sympack/rational.hpp"

namespace sympack {

struct Point {
  Rational x;
  Rational y;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Signed shoelace area: positive for counter-clockwise input, negated when
/// the orientation is reversed, 0 for fewer than three vertices or a
/// collinear list.
Rational polytope_area(std::span<const Point> vertices);

/// Convex polygon in the closed first quadrant, vertices counter-clockwise
/// with repeated and collinear vertices removed.
class MomentPolytope {
 public:
  MomentPolytope() = default;
  /// Throws InvalidInput on a negative coordinate.
  explicit MomentPolytope(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  Rational area() const { return polytope_area(vertices_); }
  /// Closed membership test (boundary counts as inside).
  bool contains(const Point& p) const;

 private:
  std::vector<Point> vertices_;
};

struct Ball {
  Rational capacity;
};

struct Ellipsoid {
  Rational a;
  Rational b;
};

/// T(a, b, alpha, beta): moment polytope Conv<(0,0),(0,a),(b,0),(alpha,beta)>.
struct PseudoBall {
  Rational a;
  Rational b;
  Rational alpha;
  Rational beta;
};

/// P^2 with lines of area `scale`.
struct ProjectivePlane {
  Rational scale;
};

using ToricDomain = std::variant<Ball, Ellipsoid, PseudoBall, ProjectivePlane>;

enum class PseudoBallViolation {
  a_not_greater_than_alpha,  // a > alpha fails
  b_not_greater_than_beta,   // b > beta fails
  a_not_less_than_sum,       // a < alpha + beta fails
  b_not_less_than_sum,       // b < alpha + beta fails
};

std::string describe(PseudoBallViolation v);

/// Every strict inequality of the pseudo-ball definition that fails; empty
/// when valid. Non-positive parameters throw InvalidInput instead.
std::vector<PseudoBallViolation> validate_pseudo_ball(const Rational& a, const Rational& b,
                                                      const Rational& alpha, const Rational& beta);

/// Throws InvalidInput on non-positive parameters and ValidationError on a
/// pseudo-ball constraint violation.
void validate(const ToricDomain& domain);

MomentPolytope moment_polytope(const ToricDomain& domain);

/// Symplectic volume, i.e. the area of the moment polytope.
Rational volume(const ToricDomain& domain);

/// Image under (z, w) -> (c z, c w) scaled so capacities multiply by c.
ToricDomain scaled(const ToricDomain& domain, const Rational& c);

/// T(a,b,alpha,beta) is P^2(alpha+beta) minus two ellipsoids.
struct PseudoBallComplement {
  Rational scale;     // alpha + beta
  Ellipsoid first;    // E(alpha+beta-a, alpha)
  Ellipsoid second;   // E(alpha+beta-b, beta)
};

PseudoBallComplement pseudo_ball_complement(const PseudoBall& t);

/// Text form used on the command line: B(3/2), E(1,5/2), T(3/2,3/2,1,1), P2(2).
ToricDomain parse_domain(std::string_view text);
std::string to_string(const ToricDomain& domain);

/// Splits "f(x, y, ...)" into its head and argument list. Throws InvalidInput.
struct CallSyntax {
  std::string head;
  std::vector<std::string> args;
};
CallSyntax parse_call(std::string_view text);

}  // namespace sympack
