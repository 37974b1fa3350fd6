#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sympack/lower_bound.hpp"
#include "sympack/rational.hpp"
#include "sympack/stability_certifier.hpp"
#include "sympack/toric_domains.hpp"

namespace sympack {

/// One weighted curve of a singular polarization. Curves are cyclically
/// ordered: curve i meets curve i+1 (indices mod l) at the point x_i.
struct PolarizationCurve {
  Rational area;     // symplectic area of the curve
  Rational residue;  // weight alpha_i
};

struct Polarization {
  std::vector<PolarizationCurve> curves;
  std::optional<Rational> total_volume;

  std::size_t size() const noexcept { return curves.size(); }
};

/// 1/2 sum alpha_i area_i.
Rational implied_volume(const Polarization& p);

struct PolarizationReport {
  Rational implied_volume;
  std::vector<std::string> violations;
  std::vector<std::string> notes;

  bool ok() const noexcept { return violations.empty(); }
};

/// Positivity, area_i >= 10 alpha_j for all i, j, and (when given) the
/// volume identity. Every failure is reported separately; never throws.
PolarizationReport validate_polarization(const Polarization& p);

/// Toric coordinates (R = r^2) of a point near a disc or cross.
struct FlowState {
  double r1 = 0;
  double theta1 = 0;
  double r2 = 0;
  double theta2 = 0;
};

/// Explicit trajectory of the Liouville field with fixed point (fixed_r1,
/// fixed_r2): R_k(t) = fixed_k + (R_k - fixed_k) e^{-t}, angles unchanged.
FlowState liouville_flow(double fixed_r1, double fixed_r2, const FlowState& state, double t);

/// Repulsion basin of a disc of area a on a curve with residue alpha.
Ellipsoid basin_of_disc(const Rational& a, const Rational& alpha);

/// Repulsion basin of the cross D(a_i) u D(a_j): the pseudo-ball whose
/// moment polytope is Conv<(0,0),(a_i,0),(0,a_j),(alpha_j,alpha_i)>, i.e.
/// T(a_j, a_i, alpha_j, alpha_i). Throws ValidationError unless
/// a_i > alpha_i, a_j > alpha_j and a_i, a_j < alpha_i + alpha_j.
PseudoBall basin_of_cross(const Rational& a_i, const Rational& alpha_i, const Rational& a_j,
                          const Rational& alpha_j);

/// Local model of a basin: the flow contracts toward `fixed`, and a point
/// belongs to the basin when its backward ray leaves through one of the
/// axis segments [0, axis_r1] x {0} or {0} x [0, axis_r2].
struct BasinModel {
  double fixed_r1 = 0;
  double fixed_r2 = 0;
  double axis_r1 = 0;
  double axis_r2 = 0;  // 0 for a disc
};

BasinModel disc_basin_model(const Rational& a, const Rational& alpha);
BasinModel cross_basin_model(const Rational& a_i, const Rational& alpha_i, const Rational& a_j,
                             const Rational& alpha_j);

/// Classifies (r1, r2) by iterating the forward flow until it is within
/// `tolerance` of the fixed point and reading off the approach direction.
bool in_basin_by_flow(const BasinModel& model, double r1, double r2, double tolerance = 1e-9);

/// Disc areas on curve i: own disc D_i, the disc D_{i,i-1} around x_{i-1}
/// and the disc D_{i,i+1} around x_i. With a single curve there are no
/// crosses and prev = next = 0.
struct CurveDiscs {
  Rational own;
  Rational prev;
  Rational next;
};

struct DiscAllocation {
  std::vector<CurveDiscs> curves;
};

/// Cross discs at the midpoint of ]alpha_i, alpha_i + alpha_{i+-1}[, own disc
/// gets the rest. Throws ValidationError on an invalid polarization or a
/// non-positive own disc.
DiscAllocation plan_discs(const Polarization& p);

/// Row sums, positivity and cross-disc intervals; empty when valid.
std::vector<std::string> allocation_violations(const Polarization& p, const DiscAllocation& alloc);

enum class PieceKind { ellipsoid, pseudo_ball };

struct Piece {
  PieceKind kind = PieceKind::ellipsoid;
  std::size_t index = 0;  // curve i for E_i, crossing x_i for T_{i,i+1}
  ToricDomain domain;
  Rational volume;
  std::string label;
};

/// Pieces in cascade order E_1, T_12, E_2, T_23, ..., E_l, T_l1.
std::vector<Piece> decomposition_pieces(const Polarization& p, const DiscAllocation& alloc);

/// Re-solves the disc areas so the pieces get exactly `targets` (in cascade
/// order). Requires sum(targets) == sum of current piece volumes. Throws
/// ValidationError on a closure failure or when a disc leaves its interval.
DiscAllocation perturb_allocation(const Polarization& p, const DiscAllocation& alloc,
                                  std::span<const Rational> targets);

/// Largest delta such that retargeting every piece volume by strictly less
/// than delta (with unchanged total) keeps every disc inside its interval.
/// nullopt (infinite) for a single piece.
std::optional<Rational> retarget_slack(const Polarization& p, const DiscAllocation& alloc);

struct PartitionResult {
  std::vector<Rational> volumes;  // input balls first, then fillers
  std::size_t input_count = 0;
  std::vector<std::size_t> piece_of;
  std::vector<Rational> subset_volumes;
  std::vector<Rational> deviations;  // subset - piece
  Rational max_deviation;
  bool within_tolerance = false;
};

/// Greedy: largest ball first, into the piece with the largest remaining
/// deficit (lowest index on ties). With `pad`, filler volumes each smaller
/// than delta make the totals match exactly. Throws ValidationError when the
/// balls exceed the total volume or one ball exceeds every piece by delta.
PartitionResult partition_balls(std::span<const Rational> ball_volumes, std::span<const Rational> piece_volumes,
                                const std::optional<Rational>& delta, bool pad = false);

struct StabilityReport {
  std::vector<LowerBound> piece_bounds;
  std::size_t limiting_piece = 0;
  LowerBound pieces_bound{Rational(0), kDefaultPrecisionBits, true};
  std::optional<Rational> delta;
  std::optional<LowerBound> sqrt_two_delta;
  LowerBound lambda_prime{Rational(0), kDefaultPrecisionBits, true};
  bool delta_limited = false;
};

/// min(min over pieces of lambda_bound, sqrt(2 delta)), rounded down.
StabilityReport stability_constant(const Polarization& p, const DiscAllocation& alloc,
                                   BoundMode mode = BoundMode::conservative,
                                   unsigned precision_bits = kDefaultPrecisionBits);

Target piece_target(const Piece& piece);

inline constexpr const char* kCrossConvention =
    "cross basin at x_i is T(A_{i+1,i}, A_{i,i+1}, alpha_{i+1}, alpha_i) with hull "
    "(0,0),(A_{i,i+1},0),(0,A_{i+1,i}),(alpha_{i+1},alpha_i); cross discs on curve i lie in "
    "]alpha_i, alpha_i + alpha_{i+-1}[";

struct DecompositionPlan {
  Polarization polarization;
  PolarizationReport validation;
  DiscAllocation allocation;
  std::vector<Piece> pieces;
  StabilityReport stability;
  BoundMode mode = BoundMode::conservative;
};

DecompositionPlan decompose(const Polarization& p, BoundMode mode = BoundMode::conservative,
                            unsigned precision_bits = kDefaultPrecisionBits);

struct PackingPlan {
  PartitionResult partition;
  std::optional<DiscAllocation> perturbed;
  std::vector<Piece> perturbed_pieces;
  std::vector<Certificate> certificates;
  bool certified = false;
  std::vector<std::string> reasons;
};

/// Splits balls (by capacity) over the pieces, retargets the pieces to the
/// subset volumes and certifies each piece with its subset.
PackingPlan plan_packing(const DecompositionPlan& plan, std::span<const Rational> capacities,
                         unsigned precision_bits = kDefaultPrecisionBits);

}  // namespace sympack
