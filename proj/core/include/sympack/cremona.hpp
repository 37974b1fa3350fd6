#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sympack/rational.hpp"

namespace sympack {

/// (mu; lambda_1, ..., lambda_n): balls of capacities lambda_i in P^2(mu).
/// Treated as zero-padded to length 3 wherever a move needs three entries.
struct PackingVector {
  Rational mu;
  std::vector<Rational> lambdas;
  friend bool operator==(const PackingVector&, const PackingVector&) = default;
};

/// mu - lambda_1 - lambda_2 - lambda_3 of the sorted, padded vector.
Rational cremona_defect(const PackingVector& v);

/// One Cremona move. Sorts the entries (non-increasing), pads to length 3 and,
/// when the defect d is negative, returns (mu+d; lambda_1+d, lambda_2+d,
/// lambda_3+d, lambda_4, ...) without re-sorting. A vector with d >= 0 is a
/// fixed point and comes back sorted but otherwise unchanged.
PackingVector cremona_step(const PackingVector& v);

enum class RejectionReason { none, negative_entry, mu_exhausted, volume };
std::string describe(RejectionReason reason);

/// Open balls may fill the whole volume; closed balls may not.
enum class VolumeSemantics { open_balls, closed_balls };

struct ReductionStep {
  PackingVector before;  // sorted, zeros dropped
  Rational defect;
  PackingVector after;   // zeros dropped
};

struct ReductionTrace {
  PackingVector input;
  std::vector<ReductionStep> steps;  // last step is the fixed point when accepted
  bool accepted = false;
  RejectionReason reason = RejectionReason::none;
  bool volume_check = false;  // sum lambda_i^2 <= mu^2 (strict for closed balls)
  PackingVector terminal;

  /// Steps with negative defect.
  std::size_t moves() const;
};

struct ReductionOptions {
  VolumeSemantics volume = VolumeSemantics::open_balls;
  bool record_steps = true;
};

/// Reduces by Cremona moves until the defect is non-negative, an entry turns
/// negative, or mu is exhausted. The volume test is done first: mu^2 - sum
/// lambda_i^2 is invariant under moves, so a failing vector is rejected
/// without reduction. Total; never throws on numeric input.
ReductionTrace reduce(const PackingVector& v, const ReductionOptions& options = {});

/// Whether the open balls B(lambda_i) pack P^2(mu). Requires mu > 0 and
/// lambda_i >= 0 (InvalidInput otherwise).
bool decide_ball_packing(const Rational& mu, std::span<const Rational> lambdas,
                         VolumeSemantics volume = VolumeSemantics::open_balls);

/// Largest lambda (to within tol) such that n equal open balls B(lambda)
/// pack P^2(1): the result is accepted and result + tol is rejected.
Rational max_equal_ball(std::size_t n, const Rational& tol);

}  // namespace sympack
