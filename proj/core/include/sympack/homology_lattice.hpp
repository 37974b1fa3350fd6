#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sympack/lower_bound.hpp"
#include "sympack/rational.hpp"

namespace sympack {

/// B = k L - sum m_i E_i in H_2 of the p-fold blow-up of P^2.
struct HomologyClass {
  long k = 0;
  std::vector<long> m;
  friend bool operator==(const HomologyClass&, const HomologyClass&) = default;
};

/// Cohomology class (1; lambda_1..lambda_p) of a blow-up of P^2 with lines of
/// area 1. kappa^2 = sum lambda_i^2 is kept exact; kappa itself is irrational
/// in general and only ever appears inside rounded bounds.
class BlowupForm {
 public:
  BlowupForm() = default;
  /// Requires every lambda in (0, 1) and sum lambda_i^2 < 1; throws
  /// InvalidInput or ValidationError (infeasible form) otherwise.
  explicit BlowupForm(std::vector<Rational> lambdas);

  const std::vector<Rational>& lambdas() const noexcept { return lambdas_; }
  std::size_t size() const noexcept { return lambdas_.size(); }
  const Rational& kappa_squared() const noexcept { return kappa_sq_; }
  /// Volume (1 - kappa^2) / 2.
  Rational volume() const;

 private:
  std::vector<Rational> lambdas_;
  Rational kappa_sq_;
};

struct ClassInvariants {
  long self_intersection = 0;  // k^2 - sum m_i^2
  long chern = 0;              // c_1(B) = 3k - sum m_i
  Rational area;               // Omega(B) = k - sum m_i lambda_i
};

ClassInvariants class_invariants(const HomologyClass& b, const BlowupForm& form);

/// Certified lower bound (1 - kappa)/(3 + sqrt p) for d_Omega.
LowerBound d_omega_bound(const BlowupForm& form, unsigned precision_bits = kDefaultPrecisionBits);

/// The same bound written through the volume: (1 - sqrt(1 - 2 vol))/(3 + sqrt p),
/// vol in (0, 1/2].
LowerBound volume_form_bound(const Rational& volume, std::size_t p,
                             unsigned precision_bits = kDefaultPrecisionBits);

struct LatticeSearchResult {
  /// min Omega(B)/c_1(B) over 1 <= k <= k_max, sum m_i^2 <= k^2, Omega > 0,
  /// c_1 >= 2. An upper approximation of d_Omega, never d_Omega itself.
  Rational value;
  /// Smallest k attaining the minimum; lexicographically largest m among ties.
  HomologyClass witness;
  long k_max = 0;
  /// Classes with sum m_i^2 <= k^2 and Omega(B) > 0 that were visited.
  std::uint64_t classes_checked = 0;
  /// Of those, how many break Omega(B) > k(1 - kappa) (>= when B^2 = 0).
  /// Evaluated exactly; zero is expected.
  std::uint64_t proof_step_failures = 0;
};

/// Exhaustive search. The k-range is split across `threads` workers (0 picks
/// the hardware concurrency); results are combined by an order-independent
/// minimum, so the answer does not depend on the thread count.
LatticeSearchResult d_omega_search(const BlowupForm& form, long k_max, unsigned threads = 0);

}  // namespace sympack
