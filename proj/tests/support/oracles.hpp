#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace sympack::testing {

/// Square-cutting of the 1 x a rectangle, one square at a time.
std::vector<mpq_class> subtraction_weights(const mpq_class& a);

/// Sum of the partial quotients of a > 0 by plain Euclid.
long quotient_sum(const mpq_class& a);

struct BruteClass {
  long k = 0;
  std::vector<long> m;
};

struct BruteMinimum {
  mpq_class value;
  BruteClass witness;
  bool found = false;
};

/// Min of (k - sum m_i l_i)/(3k - sum m_i) over the full box |m_i| <= k with
/// sum m_i^2 <= k^2, area > 0 and chern >= 2, for 1 <= k <= k_max. Ties go to
/// the smallest k, then the lexicographically largest m.
BruteMinimum brute_force_minimum(const std::vector<mpq_class>& lambdas, long k_max);

/// Textbook Cremona reduction of (mu; lambdas), open-ball volume rule.
bool naive_cremona_accepts(const mpq_class& mu, std::vector<mpq_class> lambdas);

/// Twice the signed area, summed by hand over the edges.
mpq_class shoelace(const std::vector<std::pair<mpq_class, mpq_class>>& pts);

/// Seeded generator for exact test inputs.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  /// Uniform-ish p/q in (lo, hi] with 1 <= q <= max_den.
  mpq_class rational(const mpq_class& lo, const mpq_class& hi, long max_den);

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace sympack::testing

namespace sympack::testing {

/// Euclidean distance from (x, y) to the boundary of the closed polygon.
double boundary_distance(const std::vector<std::pair<double, double>>& polygon, double x, double y);

}  // namespace sympack::testing
