#include "sympack/weight_expansion.hpp"

#include <algorithm>
#include <limits>

#include "sympack/errors.hpp"

namespace sympack {

Rational WeightSequence::sum_of_squares() const {
  Rational s;
  for (const auto& w : weights) s += w * w;
  return s;
}

Rational WeightSequence::sum() const {
  Rational s;
  for (const auto& w : weights) s += w;
  return s;
}

std::vector<mpz_class> continued_fraction(const Rational& a) {
  if (a.sign() <= 0) throw InvalidInput("continued fraction of a non-positive number");
  std::vector<mpz_class> quotients;
  mpz_class num = a.numerator();
  mpz_class den = a.denominator();
  while (den != 0) {
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    quotients.push_back(q);
    num = den;
    den = r;
  }
  return quotients;
}

WeightSequence weight_sequence(const Rational& a) {
  if (a < Rational(1)) {
    throw InvalidInput("weight expansion needs a >= 1, got " + a.str() +
                       "; normalize E(x,y) to min(x,y)*E(1,max/min) first");
  }
  // Block form of the subtraction algorithm: the smaller number y is emitted
  // floor(x/y) times before the roles swap.
  WeightSequence out{a, {}};
  Rational x = a;
  Rational y(1);
  while (!x.is_zero()) {
    if (x < y) std::swap(x, y);
    const Rational ratio = x / y;
    const mpz_class q = ratio.floor();
    if (q > std::numeric_limits<long>::max()) throw InvalidInput("weight expansion too long");
    const long count = q.get_si();
    out.weights.insert(out.weights.end(), static_cast<std::size_t>(count), y);
    x -= Rational(q, mpz_class(1)) * y;
  }
  return out;
}

std::size_t weight_count(const Rational& a) {
  if (a < Rational(1)) throw InvalidInput("weight count needs a >= 1, got " + a.str());
  mpz_class total = 0;
  for (const auto& q : continued_fraction(a)) total += q;
  if (!total.fits_ulong_p()) throw InvalidInput("weight count overflows");
  return total.get_ui();
}

WeightSequence ellipsoid_weights(const Rational& a, const Rational& b) {
  if (a.sign() <= 0 || b.sign() <= 0) {
    throw InvalidInput("ellipsoid parameters must be positive");
  }
  const Rational& lo = std::min(a, b);
  const Rational& hi = std::max(a, b);
  WeightSequence w = weight_sequence(hi / lo);
  for (auto& x : w.weights) x *= lo;
  return w;
}

}  // namespace sympack
