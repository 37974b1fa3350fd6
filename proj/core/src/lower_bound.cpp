#include "sympack/lower_bound.hpp"

#include <cmath>

#include "mpfr_support.hpp"
#include "sympack/errors.hpp"

namespace sympack {

using detail::BigFloat;

namespace {

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

Rational pow10_rational(long e) {
  if (e >= 0) return Rational(pow10(static_cast<unsigned long>(e)), mpz_class(1));
  return Rational(mpz_class(1), pow10(static_cast<unsigned long>(-e)));
}

bool mpz_square_root(const mpz_class& v, mpz_class& out) {
  if (v < 0 || !mpz_perfect_square_p(v.get_mpz_t())) return false;
  mpz_sqrt(out.get_mpz_t(), v.get_mpz_t());
  return true;
}

}  // namespace

bool rational_sqrt(const Rational& x, Rational& out) {
  mpz_class n, d;
  if (!mpz_square_root(x.numerator(), n) || !mpz_square_root(x.denominator(), d)) return false;
  out = Rational(n, d);
  return true;
}

std::string LowerBound::decimal(int significant_digits) const {
  if (significant_digits < 1) significant_digits = 1;
  if (value_.sign() == 0) return "0";
  const bool negative = value_.sign() < 0;
  const Rational mag = abs(value_);

  // Decimal exponent e with 10^e <= mag < 10^(e+1).
  long e = static_cast<long>(std::floor(std::log10(mag.to_double())));
  while (pow10_rational(e) > mag) --e;
  while (pow10_rational(e + 1) <= mag) ++e;

  const long shift = significant_digits - 1 - e;
  const Rational scaled_value = mag * pow10_rational(shift);
  // Toward -inf: magnitudes of negative values round up.
  const mpz_class digits = negative ? scaled_value.ceil() : scaled_value.floor();

  std::string s = digits.get_str();
  std::string out;
  if (shift <= 0) {
    out = s + std::string(static_cast<std::size_t>(-shift), '0');
  } else if (static_cast<long>(s.size()) > shift) {
    out = s.substr(0, s.size() - static_cast<std::size_t>(shift)) + "." +
          s.substr(s.size() - static_cast<std::size_t>(shift));
  } else {
    out = "0." + std::string(static_cast<std::size_t>(shift) - s.size(), '0') + s;
  }
  return negative ? "-" + out : out;
}

LowerBound LowerBound::scaled(const Rational& factor) const {
  if (factor.sign() <= 0) throw InvalidInput("bound scale factor must be positive");
  if (exact_) return LowerBound(value_ * factor, precision_bits_, true);
  BigFloat v(precision_bits_);
  mpfr_set_q(v.get(), value_.raw().get_mpq_t(), MPFR_RNDD);
  mpfr_mul_q(v.get(), v.get(), factor.raw().get_mpq_t(), MPFR_RNDD);
  return LowerBound(v.to_rational(), precision_bits_, false);
}

const LowerBound& min(const LowerBound& a, const LowerBound& b) {
  return b.value() < a.value() ? b : a;
}

LowerBound dominance_bound(const Rational& scale, const Rational& kappa_sq, std::size_t p,
                           unsigned precision_bits) {
  if (scale.sign() <= 0) throw InvalidInput("bound scale must be positive");
  if (kappa_sq.sign() < 0 || kappa_sq >= Rational(1)) {
    throw InvalidInput("kappa^2 must lie in [0, 1)");
  }
  if (precision_bits < 16) throw InvalidInput("precision must be at least 16 bits");

  Rational kappa;
  Rational root_p;
  const bool kappa_rational = rational_sqrt(kappa_sq, kappa);
  const bool root_p_rational = rational_sqrt(Rational(static_cast<unsigned long>(p)), root_p);
  if (kappa_rational && root_p_rational) {
    return LowerBound(scale * (Rational(1) - kappa) / (Rational(3) + root_p), precision_bits, true);
  }

  BigFloat num(precision_bits);
  mpfr_set_q(num.get(), kappa_sq.raw().get_mpq_t(), MPFR_RNDU);
  mpfr_sqrt(num.get(), num.get(), MPFR_RNDU);      // kappa, over-estimated
  mpfr_ui_sub(num.get(), 1, num.get(), MPFR_RNDD);  // 1 - kappa, under-estimated
  if (mpfr_sgn(num.get()) <= 0) return LowerBound(Rational(0), precision_bits, false);

  BigFloat den(precision_bits);
  mpfr_sqrt_ui(den.get(), static_cast<unsigned long>(p), MPFR_RNDU);
  mpfr_add_ui(den.get(), den.get(), 3, MPFR_RNDU);

  mpfr_div(num.get(), num.get(), den.get(), MPFR_RNDD);
  mpfr_mul_q(num.get(), num.get(), scale.raw().get_mpq_t(), MPFR_RNDD);
  return LowerBound(num.to_rational(), precision_bits, false);
}

LowerBound sqrt_lower(const Rational& x, unsigned precision_bits) {
  if (x.sign() < 0) throw InvalidInput("square root of a negative number");
  Rational root;
  if (rational_sqrt(x, root)) return LowerBound(root, precision_bits, true);
  BigFloat v(precision_bits);
  mpfr_set_q(v.get(), x.raw().get_mpq_t(), MPFR_RNDD);
  mpfr_sqrt(v.get(), v.get(), MPFR_RNDD);
  return LowerBound(v.to_rational(), precision_bits, false);
}

}  // namespace sympack
