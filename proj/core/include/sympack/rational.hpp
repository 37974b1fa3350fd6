#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>

namespace sympack {

/// Exact fraction over arbitrary-precision integers, always in lowest terms
/// with a positive denominator. Thin value wrapper over mpq_class.
class Rational {
 public:
  Rational() = default;

  template <std::integral T>
  Rational(T value) {  // NOLINT(google-explicit-constructor)
    assign_integer(value, q_.get_num());
  }

  template <std::integral T, std::integral U>
  Rational(T num, U den) {
    assign_integer(num, q_.get_num());
    assign_integer(den, q_.get_den());
    normalize();
  }

  Rational(mpz_class num, mpz_class den);
  explicit Rational(mpq_class q);

  /// Accepts "p", "p/q", signed forms, and finite decimals ("0.15", "1e-9").
  /// Decimals are read exactly. Throws InvalidInput otherwise.
  static Rational parse(std::string_view text);

  const mpq_class& raw() const noexcept { return q_; }
  const mpz_class& numerator() const noexcept { return q_.get_num(); }
  const mpz_class& denominator() const noexcept { return q_.get_den(); }

  int sign() const noexcept { return sgn(q_); }
  bool is_zero() const noexcept { return sign() == 0; }
  bool is_integer() const noexcept { return q_.get_den() == 1; }

  /// "p/q", or "p" when the denominator is 1.
  std::string str() const;
  double to_double() const { return q_.get_d(); }

  mpz_class floor() const;
  mpz_class ceil() const;

  Rational& operator+=(const Rational& rhs) { q_ += rhs.q_; return *this; }
  Rational& operator-=(const Rational& rhs) { q_ -= rhs.q_; return *this; }
  Rational& operator*=(const Rational& rhs) { q_ *= rhs.q_; return *this; }
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  friend Rational operator-(const Rational& v) { return Rational(mpq_class(-v.q_)); }

  friend bool operator==(const Rational& lhs, const Rational& rhs) { return cmp(lhs.q_, rhs.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
    const int c = cmp(lhs.q_, rhs.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  template <std::integral T>
  static void assign_integer(T value, mpz_class& out) {
    if constexpr (std::is_signed_v<T>) {
      static_assert(sizeof(T) <= sizeof(long));
      out = static_cast<long>(value);
    } else {
      static_assert(sizeof(T) <= sizeof(unsigned long));
      out = static_cast<unsigned long>(value);
    }
  }
  void normalize();

  mpq_class q_{0};
};

Rational abs(const Rational& v);
Rational square(const Rational& v);

/// Largest p/q <= x with 1 <= q <= max_denominator. Used to bring irrational
/// (floating) parameters into the exact world without overshooting.
Rational approximate_from_below(double x, const mpz_class& max_denominator);

std::ostream& operator<<(std::ostream& os, const Rational& v);

struct RationalHash {
  std::size_t operator()(const Rational& v) const noexcept;
};

}  // namespace sympack
