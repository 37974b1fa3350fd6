#include "sympack/rational.hpp"

#include <cctype>
#include <functional>
#include <ostream>

#include "sympack/errors.hpp"

namespace sympack {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

// Unsigned decimal with optional fraction and exponent, e.g. "12", "0.15", "1e-9".
Rational parse_decimal(std::string_view body, std::string_view original) {
  std::string_view mantissa = body;
  long exponent = 0;
  if (const auto epos = body.find_first_of("eE"); epos != std::string_view::npos) {
    mantissa = body.substr(0, epos);
    std::string_view exp_text = body.substr(epos + 1);
    bool negative = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) {
      throw InvalidInput("malformed rational '" + std::string(original) + "'");
    }
    exponent = std::stol(std::string(exp_text));
    if (negative) exponent = -exponent;
  }
  std::string digits;
  long frac_len = 0;
  if (const auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    const auto int_part = mantissa.substr(0, dot);
    const auto frac_part = mantissa.substr(dot + 1);
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)) ||
        (int_part.empty() && frac_part.empty())) {
      throw InvalidInput("malformed rational '" + std::string(original) + "'");
    }
    digits = std::string(int_part) + std::string(frac_part);
    frac_len = static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(mantissa)) throw InvalidInput("malformed rational '" + std::string(original) + "'");
    digits = std::string(mantissa);
  }
  if (digits.empty()) digits = "0";
  mpz_class num(digits, 10);
  const long shift = exponent - frac_len;
  if (shift >= 0) return Rational(num * pow10(static_cast<unsigned long>(shift)), mpz_class(1));
  return Rational(num, pow10(static_cast<unsigned long>(-shift)));
}

}  // namespace

Rational::Rational(mpz_class num, mpz_class den) {
  if (den == 0) throw InvalidInput("rational with zero denominator");
  q_.get_num() = std::move(num);
  q_.get_den() = std::move(den);
  q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

void Rational::normalize() {
  if (q_.get_den() == 0) throw InvalidInput("rational with zero denominator");
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw InvalidInput("division by zero");
  q_ /= rhs.q_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw InvalidInput("empty rational");

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  Rational value;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const auto num = s.substr(0, slash);
    const auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw InvalidInput("malformed rational '" + std::string(text) + "'");
    }
    mpz_class d(std::string(den), 10);
    if (d == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
    value = Rational(mpz_class(std::string(num), 10), d);
  } else {
    value = parse_decimal(s, text);
  }
  return negative ? -value : value;
}

std::string Rational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_str();
}

mpz_class Rational::floor() const {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

mpz_class Rational::ceil() const {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

Rational abs(const Rational& v) { return v.sign() < 0 ? -v : v; }

Rational square(const Rational& v) { return v * v; }

Rational approximate_from_below(double x, const mpz_class& max_denominator) {
  if (max_denominator < 1) throw InvalidInput("max_denominator must be >= 1");
  const mpq_class target(x);  // exact value of the double
  if (target.get_den() <= max_denominator) return Rational(target);

  // Stern-Brocot descent with bulk steps; lower <= x < upper throughout.
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), target.get_num_mpz_t(), target.get_den_mpz_t());
  mpz_class pl = fl, ql = 1, pu = fl + 1, qu = 1;
  while (true) {
    // Advance lower: largest k with (pl + k pu)/(ql + k qu) <= x.
    const mpq_class gap_up = mpq_class(pu) - target * qu;  // > 0
    const mpq_class gap_lo = target * ql - pl;             // >= 0
    if (gap_lo == 0) break;
    mpz_class k1;
    {
      const mpq_class r = gap_lo / gap_up;
      mpz_fdiv_q(k1.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
      mpz_class limit = (max_denominator - ql) / qu;
      if (k1 > limit) k1 = limit;
    }
    if (k1 > 0) {
      pl += k1 * pu;
      ql += k1 * qu;
    }
    const mpq_class gap_lo2 = target * ql - pl;
    if (gap_lo2 == 0) break;
    // Advance upper: largest k with (pu + k pl)/(qu + k ql) > x.
    const mpq_class gap_up2 = mpq_class(pu) - target * qu;
    mpz_class k2;
    {
      const mpq_class r = gap_up2 / gap_lo2;
      mpz_cdiv_q(k2.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
      k2 -= 1;
      mpz_class limit = (max_denominator - qu) / ql;
      if (k2 > limit) k2 = limit;
    }
    if (k2 > 0) {
      pu += k2 * pl;
      qu += k2 * ql;
    }
    if (k1 <= 0 && k2 <= 0) break;
  }
  return Rational(pl, ql);
}

std::ostream& operator<<(std::ostream& os, const Rational& v) { return os << v.str(); }

std::size_t RationalHash::operator()(const Rational& v) const noexcept {
  return std::hash<std::string>{}(v.str());
}

}  // namespace sympack
