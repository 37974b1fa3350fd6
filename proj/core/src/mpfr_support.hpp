#pragma once

#include <mpfr.h>

#include "sympack/rational.hpp"

namespace sympack::detail {

// RAII holder for an mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(unsigned precision_bits) { mpfr_init2(v_, static_cast<mpfr_prec_t>(precision_bits)); }
  ~BigFloat() { mpfr_clear(v_); }
  BigFloat(const BigFloat&) = delete;
  BigFloat& operator=(const BigFloat&) = delete;

  mpfr_ptr get() noexcept { return v_; }
  mpfr_srcptr get() const noexcept { return v_; }

  // Exact: an MPFR number is a dyadic rational.
  Rational to_rational() const {
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), v_);
    return Rational(q);
  }

 private:
  mpfr_t v_;
};

}  // namespace sympack::detail
