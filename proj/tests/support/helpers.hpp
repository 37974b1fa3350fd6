#pragma once

#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "sympack/rational.hpp"

namespace sympack::testing {

inline Rational R(std::string_view s) { return Rational::parse(s); }

inline std::vector<Rational> Rs(std::initializer_list<std::string_view> items) {
  std::vector<Rational> out;
  for (auto s : items) out.push_back(Rational::parse(s));
  return out;
}

inline Rational from_mpq(const mpq_class& q) { return Rational(q); }

inline std::vector<Rational> from_mpq(const std::vector<mpq_class>& v) {
  std::vector<Rational> out;
  for (const auto& q : v) out.emplace_back(q);
  return out;
}

}  // namespace sympack::testing
