#pragma once

#include <gmpxx.h>

#include <string>

namespace nilvf {

/// Exact rationals; mpq_class keeps numerator/denominator canonical.
using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational factorial(unsigned k) {
  Integer f = 1;
  for (unsigned i = 2; i <= k; ++i) f *= i;
  return Rational(f);
}

}  // namespace nilvf
