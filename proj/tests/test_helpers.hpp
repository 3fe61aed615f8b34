#pragma once

#include <doctest.h>

#include "oslice/octonion.hpp"

namespace oslice::testing {

inline Octonion<Rational> e(int i) { return Octonion<Rational>::basis(i); }
inline Octonion<double> ef(int i) { return Octonion<double>::basis(i); }

template <class S>
double max_abs_coeff(const Octonion<S>& x) {
  double m = 0;
  for (int i = 0; i < 8; ++i) m = std::max(m, std::abs(scalar_traits<S>::to_double(x[i])));
  return m;
}

/// Relative tolerance 1e-12 scaled by operand norms, the float-mode equality
/// convention used throughout the test suites.
inline void check_close(const Octonion<double>& a, const Octonion<double>& b, double tol = 1e-12,
                        double scale = 1.0) {
  const double err = max_abs_coeff(a - b);
  CHECK(err <= tol * std::max(1.0, scale));
}

}  // namespace oslice::testing
