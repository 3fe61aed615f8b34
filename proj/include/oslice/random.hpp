#pragma once

#include <cstdint>

#include "oslice/octonion.hpp"
#include "oslice/rational.hpp"

namespace oslice {

/// Deterministic generator (splitmix64). The standard <random> engines are
/// avoided on purpose: distribution implementations vary across library
/// versions and the CLI promises byte-identical reports per seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [lo, hi] inclusive.
  long next_int(long lo, long hi) {
    return lo + static_cast<long>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  /// Small rational with numerator in [-max_num, max_num] and denominator
  /// in [1, max_den]; keeps exact-mode products cheap.
  Rational next_rational(long max_num = 4, long max_den = 4) {
    return Rational(next_int(-max_num, max_num), next_int(1, max_den));
  }

  /// Standard normal via Box-Muller on splitmix output.
  double next_gaussian() {
    double u1 = next_double(), u2 = next_double();
    while (u1 <= 1e-300) u1 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

 private:
  std::uint64_t state_;
};

template <class S>
Octonion<S> random_octonion(Rng& rng);

template <>
inline Octonion<Rational> random_octonion<Rational>(Rng& rng) {
  Eigen::Matrix<Rational, 8, 1> c;
  for (int i = 0; i < 8; ++i) c[i] = rng.next_rational();
  return Octonion<Rational>(c);
}

template <>
inline Octonion<double> random_octonion<double>(Rng& rng) {
  Eigen::Matrix<double, 8, 1> c;
  for (int i = 0; i < 8; ++i) c[i] = 2.0 * rng.next_double() - 1.0;
  return Octonion<double>(c);
}

}  // namespace oslice
