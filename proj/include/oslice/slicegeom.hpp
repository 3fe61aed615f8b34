#pragma once

#include <Eigen/Core>

#include <limits>
#include <stdexcept>
#include <vector>

#include "oslice/octonion.hpp"
#include "oslice/random.hpp"

namespace oslice {

/// The type-p splitting O = R^{p+1} + R^q, q = 7 - p.
struct SliceSignature {
  int p = 0;

  SliceSignature() = default;
  explicit SliceSignature(int p_) : p(p_) {
    if (p < 0 || p > 6) throw std::invalid_argument("SliceSignature: p must be in 0..6");
  }
  int q() const { return 7 - p; }
  int slice_dim() const { return p + 2; }

  friend bool operator==(const SliceSignature& a, const SliceSignature& b) { return a.p == b.p; }
  friend bool operator!=(const SliceSignature& a, const SliceSignature& b) { return a.p != b.p; }
};

template <class S>
using VectorX = Eigen::Matrix<S, Eigen::Dynamic, 1>;

/// x = x_p + r*omega with omega on the unit sphere of R^q and r >= 0.
/// At r = 0 omega is the canonical e_{p+1}; every downstream formula is
/// even/odd in (r, omega), so the choice is unobservable.
template <class S>
struct SplitPoint {
  SliceSignature sig;
  VectorX<S> xp;  // p+1 coefficients on e0..e_p
  S r;
  Octonion<S> omega;
};

/// Slice coordinates (x_p, r) with r signed; reflection flips r.
template <class S>
struct SlicePoint {
  VectorX<S> xp;
  S r;
};

template <class S>
Octonion<S> embed(const SplitPoint<S>& s) {
  Octonion<S> x = s.omega * s.r;
  for (int i = 0; i <= s.sig.p; ++i) x.coeff_ref(i) += s.xp[i];
  return x;
}

template <class S>
Octonion<S> canonical_omega(const SliceSignature& sig) {
  return Octonion<S>::basis(sig.p + 1);
}

namespace detail {

inline double q_radius(const Octonion<double>& x, const SliceSignature& sig) {
  double acc = 0;
  for (int i = sig.p + 1; i < 8; ++i) acc += x[i] * x[i];
  return std::sqrt(acc);
}

inline Rational q_radius(const Octonion<Rational>& x, const SliceSignature& sig) {
  Rational acc(0);
  for (int i = sig.p + 1; i < 8; ++i) acc += x[i] * x[i];
  auto root = acc.sqrt_exact();
  if (!root)
    throw std::domain_error(
        "split: |x_q| is irrational; exact mode requires points sampled on rational slices");
  return *root;
}

}  // namespace detail

template <class S>
SplitPoint<S> split(const Octonion<S>& x, const SliceSignature& sig) {
  SplitPoint<S> s;
  s.sig = sig;
  s.xp.resize(sig.p + 1);
  for (int i = 0; i <= sig.p; ++i) s.xp[i] = x[i];
  s.r = detail::q_radius(x, sig);
  if (scalar_traits<S>::is_zero(s.r)) {
    s.omega = canonical_omega<S>(sig);
  } else {
    Eigen::Matrix<S, 8, 1> w;
    w.setConstant(S(0));
    const S inv = S(1) / s.r;
    for (int i = sig.p + 1; i < 8; ++i) w[i] = x[i] * inv;
    s.omega = Octonion<S>(w);
  }
  return s;
}

template <class S>
SlicePoint<S> reflect(const SlicePoint<S>& x) {
  return SlicePoint<S>{x.xp, -x.r};
}

/// Membership of y in the orbit [x] = center_xp + r*S.
template <class S>
bool orbit_contains(const VectorX<S>& center_xp, const S& r, const Octonion<S>& y,
                    const SliceSignature& sig) {
  if (r < S(0)) throw std::invalid_argument("orbit_contains: r must be nonnegative");
  const SplitPoint<S> s = split(y, sig);
  for (int i = 0; i <= sig.p; ++i)
    if constexpr (scalar_traits<S>::is_exact) {
      if (!(s.xp[i] == center_xp[i])) return false;
    } else {
      if (std::abs(s.xp[i] - center_xp[i]) > 1e-12 * (1.0 + std::abs(center_xp[i]))) return false;
    }
  if constexpr (scalar_traits<S>::is_exact)
    return s.r == r;
  else
    return std::abs(s.r - r) <= 1e-12 * (1.0 + std::abs(r));
}

/// True iff omega is supported on e_{p+1}..e7 with |omega|^2 = 1 (so that
/// omega^2 = -1).
template <class S>
bool on_sphere(const Octonion<S>& omega, const SliceSignature& sig) {
  for (int i = 0; i <= sig.p; ++i)
    if (!scalar_traits<S>::is_zero(omega[i])) return false;
  const S n = norm_sq(omega);
  if constexpr (scalar_traits<S>::is_exact)
    return n == S(1);
  else
    return std::abs(n - 1.0) <= 1e-12;
}

/// Deterministic samples on the sphere S in R^q.
///
/// Exact mode uses the stereographic image of rational points, which lands
/// exactly on the sphere; float mode normalizes Gaussian vectors.
template <class S>
std::vector<Octonion<S>> sample_sphere(const SliceSignature& sig, int count, std::uint64_t seed);

template <>
inline std::vector<Octonion<Rational>> sample_sphere<Rational>(const SliceSignature& sig, int count,
                                                               std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample_sphere: count must be >= 1");
  Rng rng(seed);
  std::vector<Octonion<Rational>> out;
  out.reserve(count);
  const int q = sig.q();
  for (int n = 0; n < count; ++n) {
    Eigen::Matrix<Rational, 8, 1> w;
    w.setConstant(Rational(0));
    if (q == 1) {
      w[7] = Rational(rng.next_u64() & 1 ? 1 : -1);
    } else {
      // u in Q^{q-1} -> (2u, |u|^2 - 1) / (|u|^2 + 1)
      std::vector<Rational> u(q - 1);
      Rational nsq(0);
      for (auto& ui : u) {
        ui = rng.next_rational(3, 3);
        nsq += ui * ui;
      }
      const Rational scale = Rational(1) / (nsq + Rational(1));
      for (int i = 0; i < q - 1; ++i) w[sig.p + 1 + i] = Rational(2) * u[i] * scale;
      w[7] = (nsq - Rational(1)) * scale;
    }
    out.emplace_back(w);
  }
  return out;
}

template <>
inline std::vector<Octonion<double>> sample_sphere<double>(const SliceSignature& sig, int count,
                                                           std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample_sphere: count must be >= 1");
  Rng rng(seed);
  std::vector<Octonion<double>> out;
  out.reserve(count);
  const int q = sig.q();
  for (int n = 0; n < count; ++n) {
    Eigen::Matrix<double, 8, 1> w = Eigen::Matrix<double, 8, 1>::Zero();
    if (q == 1) {
      w[7] = (rng.next_u64() & 1) ? 1.0 : -1.0;
    } else {
      double nsq = 0;
      do {
        nsq = 0;
        for (int i = sig.p + 1; i < 8; ++i) {
          w[i] = rng.next_gaussian();
          nsq += w[i] * w[i];
        }
      } while (nsq < 1e-12);
      const double inv = 1.0 / std::sqrt(nsq);
      for (int i = sig.p + 1; i < 8; ++i) w[i] *= inv;
    }
    out.emplace_back(w);
  }
  return out;
}

/// Domain predicates for the shapes the integral formulas use. Balls and
/// shells centered on the origin are p-symmetric slice domains for every p;
/// arbitrary open-set geometry is out of scope.
struct CenteredShell {
  double inner = 0.0;                                       // 0 gives a ball
  double outer = std::numeric_limits<double>::infinity();   // inf gives a complement
  bool exclude_real_subspace = false;

  bool contains(const Octonion<double>& x, const SliceSignature& sig) const {
    const double n = std::sqrt(norm_sq(x));
    if (n <= inner || n >= outer) return false;
    if (exclude_real_subspace) {
      double q = 0;
      for (int i = sig.p + 1; i < 8; ++i) q += x[i] * x[i];
      if (q == 0.0) return false;
    }
    return true;
  }

  /// Shells centered on the origin contain the whole orbit [x] of each of
  /// their points.
  bool is_p_symmetric() const { return true; }
};

inline CenteredShell ball_domain(double radius, bool exclude_real = false) {
  return CenteredShell{0.0, radius, exclude_real};
}

inline CenteredShell shell_domain(double inner, double outer, bool exclude_real = false) {
  if (!(0 <= inner && inner < outer))
    throw std::invalid_argument("shell_domain: need 0 <= inner < outer");
  return CenteredShell{inner, outer, exclude_real};
}

/// Random point assembled slice-wise (x_p, r, omega), so the exact-mode
/// split round-trips bit for bit.
template <class S>
SplitPoint<S> random_split_point(const SliceSignature& sig, Rng& rng) {
  SplitPoint<S> s;
  s.sig = sig;
  s.xp.resize(sig.p + 1);
  if constexpr (scalar_traits<S>::is_exact) {
    for (int i = 0; i <= sig.p; ++i) s.xp[i] = rng.next_rational();
    Rational r = rng.next_rational(4, 4);
    s.r = r.sign() < 0 ? -r : r;
    s.omega = sample_sphere<S>(sig, 1, rng.next_u64())[0];
  } else {
    for (int i = 0; i <= sig.p; ++i) s.xp[i] = 2.0 * rng.next_double() - 1.0;
    s.r = rng.next_double();
    s.omega = sample_sphere<S>(sig, 1, rng.next_u64())[0];
  }
  if (scalar_traits<S>::is_zero(s.r)) s.omega = canonical_omega<S>(sig);
  return s;
}

}  // namespace oslice
