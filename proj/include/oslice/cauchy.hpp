#pragma once

#include <functional>

#include "oslice/calculus.hpp"
#include "oslice/quadrature.hpp"

namespace oslice {

/// Surface area sigma_{p+1} of the unit sphere S^{p+1} in R^{p+2}.
inline double sigma(int p) {
  if (p < 0 || p > 6) throw std::invalid_argument("sigma: p must be in 0..6");
  return sphere_area(p + 2);
}

/// Cauchy kernel E(x) = conj(x) / (sigma_{p+1} |x|^{p+2}).
inline Octonion<double> kernel_E(const Octonion<double>& x, int p) {
  const double n2 = norm_sq(x);
  if (n2 == 0.0) throw std::domain_error("kernel_E: singular at x = 0");
  const double scale = 1.0 / (sigma(p) * std::pow(n2, 0.5 * (p + 2)));
  return conj(x) * scale;
}

/// Function on one (two-sided) slice in the coordinates x' = (x_p, s) with
/// signed radial coordinate s: the point is x_p + s*eta.
using SliceFn = std::function<Octonion<double>(const Eigen::VectorXd&)>;

inline Octonion<double> embed_slice(const Eigen::VectorXd& xprime, const Octonion<double>& eta,
                                    int p) {
  Octonion<double> x = eta * xprime[p + 1];
  for (int i = 0; i <= p; ++i) x.coeff_ref(i) += xprime[i];
  return x;
}

inline SliceFn on_slice(const StemFunction<double>& f, const Octonion<double>& eta) {
  return [f, eta](const Eigen::VectorXd& xprime) { return f.eval_slice(xprime, eta); };
}

inline SliceFn on_slice(const FunctionHandle& f, const Octonion<double>& eta) {
  const int p = f.sig.p;
  auto eval = f.eval;
  return [eval, eta, p](const Eigen::VectorXd& xprime) {
    return eval(embed_slice(xprime, eta, p));
  };
}

/// Exact D_eta f of a stem as a slice function (used as the Cauchy-Pompeiu
/// volume integrand).
inline SliceFn d_omega_on_slice(const StemFunction<double>& f, const Octonion<double>& eta) {
  auto res = cr_residual(f);
  return [res, eta](const Eigen::VectorXd& xprime) {
    return res.first.eval(xprime) + mul(eta, res.second.eval(xprime));
  };
}

/// Ball in one slice: B(center, R) in the (p+2)-dimensional slice plane
/// through eta; the boundary is the sphere S^{p+1}.
struct BallSlice {
  SliceSignature sig;
  Octonion<double> eta;
  Eigen::VectorXd center;  // slice coordinates, length p+2
  double radius = 1.0;

  BallSlice(SliceSignature s, const Octonion<double>& eta_, double r)
      : sig(s), eta(eta_), center(Eigen::VectorXd::Zero(s.p + 2)), radius(r) {
    validate();
  }
  BallSlice(SliceSignature s, const Octonion<double>& eta_, Eigen::VectorXd c, double r)
      : sig(s), eta(eta_), center(std::move(c)), radius(r) {
    validate();
  }

  void validate() const {
    if (!(radius > 0)) throw std::invalid_argument("BallSlice: radius must be positive");
    if (center.size() != sig.p + 2)
      throw std::invalid_argument("BallSlice: center must have p+2 slice coordinates");
    if (!on_sphere(eta, sig)) throw std::invalid_argument("BallSlice: eta must lie on S");
  }
};

namespace detail {

inline double max_abs_diff(const Octonion<double>& a, const Octonion<double>& b) {
  double m = 0;
  for (int i = 0; i < 8; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Slice coordinates of an evaluation point given as a SplitPoint whose
/// omega must be +-eta of the ball.
inline Eigen::VectorXd slice_coords_on(const BallSlice& ball, const SplitPoint<double>& x) {
  if (x.sig != ball.sig) throw std::invalid_argument("slice signature mismatch");
  Eigen::VectorXd c(ball.sig.p + 2);
  for (int i = 0; i <= ball.sig.p; ++i) c[i] = x.xp[i];
  const double dplus = max_abs_diff(x.omega, ball.eta);
  const double dminus = max_abs_diff(x.omega, -ball.eta);
  if (x.r == 0.0 || dplus <= 1e-12) {
    c[ball.sig.p + 1] = x.r;
  } else if (dminus <= 1e-12) {
    c[ball.sig.p + 1] = -x.r;
  } else {
    throw std::invalid_argument("point does not lie on the integration slice");
  }
  return c;
}

inline void require_interior(const BallSlice& ball, const Eigen::VectorXd& xprime) {
  if ((xprime - ball.center).norm() >= ball.radius * (1.0 - 1e-12))
    throw std::domain_error("evaluation point must be interior to the ball");
}

/// Volume integral  int_U E(y - pole) (g(y)) dV(y)  over the slice ball, in
/// polar coordinates about the interior pole: with y = pole + rho u the
/// kernel contributes conj(u)/(sigma rho^{p+1}) and the volume element
/// rho^{p+1} drho dS(u), so the singular factors cancel exactly and the
/// integrand stays smooth,
///   (1/sigma) int_S conj(u) int_0^{rho_max(u)} g(pole + rho u) drho dS(u).
inline Octonion<double> kernel_volume_integral(const SliceFn& g, const BallSlice& ball,
                                               const Eigen::VectorXd& pole,
                                               const BallRule& rule) {
  const int p = ball.sig.p;
  require_interior(ball, pole);
  const Eigen::VectorXd offset = pole - ball.center;
  const double gap = ball.radius * ball.radius - offset.squaredNorm();
  const SphereRule& srule = rule.sphere();
  const auto& t = rule.radial_nodes();
  const auto& wt = rule.radial_weights_plain();

  Octonion<double> acc = quad_sum(srule.size(), [&](std::size_t i) {
    Eigen::VectorXd u;
    double w;
    srule.node(i, u, w);
    const double b = offset.dot(u);
    const double rho_max = -b + std::sqrt(b * b + gap);
    Octonion<double> u_oct = ball.eta * u[p + 1];
    for (int k = 0; k <= p; ++k) u_oct.coeff_ref(k) += u[k];
    Octonion<double> radial;
    for (int j = 0; j < t.size(); ++j)
      radial += g(pole + (rho_max * t[j]) * u) * (rho_max * wt[j]);
    return mul(conj(u_oct), radial) * w;
  });
  return acc * (1.0 / sigma(p));
}

/// Boundary integral  int_{dB} E_y(x) (n(y) g(y)) dS(y).
inline Octonion<double> boundary_kernel_integral(const SliceFn& g, const BallSlice& ball,
                                                 const Eigen::VectorXd& xprime,
                                                 const SphereRule& rule) {
  const int p = ball.sig.p;
  const Octonion<double> x_oct = embed_slice(xprime, ball.eta, p);
  const double jac = std::pow(ball.radius, p + 1);
  return quad_sum(rule.size(), [&](std::size_t i) {
    Eigen::VectorXd u;
    double w;
    rule.node(i, u, w);
    const Eigen::VectorXd y = ball.center + ball.radius * u;
    const Octonion<double> y_oct = embed_slice(y, ball.eta, p);
    Octonion<double> n_oct = ball.eta * u[p + 1];
    for (int k = 0; k <= p; ++k) n_oct.coeff_ref(k) += u[k];
    const Octonion<double> ker = kernel_E(y_oct - x_oct, p);
    return mul(ker, mul(n_oct, g(y))) * (w * jac);
  });
}

}  // namespace detail

/// Cauchy formula, I: reconstructs a slice-monogenic f at an interior point
/// of the ball from its boundary values,
///   f(x) = int_{dU_eta} E_y(x) (n(y) f(y)) dS(y),
/// with the multiplication order exactly as written.
inline Octonion<double> cauchy_reconstruct(const SliceFn& f, const BallSlice& ball,
                                           const SplitPoint<double>& x, const SphereRule& rule) {
  const Eigen::VectorXd xprime = detail::slice_coords_on(ball, x);
  detail::require_interior(ball, xprime);
  return detail::boundary_kernel_integral(f, ball, xprime, rule);
}

/// Cauchy-Pompeiu formula, I: boundary term minus the volume term
///   int_{U_eta} E_y(x) (D_eta f(y)) dV(y)
/// for f merely C^1 on the closed ball. d_eta_f supplies D_eta f in slice
/// coordinates (exact for stems, finite differences otherwise).
inline Octonion<double> cauchy_pompeiu(const SliceFn& f, const SliceFn& d_eta_f,
                                       const BallSlice& ball, const SplitPoint<double>& x,
                                       const SphereRule& rule, const BallRule& volume_rule) {
  const Eigen::VectorXd xprime = detail::slice_coords_on(ball, x);
  detail::require_interior(ball, xprime);
  const Octonion<double> boundary = detail::boundary_kernel_integral(f, ball, xprime, rule);
  return boundary - detail::kernel_volume_integral(d_eta_f, ball, xprime, volume_rule);
}

/// Inverse direction of the Cauchy formula: the boundary integral of any
/// continuous boundary datum g defines a function with D_eta f = 0 inside.
inline Octonion<double> inverse_boundary_operator(const SliceFn& g, const BallSlice& ball,
                                                  const SplitPoint<double>& x,
                                                  const SphereRule& rule) {
  const Eigen::VectorXd xprime = detail::slice_coords_on(ball, x);
  detail::require_interior(ball, xprime);
  return detail::boundary_kernel_integral(g, ball, xprime, rule);
}

/// Mean value theorem: f(center) = (1/(sigma_{p+1} R^{p+1})) int_{dB} f dS.
inline Octonion<double> mean_value(const SliceFn& f, const BallSlice& ball,
                                   const SphereRule& rule) {
  const int p = ball.sig.p;
  Octonion<double> acc = quad_sum(rule.size(), [&](std::size_t i) {
    Eigen::VectorXd u;
    double w;
    rule.node(i, u, w);
    return f(ball.center + ball.radius * u) * w;
  });
  return acc * (1.0 / sigma(p));
}

/// Operator-valued Cauchy kernel
///   E_y(x) = (1/2) L_{E(y-pi) + E(y-pi_r)} + (1/2) L_omega L_eta L_{E(y-pi_r) - E(y-pi)}
/// with pi = x_p + r eta and pi_r = x_p - r eta the projections of x onto
/// the integration slice. When omega = eta it reduces to left
/// multiplication by E_y(x).
struct OperatorKernel {
  Eigen::Matrix<double, 8, 8> m;
  Octonion<double> apply(const Octonion<double>& a) const {
    return Octonion<double>(Eigen::Matrix<double, 8, 1>(m * a.coeffs()));
  }
};

namespace detail {

struct GlobalKernelParts {
  Octonion<double> e_plus, e_minus;  // E(y - pi), E(y - pi_reflected)
};

inline GlobalKernelParts global_kernel_parts(const Eigen::VectorXd& yprime,
                                             const Octonion<double>& eta, int p,
                                             const Eigen::VectorXd& x_xp, double x_r) {
  const Octonion<double> y_oct = embed_slice(yprime, eta, p);
  Eigen::VectorXd pi(p + 2), pi_r(p + 2);
  for (int i = 0; i <= p; ++i) pi[i] = pi_r[i] = x_xp[i];
  pi[p + 1] = x_r;
  pi_r[p + 1] = -x_r;
  return {kernel_E(y_oct - embed_slice(pi, eta, p), p),
          kernel_E(y_oct - embed_slice(pi_r, eta, p), p)};
}

}  // namespace detail

inline OperatorKernel operator_kernel(const Eigen::VectorXd& yprime, const BallSlice& ball,
                                      const SplitPoint<double>& x) {
  const int p = ball.sig.p;
  auto parts = detail::global_kernel_parts(yprime, ball.eta, p, x.xp, x.r);
  using Mat = Eigen::Matrix<double, 8, 8>;
  const Mat sum_part = left_mul<double>(parts.e_plus + parts.e_minus).matrix();
  const Mat diff_part = (left_mul(x.omega).matrix() * left_mul(ball.eta).matrix() *
                         left_mul<double>(parts.e_minus - parts.e_plus).matrix());
  return OperatorKernel{0.5 * (sum_part + diff_part)};
}

/// Cauchy formula, II: reconstructs f at x = x_p + r omega (omega arbitrary)
/// from boundary data on a single slice eta,
///   f(x) = int_{dU_eta} E_y(x)(n(y) f(y)) dS(y);
/// the value does not depend on the chosen eta.
inline Octonion<double> cauchy_reconstruct_global(const SliceFn& f, const BallSlice& ball,
                                                  const SplitPoint<double>& x,
                                                  const SphereRule& rule) {
  const int p = ball.sig.p;
  // both slice projections of the orbit of x must be interior
  Eigen::VectorXd pi(p + 2);
  for (int i = 0; i <= p; ++i) pi[i] = x.xp[i];
  pi[p + 1] = x.r;
  detail::require_interior(ball, pi);
  pi[p + 1] = -x.r;
  detail::require_interior(ball, pi);

  const double jac = std::pow(ball.radius, p + 1);
  return quad_sum(rule.size(), [&](std::size_t i) {
    Eigen::VectorXd u;
    double w;
    rule.node(i, u, w);
    const Eigen::VectorXd y = ball.center + ball.radius * u;
    auto parts = detail::global_kernel_parts(y, ball.eta, p, x.xp, x.r);
    Octonion<double> n_oct = ball.eta * u[p + 1];
    for (int k = 0; k <= p; ++k) n_oct.coeff_ref(k) += u[k];
    const Octonion<double> v = mul(n_oct, f(y));
    Octonion<double> val = mul(parts.e_plus + parts.e_minus, v);
    val += mul(x.omega, mul(ball.eta, mul(parts.e_minus - parts.e_plus, v)));
    return val * (0.5 * w * jac);
  });
}

/// Cauchy-Pompeiu formula, II: the global boundary term minus the
/// operator-kernel volume term, valid for C^1 stem-induced f.
inline Octonion<double> cauchy_pompeiu_global(const SliceFn& f, const SliceFn& d_eta_f,
                                              const BallSlice& ball, const SplitPoint<double>& x,
                                              const SphereRule& rule, const BallRule& volume_rule) {
  const int p = ball.sig.p;
  const Octonion<double> boundary = cauchy_reconstruct_global(f, ball, x, rule);
  // the operator kernel splits into two plain kernels with poles at the two
  // slice projections of x; integrate each about its own pole
  Eigen::VectorXd pi(p + 2), pi_r(p + 2);
  for (int i = 0; i <= p; ++i) pi[i] = pi_r[i] = x.xp[i];
  pi[p + 1] = x.r;
  pi_r[p + 1] = -x.r;
  const Octonion<double> v_plus = detail::kernel_volume_integral(d_eta_f, ball, pi, volume_rule);
  const Octonion<double> v_minus =
      detail::kernel_volume_integral(d_eta_f, ball, pi_r, volume_rule);
  Octonion<double> volume = 0.5 * (v_plus + v_minus);
  volume += 0.5 * mul(x.omega, mul(ball.eta, v_minus - v_plus));
  return boundary - volume;
}

}  // namespace oslice
