#pragma once

#include "oslice/kernelderiv.hpp"

namespace oslice {

/// SplitPoint on the slice through eta from signed slice coordinates.
inline SplitPoint<double> split_from_slice(const Eigen::VectorXd& xprime,
                                           const Octonion<double>& eta, SliceSignature sig) {
  SplitPoint<double> s;
  s.sig = sig;
  s.xp.resize(sig.p + 1);
  for (int i = 0; i <= sig.p; ++i) s.xp[i] = xprime[i];
  const double t = xprime[sig.p + 1];
  if (t == 0.0) {
    s.r = 0.0;
    s.omega = canonical_omega<double>(sig);
  } else {
    s.r = std::abs(t);
    s.omega = t > 0 ? eta : -eta;
  }
  return s;
}

/// P_k at signed slice coordinates; the library default association order
/// is the right fold.
inline Octonion<double> fueter_p_at(const MultiIndex& k, const Eigen::VectorXd& xprime,
                                    const Octonion<double>& eta, SliceSignature sig,
                                    FueterSide side = FueterSide::left) {
  const SplitPoint<double> s = split_from_slice(xprime, eta, sig);
  const int n = std::max(1, multi_abs(k));
  return fueter_poly_eval(k, s, AssocTree::r_fold(n), side);
}

/// Partial sums of the kernel expansion
///   E_y(x) = sum_k sum_{|k|=k} P_k(x) Q_k(y) = sum_k sum_{|k|=k} Q_k(y) P^R_k(x)
/// on a common slice, |x| < |y|. Both association forms are returned along
/// with the norm of the last degree's contribution, so callers can build
/// stopping rules.
struct KernelSeriesPartial {
  Octonion<double> left;
  Octonion<double> right;
  int max_degree = 0;
  double last_term_norm_left = 0;
  double last_term_norm_right = 0;
};

inline KernelSeriesPartial kernel_series_partial(const Eigen::VectorXd& xprime,
                                                 const Eigen::VectorXd& yprime,
                                                 const Octonion<double>& eta, SliceSignature sig,
                                                 int K) {
  if (xprime.norm() >= yprime.norm())
    throw std::domain_error("kernel_series_partial: requires |x| < |y|");
  KernelSeriesPartial out;
  out.max_degree = K;
  for (int k = 0; k <= K; ++k) {
    Octonion<double> left_k, right_k;
    for (const MultiIndex& mk : multi_indices_of_degree(sig.p + 1, k)) {
      const KernelDerivative q = q_kernel(mk, sig);
      const Octonion<double> qv = q.eval(yprime, eta);
      left_k += mul(fueter_p_at(mk, xprime, eta, sig, FueterSide::left), qv);
      right_k += mul(qv, fueter_p_at(mk, xprime, eta, sig, FueterSide::right));
    }
    out.left += left_k;
    out.right += right_k;
    if (k == K) {
      out.last_term_norm_left = norm(left_k);
      out.last_term_norm_right = norm(right_k);
    }
  }
  return out;
}

/// Taylor coefficient from boundary data on a ball centered at the origin:
///   d_k f(0) = int_{dB(r)_eta} Q_k(y) (n(y) f(y)) dS(y).
inline Octonion<double> taylor_coeff(const SliceFn& f, const MultiIndex& k, const BallSlice& ball,
                                     const SphereRule& rule) {
  if (ball.center.norm() != 0.0)
    throw std::invalid_argument("taylor_coeff: ball must be centered at the origin");
  const int p = ball.sig.p;
  const KernelDerivative q = q_kernel(k, ball.sig);
  const double jac = std::pow(ball.radius, p + 1);
  return quad_sum(rule.size(), [&](std::size_t i) {
    Eigen::VectorXd u;
    double w;
    rule.node(i, u, w);
    const Eigen::VectorXd y = ball.radius * u;
    Octonion<double> n_oct = ball.eta * u[p + 1];
    for (int m = 0; m <= p; ++m) n_oct.coeff_ref(m) += u[m];
    return mul(q.eval(y, ball.eta), mul(n_oct, f(y))) * (w * jac);
  });
}

struct TaylorTerm {
  MultiIndex k;
  Octonion<double> coeff;  // d_k f(0)
};

/// Associator correction of one Taylor degree:
///   T_k(x) = sum_{|k|=k} int_{dB} [P_k(x), Q_k(y), n(y) f(y)] dS(y);
/// vanishes whenever the three slots land in an associative subalgebra,
/// in particular for every k at p = 0.
struct TailTerm {
  int degree = 0;
  Octonion<double> value;
};

inline TailTerm tail_term(const SliceFn& f, int degree, const SplitPoint<double>& x,
                          const BallSlice& ball, const SphereRule& rule) {
  if (ball.center.norm() != 0.0)
    throw std::invalid_argument("tail_term: ball must be centered at the origin");
  const int p = ball.sig.p;
  const Eigen::VectorXd xprime = detail::slice_coords_on(ball, x);
  const double jac = std::pow(ball.radius, p + 1);

  TailTerm out;
  out.degree = degree;
  for (const MultiIndex& mk : multi_indices_of_degree(p + 1, degree)) {
    const Octonion<double> pk = fueter_p_at(mk, xprime, ball.eta, ball.sig);
    const KernelDerivative q = q_kernel(mk, ball.sig);
    out.value += quad_sum(rule.size(), [&](std::size_t i) {
      Eigen::VectorXd u;
      double w;
      rule.node(i, u, w);
      const Eigen::VectorXd y = ball.radius * u;
      Octonion<double> n_oct = ball.eta * u[p + 1];
      for (int m = 0; m <= p; ++m) n_oct.coeff_ref(m) += u[m];
      return associator(pk, q.eval(y, ball.eta), mul(n_oct, f(y))) * (w * jac);
    });
  }
  return out;
}

struct TaylorResult {
  std::vector<TaylorTerm> coeffs;  // all |k| <= K, lexicographic per degree
  std::vector<TailTerm> tails;     // degrees 0..K
  Octonion<double> reconstruction;
};

/// Taylor expansion with tail:
///   f(x) ~ sum_{k<=K} ( sum_{|k|=k} P_k(x) d_k f(0) + T_k(x) ).
inline TaylorResult taylor_reconstruct(const SliceFn& f, const SplitPoint<double>& x, int K,
                                       const BallSlice& ball, const SphereRule& rule) {
  const Eigen::VectorXd xprime = detail::slice_coords_on(ball, x);
  if (xprime.norm() >= ball.radius)
    throw std::domain_error("taylor_reconstruct: point must be interior to the ball");
  TaylorResult out;
  for (int k = 0; k <= K; ++k) {
    for (const MultiIndex& mk : multi_indices_of_degree(ball.sig.p + 1, k)) {
      TaylorTerm term{mk, taylor_coeff(f, mk, ball, rule)};
      out.reconstruction += mul(fueter_p_at(mk, xprime, ball.eta, ball.sig), term.coeff);
      out.coeffs.push_back(std::move(term));
    }
    TailTerm tail = tail_term(f, k, x, ball, rule);
    out.reconstruction += tail.value;
    out.tails.push_back(tail);
  }
  return out;
}

}  // namespace oslice
