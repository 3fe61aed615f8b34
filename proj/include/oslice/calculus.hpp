#pragma once

#include <functional>
#include <string>
#include <utility>

#include "oslice/fueter.hpp"

namespace oslice {

/// Black-box function O -> O used by the numeric operators. The evaluator
/// must be reentrant; the optional domain predicate marks where stencils may
/// sample (null = everywhere).
struct FunctionHandle {
  SliceSignature sig;
  std::function<Octonion<double>(const Octonion<double>&)> eval;
  std::function<bool(const Octonion<double>&)> domain;
  std::string name;

  bool in_domain(const Octonion<double>& x) const { return !domain || domain(x); }
};

struct FDScheme {
  double h = 1e-4;
  int order = 4;  // 2 or 4
  bool richardson = false;
};

/// Numeric derivative value; one_sided_r reports that the radial stencil had
/// to fall back to a forward difference because the domain predicate
/// excluded part of the centered stencil.
struct DOmegaResult {
  Octonion<double> value;
  bool one_sided_r = false;
};

inline FunctionHandle stem_handle(const StemFunction<double>& f, std::string name = "stem") {
  return FunctionHandle{f.signature(),
                        [f](const Octonion<double>& x) { return f.eval(x); },
                        nullptr,
                        std::move(name)};
}

inline FunctionHandle stem_handle(const StemFunction<Rational>& f, std::string name = "stem") {
  return stem_handle(to_double(f), std::move(name));
}

namespace detail {

inline void check_order(const FDScheme& s) {
  if (s.order != 2 && s.order != 4) throw std::invalid_argument("FDScheme: order must be 2 or 4");
  if (!(s.h > 0)) throw std::invalid_argument("FDScheme: step must be positive");
}

/// Point on the slice of s displaced along coordinate `var` (0..p = x_i,
/// p+1 = radial) by t; omega stays frozen.
inline Octonion<double> slice_displaced(const SplitPoint<double>& s, int var, double t) {
  SplitPoint<double> d = s;
  if (var <= s.sig.p)
    d.xp[var] += t;
  else
    d.r += t;
  return embed(d);
}

template <class G>
Octonion<double> central_diff(const G& g, double h, int order) {
  if (order == 2) return (g(h) - g(-h)) * (0.5 / h);
  return (g(-2 * h) - g(2 * h) + 8.0 * (g(h) - g(-h))) * (1.0 / (12 * h));
}

template <class G>
Octonion<double> forward_diff(const G& g, double h, int order) {
  if (order == 2) return (-3.0 * g(0.0) + 4.0 * g(h) - g(2 * h)) * (0.5 / h);
  return (-25.0 * g(0.0) + 48.0 * g(h) - 36.0 * g(2 * h) + 16.0 * g(3 * h) - 3.0 * g(4 * h)) *
         (1.0 / (12 * h));
}

template <class G>
Octonion<double> central_diff2(const G& g, double h, int order) {
  if (order == 2) return (g(h) - 2.0 * g(0.0) + g(-h)) * (1.0 / (h * h));
  return (-g(2 * h) + 16.0 * g(h) - 30.0 * g(0.0) + 16.0 * g(-h) - g(-2 * h)) *
         (1.0 / (12 * h * h));
}

/// First derivative along one slice coordinate, with a one-sided fallback
/// when the centered stencil would leave the handle's domain.
inline Octonion<double> slice_partial(const FunctionHandle& f, const SplitPoint<double>& s, int var,
                                      const FDScheme& scheme, bool* one_sided) {
  auto g = [&](double t) { return f.eval(slice_displaced(s, var, t)); };
  const int reach = scheme.order == 2 ? 1 : 2;
  bool centered_ok = true;
  if (f.domain) {
    for (int m = -reach; m <= reach; ++m)
      if (m != 0 && !f.in_domain(slice_displaced(s, var, m * scheme.h))) centered_ok = false;
  }
  auto diff = [&](double h) {
    return centered_ok ? central_diff(g, h, scheme.order) : forward_diff(g, h, scheme.order);
  };
  if (!centered_ok && one_sided) *one_sided = true;
  if (!scheme.richardson) return diff(scheme.h);
  const Octonion<double> coarse = diff(scheme.h), fine = diff(scheme.h / 2);
  const double w = scheme.order == 2 ? 3.0 : 15.0;
  return ((scheme.order == 2 ? 4.0 : 16.0) * fine - coarse) * (1.0 / w);
}

}  // namespace detail

/// D_omega f = sum_i e_i d_i f + omega d_r f, differentiated along the slice
/// through s.omega (omega held fixed; the Gateaux reading of the operator).
inline DOmegaResult d_omega_numeric(const FunctionHandle& f, const SplitPoint<double>& s,
                                    const FDScheme& scheme = {}) {
  detail::check_order(scheme);
  DOmegaResult out;
  for (int i = 0; i <= s.sig.p; ++i) {
    Octonion<double> di = detail::slice_partial(f, s, i, scheme, nullptr);
    out.value += mul(Octonion<double>::basis(i), di);
  }
  Octonion<double> dr = detail::slice_partial(f, s, s.sig.p + 1, scheme, &out.one_sided_r);
  out.value += mul(s.omega, dr);
  return out;
}

/// Right operator: f D_omega = sum_i (d_i f) e_i + (d_r f) omega.
inline DOmegaResult d_omega_right_numeric(const FunctionHandle& f, const SplitPoint<double>& s,
                                          const FDScheme& scheme = {}) {
  detail::check_order(scheme);
  DOmegaResult out;
  for (int i = 0; i <= s.sig.p; ++i) {
    Octonion<double> di = detail::slice_partial(f, s, i, scheme, nullptr);
    out.value += mul(di, Octonion<double>::basis(i));
  }
  Octonion<double> dr = detail::slice_partial(f, s, s.sig.p + 1, scheme, &out.one_sided_r);
  out.value += mul(dr, s.omega);
  return out;
}

/// Exact D_omega of a stem-induced function:
///   (D_{x_p}F1 - d_r F2)(x') + omega ((conj(D)_{x_p}F2 + d_r F1)(x')).
template <class S>
Octonion<S> d_omega_exact(const StemFunction<S>& f, const SlicePoint<S>& xprime,
                          const Octonion<S>& omega) {
  auto res = cr_residual(f);
  VectorX<S> coords(f.signature().p + 2);
  for (int i = 0; i <= f.signature().p; ++i) coords[i] = xprime.xp[i];
  coords[f.signature().p + 1] = xprime.r;
  return res.first.eval(coords) + mul(omega, res.second.eval(coords));
}

/// Global (Frechet) form: theta-bar f = D_{x_p} f + (x_q/|x_q|^2) E_{x_q} f,
/// assembled from full 8-variable stencils; singular on R^{p+1}.
inline Octonion<double> global_theta(const FunctionHandle& f, const Octonion<double>& x,
                                     const FDScheme& scheme = {}) {
  detail::check_order(scheme);
  const int p = f.sig.p;
  Octonion<double> xq;
  for (int i = p + 1; i < 8; ++i) xq.coeff_ref(i) = x[i];
  const double nq = norm_sq(xq);
  if (nq == 0.0) throw std::domain_error("global_theta: point lies on the singular locus R^{p+1}");

  std::array<Octonion<double>, 8> partial;
  for (int i = 0; i < 8; ++i) {
    auto g = [&](double t) {
      Octonion<double> y = x;
      y.coeff_ref(i) += t;
      return f.eval(y);
    };
    partial[i] = detail::central_diff(g, scheme.h, scheme.order);
  }
  Octonion<double> out;
  for (int i = 0; i <= p; ++i) out += mul(Octonion<double>::basis(i), partial[i]);
  Octonion<double> euler_q;
  for (int i = p + 1; i < 8; ++i) euler_q += partial[i] * x[i];
  out += mul(xq * (1.0 / nq), euler_q);
  return out;
}

/// Laplacian over the p+2 slice coordinates; vanishes on slice-monogenic
/// functions (they are harmonic slice-by-slice).
inline Octonion<double> slice_laplacian_numeric(const FunctionHandle& f,
                                                const SplitPoint<double>& s,
                                                const FDScheme& scheme = {}) {
  detail::check_order(scheme);
  Octonion<double> out;
  for (int var = 0; var <= s.sig.p + 1; ++var) {
    auto g = [&](double t) { return f.eval(detail::slice_displaced(s, var, t)); };
    out += detail::central_diff2(g, scheme.h, scheme.order);
  }
  return out;
}

/// f(. - y) for a real-subspace shift y (length p+1).
inline FunctionHandle translate(const FunctionHandle& f, const VectorX<double>& y) {
  if (y.size() != f.sig.p + 1)
    throw std::invalid_argument("translate: shift must lie in R^{p+1}");
  Octonion<double> shift;
  for (int i = 0; i <= f.sig.p; ++i) shift.coeff_ref(i) = y[i];
  auto inner_eval = f.eval;
  auto inner_dom = f.domain;
  FunctionHandle out;
  out.sig = f.sig;
  out.name = f.name + "_translated";
  out.eval = [inner_eval, shift](const Octonion<double>& x) { return inner_eval(x - shift); };
  if (inner_dom) out.domain = [inner_dom, shift](const Octonion<double>& x) { return inner_dom(x - shift); };
  return out;
}

/// Multi-index coordinate derivative of a black-box handle via nested
/// central stencils; capped at |k| <= 2 where the noise is still acceptable.
inline FunctionHandle partial_k(const FunctionHandle& f, const MultiIndex& k,
                                const FDScheme& scheme = {}) {
  if (static_cast<int>(k.size()) != f.sig.p + 1)
    throw std::invalid_argument("partial_k: multi-index length must be p+1");
  if (!multi_nonnegative(k)) throw std::invalid_argument("partial_k: negative multi-index");
  const int order = multi_abs(k);
  if (order > 2)
    throw std::invalid_argument("partial_k: |k| > 2 unsupported on black-box handles");
  if (order == 0) return f;

  std::vector<int> vars;
  for (size_t i = 0; i < k.size(); ++i)
    for (int c = 0; c < k[i]; ++c) vars.push_back(static_cast<int>(i));

  FunctionHandle out;
  out.sig = f.sig;
  out.domain = f.domain;
  out.name = f.name + "_dk";
  auto inner = f.eval;
  if (order == 1) {
    const int v = vars[0];
    out.eval = [inner, v, scheme](const Octonion<double>& x) {
      auto g = [&](double t) {
        Octonion<double> y = x;
        y.coeff_ref(v) += t;
        return inner(y);
      };
      return detail::central_diff(g, scheme.h, scheme.order);
    };
    return out;
  }
  const int v0 = vars[0], v1 = vars[1];
  out.eval = [inner, v0, v1, scheme](const Octonion<double>& x) {
    auto first = [&](const Octonion<double>& z) {
      auto g = [&](double t) {
        Octonion<double> y = z;
        y.coeff_ref(v1) += t;
        return inner(y);
      };
      return detail::central_diff(g, scheme.h, scheme.order);
    };
    auto g2 = [&](double t) {
      Octonion<double> y = x;
      y.coeff_ref(v0) += t;
      return first(y);
    };
    return detail::central_diff(g2, scheme.h, scheme.order);
  };
  return out;
}

/// Exact multi-index derivative of a stem (any |k|).
template <class S>
StemFunction<S> partial_k(const StemFunction<S>& f, const MultiIndex& k) {
  if (static_cast<int>(k.size()) != f.signature().p + 1)
    throw std::invalid_argument("partial_k: multi-index length must be p+1");
  if (!multi_nonnegative(k)) throw std::invalid_argument("partial_k: negative multi-index");
  OctPolynomial<S> f1 = f.f1(), f2 = f.f2();
  for (size_t i = 0; i < k.size(); ++i)
    for (int c = 0; c < k[i]; ++c) {
      f1 = f1.derivative(static_cast<int>(i));
      f2 = f2.derivative(static_cast<int>(i));
    }
  return StemFunction<S>(f1, f2);
}

}  // namespace oslice
