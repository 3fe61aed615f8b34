#pragma once

#include <functional>
#include <string>
#include <utility>

#include <json.hpp>

#include "oslice/polynomial.hpp"

namespace oslice {

/// Polynomial stem function F = (F1, F2) with F1 even and F2 odd in r,
/// inducing f(x) = F1(x') + omega F2(x') on the p-symmetric completion.
///
/// The omega factor is never stored in the polynomials; it enters only in
/// the induced evaluation, which keeps the one non-associative
/// multiplication site explicit.
template <class S>
class StemFunction {
 public:
  StemFunction(OctPolynomial<S> f1, OctPolynomial<S> f2)
      : f1_(std::move(f1)), f2_(std::move(f2)) {
    if (f1_.signature() != f2_.signature())
      throw std::invalid_argument("StemFunction: component signature mismatch");
    if (!f1_.even_in_r() || !f2_.odd_in_r())
      throw std::invalid_argument("not a stem function: F1 must be even and F2 odd in r");
  }

  const OctPolynomial<S>& f1() const { return f1_; }
  const OctPolynomial<S>& f2() const { return f2_; }
  SliceSignature signature() const { return f1_.signature(); }
  int degree() const { return std::max(f1_.degree(), f2_.degree()); }

  /// Value at slice coordinates (x_p, r) on the slice through eta; r may be
  /// signed, with (x_p, -r) on H_eta meaning the point x_p + |r|(-eta).
  Octonion<S> eval_slice(const VectorX<S>& xprime, const Octonion<S>& eta) const {
    return f1_.eval(xprime) + mul(eta, f2_.eval(xprime));
  }

  Octonion<S> eval_split(const SplitPoint<S>& s) const {
    if (s.sig != signature()) throw std::invalid_argument("StemFunction: slice signature mismatch");
    VectorX<S> xprime(s.sig.p + 2);
    for (int i = 0; i <= s.sig.p; ++i) xprime[i] = s.xp[i];
    xprime[s.sig.p + 1] = s.r;
    return eval_slice(xprime, s.omega);
  }

  Octonion<S> eval(const Octonion<S>& x) const { return eval_split(split(x, signature())); }

  friend StemFunction operator+(const StemFunction& a, const StemFunction& b) {
    return StemFunction(a.f1_ + b.f1_, a.f2_ + b.f2_);
  }
  friend StemFunction operator-(const StemFunction& a, const StemFunction& b) {
    return StemFunction(a.f1_ - b.f1_, a.f2_ - b.f2_);
  }
  friend StemFunction operator*(const S& s, const StemFunction& a) {
    return StemFunction(s * a.f1_, s * a.f2_);
  }

 private:
  OctPolynomial<S> f1_, f2_;
};

template <class S>
StemFunction<S> constant_stem(SliceSignature sig, const Octonion<S>& c) {
  return StemFunction<S>(OctPolynomial<S>::constant(sig, c), OctPolynomial<S>(sig));
}

/// Generalized Cauchy-Riemann residual:
///   (D_{x_p} F1 - d_r F2,  conj(D)_{x_p} F2 + d_r F1).
/// F is generalized partial-slice regular iff both components vanish.
template <class S>
std::pair<OctPolynomial<S>, OctPolynomial<S>> cr_residual(const StemFunction<S>& f) {
  return {apply_Dxp(f.f1()) - derivative_r(f.f2()),
          apply_Dxp_conj(f.f2()) + derivative_r(f.f1())};
}

/// Two-slice reconstruction
///   f(x_p + r omega) = (f+ + f-)/2 + omega(eta((f- - f+)/2))
/// from the values f+- = f(x_p +- r eta).
template <class S>
Octonion<S> representation_formula(const Octonion<S>& fplus, const Octonion<S>& fminus,
                                   const Octonion<S>& eta, const Octonion<S>& omega) {
  const S half = scalar_traits<S>::from_ratio(1, 2);
  return (fplus + fminus) * half + mul(omega, mul(eta, (fminus - fplus) * half));
}

/// General two-point form:
///   (omega - w2)((w1 - w2)^{-1} f1) - (omega - w1)((w1 - w2)^{-1} f2).
template <class S>
Octonion<S> rep_formula_two_point(const Octonion<S>& f1, const Octonion<S>& f2,
                                  const Octonion<S>& w1, const Octonion<S>& w2,
                                  const Octonion<S>& omega) {
  if (w1 == w2) throw std::domain_error("rep_formula_two_point: degenerate pair omega1 = omega2");
  const Octonion<S> inv = inverse(w1 - w2);
  return mul(omega - w2, mul(inv, f1)) - mul(omega - w1, mul(inv, f2));
}

/// Recovers the stem values (F1, F2) at x' from the two slice values
/// f+- = f(x_p +- r eta); with eval_slice this realizes ext(f_eta).
template <class S>
std::pair<Octonion<S>, Octonion<S>> stem_from_slices(const Octonion<S>& fplus,
                                                     const Octonion<S>& fminus,
                                                     const Octonion<S>& eta) {
  const S half = scalar_traits<S>::from_ratio(1, 2);
  return {(fplus + fminus) * half, mul(eta, (fminus - fplus) * half)};
}

inline StemFunction<double> to_double(const StemFunction<Rational>& f) {
  return StemFunction<double>(to_double(f.f1()), to_double(f.f2()));
}

// --- serialization -------------------------------------------------------
//
// {"p": 1, "F1": [[[e0,...,e_p,e_r], [c0,...,c7]], ...], "F2": [...]}
// Exact coefficients are "num/den" strings, float coefficients numbers.

namespace detail {

template <class S>
nlohmann::json coeff_to_json(const S& c);

inline nlohmann::json coeff_to_json(const Rational& c) { return c.str(); }
inline nlohmann::json coeff_to_json(const double& c) { return c; }

template <class S>
S coeff_from_json(const nlohmann::json& j);

template <>
inline Rational coeff_from_json<Rational>(const nlohmann::json& j) {
  if (j.is_string()) return Rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw std::invalid_argument("stem json: exact mode requires integer or \"num/den\" coefficients");
}

template <>
inline double coeff_from_json<double>(const nlohmann::json& j) {
  if (j.is_string()) return Rational(j.get<std::string>()).to_double();
  return j.get<double>();
}

template <class S>
nlohmann::json poly_to_json(const OctPolynomial<S>& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : p.terms()) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (int i = 0; i < 8; ++i) coeffs.push_back(coeff_to_json(c[i]));
    terms.push_back(nlohmann::json::array({e, coeffs}));
  }
  return terms;
}

template <class S>
OctPolynomial<S> poly_from_json(SliceSignature sig, const nlohmann::json& j) {
  OctPolynomial<S> p(sig);
  for (const auto& term : j) {
    Exponents e = term.at(0).get<Exponents>();
    Eigen::Matrix<S, 8, 1> c;
    const auto& coeffs = term.at(1);
    if (coeffs.size() != 8) throw std::invalid_argument("stem json: coefficient arity must be 8");
    for (int i = 0; i < 8; ++i) c[i] = coeff_from_json<S>(coeffs.at(i));
    p.add_term(e, Octonion<S>(c));
  }
  return p;
}

}  // namespace detail

template <class S>
nlohmann::json stem_to_json(const StemFunction<S>& f) {
  nlohmann::json j;
  j["p"] = f.signature().p;
  j["F1"] = detail::poly_to_json(f.f1());
  j["F2"] = detail::poly_to_json(f.f2());
  return j;
}

template <class S>
StemFunction<S> stem_from_json(const nlohmann::json& j) {
  const SliceSignature sig(j.at("p").get<int>());
  return StemFunction<S>(detail::poly_from_json<S>(sig, j.at("F1")),
                         detail::poly_from_json<S>(sig, j.at("F2")));
}

}  // namespace oslice
