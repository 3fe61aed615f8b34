#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "oslice/slicegeom.hpp"

namespace oslice {

/// Exponent vector for the slice variables (x_0..x_p, r); r sits at index
/// p+1.
using Exponents = std::vector<int>;

/// Polynomial in (x_p, r) with octonion coefficients. Zero coefficients are
/// never stored; the term map is ordered, so iteration (and serialization)
/// is deterministic.
template <class S>
class OctPolynomial {
 public:
  using Scalar = S;
  using TermMap = std::map<Exponents, Octonion<S>>;

  OctPolynomial() = default;
  explicit OctPolynomial(SliceSignature sig) : sig_(sig) {}

  static OctPolynomial constant(SliceSignature sig, const Octonion<S>& c) {
    OctPolynomial p(sig);
    p.add_term(Exponents(sig.p + 2, 0), c);
    return p;
  }

  /// Monomial that is a single variable: x_i for var in 0..p, r for var p+1.
  static OctPolynomial variable(SliceSignature sig, int var) {
    OctPolynomial p(sig);
    Exponents e(sig.p + 2, 0);
    p.check_var(var);
    e[var] = 1;
    p.add_term(e, Octonion<S>::one());
    return p;
  }

  /// x_p^k = x_0^{k_0} ... x_p^{k_p} (no r-dependence).
  static OctPolynomial xp_monomial(SliceSignature sig, const std::vector<int>& k) {
    if (static_cast<int>(k.size()) != sig.p + 1)
      throw std::invalid_argument("xp_monomial: multi-index length must be p+1");
    OctPolynomial p(sig);
    Exponents e(sig.p + 2, 0);
    for (int i = 0; i <= sig.p; ++i) {
      if (k[i] < 0) throw std::invalid_argument("xp_monomial: negative exponent");
      e[i] = k[i];
    }
    p.add_term(e, Octonion<S>::one());
    return p;
  }

  SliceSignature signature() const { return sig_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int num_vars() const { return sig_.p + 2; }

  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int t = 0;
      for (int v : e) t += v;
      if (t > d) d = t;
    }
    return d;
  }

  int degree_in(int var) const {
    int d = 0;
    for (const auto& [e, c] : terms_)
      if (e[var] > d) d = e[var];
    return d;
  }

  void add_term(const Exponents& e, const Octonion<S>& c) {
    if (static_cast<int>(e.size()) != num_vars())
      throw std::invalid_argument("OctPolynomial: exponent arity mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend OctPolynomial operator+(const OctPolynomial& a, const OctPolynomial& b) {
    a.check_sig(b);
    OctPolynomial out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
  }

  friend OctPolynomial operator-(const OctPolynomial& a, const OctPolynomial& b) {
    a.check_sig(b);
    OctPolynomial out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, -c);
    return out;
  }

  friend OctPolynomial operator-(const OctPolynomial& a) {
    OctPolynomial out(a.sig_);
    for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, -c);
    return out;
  }

  friend OctPolynomial operator*(const S& s, const OctPolynomial& a) {
    OctPolynomial out(a.sig_);
    if (scalar_traits<S>::is_zero(s)) return out;
    for (const auto& [e, c] : a.terms_) out.add_term(e, c * s);
    return out;
  }

  /// Left-multiplies every coefficient by the octonion constant a.
  OctPolynomial left_scaled(const Octonion<S>& a) const {
    OctPolynomial out(sig_);
    for (const auto& [e, c] : terms_) out.add_term(e, mul(a, c));
    return out;
  }

  OctPolynomial right_scaled(const Octonion<S>& a) const {
    OctPolynomial out(sig_);
    for (const auto& [e, c] : terms_) out.add_term(e, mul(c, a));
    return out;
  }

  /// Product with coefficient order (a_coeff * b_coeff); the variables are
  /// real and central, so only the octonion coefficients carry order.
  friend OctPolynomial operator*(const OctPolynomial& a, const OctPolynomial& b) {
    a.check_sig(b);
    OctPolynomial out(a.sig_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(ea.size());
        for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, mul(ca, cb));
      }
    return out;
  }

  OctPolynomial derivative(int var) const {
    check_var(var);
    OctPolynomial out(sig_);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exponents d = e;
      d[var] -= 1;
      out.add_term(d, c * scalar_traits<S>::from_int(e[var]));
    }
    return out;
  }

  /// Substitutes values for the p+2 slice variables. Powers are memoized
  /// per call; exact in exact mode.
  Octonion<S> eval(const VectorX<S>& xprime) const {
    if (xprime.size() != num_vars())
      throw std::invalid_argument("OctPolynomial::eval: coordinate arity mismatch");
    std::vector<std::vector<S>> pows(num_vars());
    for (int v = 0; v < num_vars(); ++v) {
      const int d = degree_in(v);
      pows[v].resize(d + 1);
      pows[v][0] = S(1);
      for (int j = 1; j <= d; ++j) pows[v][j] = pows[v][j - 1] * xprime[v];
    }
    Octonion<S> acc;
    for (const auto& [e, c] : terms_) {
      S m = S(1);
      for (int v = 0; v < num_vars(); ++v)
        if (e[v] > 0) m *= pows[v][e[v]];
      acc += c * m;
    }
    return acc;
  }

  bool even_in_r() const { return parity_in_r(0); }
  bool odd_in_r() const { return parity_in_r(1); }

  bool depends_on_r() const {
    for (const auto& [e, c] : terms_)
      if (e[num_vars() - 1] != 0) return true;
    return false;
  }

 private:
  bool parity_in_r(int residue) const {
    const int rv = num_vars() - 1;
    for (const auto& [e, c] : terms_)
      if (e[rv] % 2 != residue) return false;
    return true;
  }

  void check_var(int var) const {
    if (var < 0 || var >= num_vars())
      throw std::invalid_argument("OctPolynomial: unknown variable index");
  }

  void check_sig(const OctPolynomial& o) const {
    if (sig_ != o.sig_) throw std::invalid_argument("OctPolynomial: slice signature mismatch");
  }

  SliceSignature sig_;
  TermMap terms_;
};

/// D_{x_p} P = sum_i e_i (d_i P): each partial is multiplied on the left by
/// the basis element.
template <class S>
OctPolynomial<S> apply_Dxp(const OctPolynomial<S>& p) {
  OctPolynomial<S> out(p.signature());
  for (int i = 0; i <= p.signature().p; ++i)
    out = out + p.derivative(i).left_scaled(Octonion<S>::basis(i));
  return out;
}

/// conj(D)_{x_p} P = d_0 P - sum_{i>=1} e_i (d_i P).
template <class S>
OctPolynomial<S> apply_Dxp_conj(const OctPolynomial<S>& p) {
  OctPolynomial<S> out = p.derivative(0);
  for (int i = 1; i <= p.signature().p; ++i)
    out = out - p.derivative(i).left_scaled(Octonion<S>::basis(i));
  return out;
}

template <class S>
OctPolynomial<S> laplacian_xp(const OctPolynomial<S>& p) {
  OctPolynomial<S> out(p.signature());
  for (int i = 0; i <= p.signature().p; ++i) out = out + p.derivative(i).derivative(i);
  return out;
}

template <class S>
OctPolynomial<S> derivative_r(const OctPolynomial<S>& p) {
  return p.derivative(p.signature().p + 2 - 1);
}

inline OctPolynomial<double> to_double(const OctPolynomial<Rational>& p) {
  OctPolynomial<double> out(p.signature());
  for (const auto& [e, c] : p.terms()) out.add_term(e, to_double(c));
  return out;
}

}  // namespace oslice
