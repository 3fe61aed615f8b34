#pragma once

#include "oslice/cauchy.hpp"

namespace oslice {

/// Slice form of the Cauchy kernel and its coordinate derivatives:
///   value(x') = (numA(x') + eta numB(x')) / (sigma_{p+1} |x'|^m)
/// with numA valued in R^{p+1}, numB real, both with exact integer
/// coefficients. Derivatives follow
///   d_v (N / |x'|^m) = (d_v N |x'|^2 - m x'_v N) / |x'|^{m+2},
/// so the family is closed under d_{x_i} and d_r with m -> m + 2.
struct KernelDerivative {
  SliceSignature sig;
  OctPolynomial<Rational> numA;
  OctPolynomial<Rational> numB;
  int denom_exp = 0;

  // cached float copies for quadrature-speed evaluation
  OctPolynomial<double> numA_d;
  OctPolynomial<double> numB_d;

  KernelDerivative(SliceSignature s, OctPolynomial<Rational> a, OctPolynomial<Rational> b, int m)
      : sig(s), numA(std::move(a)), numB(std::move(b)), denom_exp(m),
        numA_d(to_double(numA)), numB_d(to_double(numB)) {}

  /// Value on the slice through eta at signed slice coordinates x'.
  Octonion<double> eval(const Eigen::VectorXd& xprime, const Octonion<double>& eta) const {
    const double nsq = xprime.squaredNorm();
    if (nsq == 0.0) throw std::domain_error("KernelDerivative: singular at the origin");
    Eigen::VectorXd coords = xprime;
    const double scale = 1.0 / (sigma(sig.p) * std::pow(nsq, 0.5 * denom_exp));
    const Octonion<double> a = numA_d.eval(coords);
    const Octonion<double> b = numB_d.eval(coords);
    return (a + eta * b[0]) * scale;
  }
};

/// The kernel E itself in stem-like slice form:
///   numA = conj(x_p), numB = -r, m = p+2 (all up to the 1/sigma factor).
inline KernelDerivative kernel_slice_form(SliceSignature sig) {
  OctPolynomial<Rational> a(sig), b(sig);
  Exponents e(sig.p + 2, 0);
  e[0] = 1;
  a.add_term(e, Octonion<Rational>::one());
  for (int i = 1; i <= sig.p; ++i) {
    Exponents ei(sig.p + 2, 0);
    ei[i] = 1;
    a.add_term(ei, -Octonion<Rational>::basis(i));
  }
  Exponents er(sig.p + 2, 0);
  er[sig.p + 1] = 1;
  b.add_term(er, -Octonion<Rational>::one());
  return KernelDerivative(sig, a, b, sig.p + 2);
}

/// |x'|^2 as a polynomial over the slice coordinates.
inline OctPolynomial<Rational> slice_norm_sq_poly(SliceSignature sig) {
  OctPolynomial<Rational> n(sig);
  for (int v = 0; v <= sig.p + 1; ++v) {
    Exponents e(sig.p + 2, 0);
    e[v] = 2;
    n.add_term(e, Octonion<Rational>::one());
  }
  return n;
}

/// d/d(var) of a kernel derivative; var in 0..p are the x_i, var p+1 is r.
inline KernelDerivative kernel_partial(const KernelDerivative& kd, int var) {
  const SliceSignature sig = kd.sig;
  const OctPolynomial<Rational> nsq = slice_norm_sq_poly(sig);
  const OctPolynomial<Rational> xv = OctPolynomial<Rational>::variable(sig, var);
  const Rational m = Rational(kd.denom_exp);
  OctPolynomial<Rational> a = kd.numA.derivative(var) * nsq - m * (xv * kd.numA);
  OctPolynomial<Rational> b = kd.numB.derivative(var) * nsq - m * (xv * kd.numB);
  return KernelDerivative(sig, std::move(a), std::move(b), kd.denom_exp + 2);
}

/// Q_k = (-1)^{|k|} d_k E, computed symbolically; Q_0 = E.
inline KernelDerivative q_kernel(const MultiIndex& k, SliceSignature sig) {
  if (static_cast<int>(k.size()) != sig.p + 1)
    throw std::invalid_argument("q_kernel: multi-index length must be p+1");
  if (!multi_nonnegative(k)) throw std::invalid_argument("q_kernel: negative multi-index");
  KernelDerivative kd = kernel_slice_form(sig);
  int total = 0;
  for (size_t i = 0; i < k.size(); ++i)
    for (int c = 0; c < k[i]; ++c) {
      kd = kernel_partial(kd, static_cast<int>(i));
      ++total;
    }
  if (total % 2 == 1) {
    kd.numA = -kd.numA;
    kd.numB = -kd.numB;
    kd.numA_d = to_double(kd.numA);
    kd.numB_d = to_double(kd.numB);
  }
  return kd;
}

}  // namespace oslice
