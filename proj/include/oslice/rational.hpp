#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <cstdint>
#include <ostream>
#include <optional>
#include <stdexcept>
#include <string>

namespace oslice {

/// Arbitrary-precision rational scalar for the exact computation mode.
///
/// Thin value wrapper around GMP's mpq_class that keeps every value
/// canonicalized, so equality is plain structural comparison.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}                // NOLINT(google-explicit-constructor)
  Rational(long n) : v_(n) {}               // NOLINT(google-explicit-constructor)
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  /// Parses "num/den" or "num".
  explicit Rational(const std::string& s) : v_(s) { v_.canonicalize(); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  bool is_zero() const { return mpq_sgn(v_.get_mpq_t()) == 0; }
  int sign() const { return mpq_sgn(v_.get_mpq_t()); }

  double to_double() const { return v_.get_d(); }
  std::string str() const { return v_.get_str(); }
  const mpq_class& raw() const { return v_; }

  friend Rational abs(const Rational& a) { return Rational(mpq_class(::abs(a.v_))); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& a) {
    return os << a.v_.get_str();
  }

  /// Exact square root when numerator and denominator are perfect squares.
  std::optional<Rational> sqrt_exact() const {
    if (sign() < 0) return std::nullopt;
    const mpz_class num = v_.get_num(), den = v_.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
      return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return Rational(mpq_class(rn) / mpq_class(rd));
  }

  static Rational factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(mpq_class(f));
  }

  Rational pow(int e) const {
    if (e == 0) return Rational(1);
    if (e < 0) return Rational(1) / pow(-e);
    Rational base = *this, acc(1);
    for (int k = e; k > 0; k >>= 1) {
      if (k & 1) acc *= base;
      if (k > 1) base *= base;
    }
    return acc;
  }

 private:
  mpq_class v_;
};

/// Per-scalar-mode behavior shared by the algebra and polynomial layers.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool is_exact = true;
  static const char* mode_name() { return "exact"; }
  static bool is_zero(const Rational& v) { return v.is_zero(); }
  static double to_double(const Rational& v) { return v.to_double(); }
  static Rational from_int(long n) { return Rational(n); }
  static Rational from_ratio(long num, long den) { return Rational(num, den); }
  static Rational reciprocal_factorial(unsigned n) { return Rational(1) / Rational::factorial(n); }
};

template <>
struct scalar_traits<double> {
  static constexpr bool is_exact = false;
  static const char* mode_name() { return "float"; }
  static bool is_zero(double v) { return v == 0.0; }
  static double to_double(double v) { return v; }
  static double from_int(long n) { return static_cast<double>(n); }
  static double from_ratio(long num, long den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static double reciprocal_factorial(unsigned n) {
    double f = 1.0;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return 1.0 / f;
  }
};

}  // namespace oslice

namespace Eigen {

template <>
struct NumTraits<oslice::Rational> : GenericNumTraits<oslice::Rational> {
  typedef oslice::Rational Real;
  typedef oslice::Rational NonInteger;
  typedef oslice::Rational Nested;
  typedef oslice::Rational Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 60,
    MulCost = 60
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
