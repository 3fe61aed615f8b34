#pragma once

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "oslice/rational.hpp"

namespace oslice {

/// Signed basis-product table e_i * e_j = sign(i,j) * e_index(i,j).
///
/// Generated once from the seven oriented triples
///   Xi = {(1,2,3),(1,4,5),(2,4,6),(3,4,7),(5,3,6),(6,1,7),(7,2,5)}
/// via e_i e_j = -delta_ij + eps_ijk e_k, where eps is +-1 on the
/// permutations of Xi (sign of the permutation) and 0 otherwise.
/// Hand-coded tables are deliberately not used anywhere.
struct BasisTable {
  std::array<std::array<int, 8>, 8> sign{};
  std::array<std::array<int, 8>, 8> index{};

  static constexpr std::array<std::array<int, 3>, 7> triples = {
      {{1, 2, 3}, {1, 4, 5}, {2, 4, 6}, {3, 4, 7}, {5, 3, 6}, {6, 1, 7}, {7, 2, 5}}};

  BasisTable() {
    std::array<std::array<bool, 8>, 8> filled{};
    auto set = [&](int i, int j, int s, int k) {
      if (filled[i][j] && (sign[i][j] != s || index[i][j] != k))
        throw std::logic_error("basis table: inconsistent generator set");
      sign[i][j] = s;
      index[i][j] = k;
      filled[i][j] = true;
    };
    for (int j = 0; j < 8; ++j) set(0, j, +1, j);
    for (int i = 1; i < 8; ++i) {
      set(i, 0, +1, i);
      set(i, i, -1, 0);
    }
    for (const auto& t : triples) {
      const int a = t[0], b = t[1], c = t[2];
      // even permutations
      set(a, b, +1, c);
      set(b, c, +1, a);
      set(c, a, +1, b);
      // odd permutations
      set(b, a, -1, c);
      set(c, b, -1, a);
      set(a, c, -1, b);
    }
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        if (!filled[i][j]) throw std::logic_error("basis table: generator set incomplete");
  }
};

inline const BasisTable& basis_table() {
  static const BasisTable table;
  return table;
}

/// Octonion over a pluggable scalar (exact Rational or double).
///
/// Immutable value type: coefficients c0..c7 on the basis e0=1, e1..e7.
template <class S>
class Octonion {
 public:
  using Scalar = S;
  using Coeffs = Eigen::Matrix<S, 8, 1>;

  Octonion() { c_.setConstant(S(0)); }
  explicit Octonion(const Coeffs& c) : c_(c) {}
  explicit Octonion(const S& real) {
    c_.setConstant(S(0));
    c_[0] = real;
  }

  static Octonion zero() { return Octonion(); }
  static Octonion one() { return basis(0); }
  static Octonion basis(int i) {
    if (i < 0 || i > 7) throw std::out_of_range("Octonion::basis: index not in 0..7");
    Octonion e;
    e.c_[i] = S(1);
    return e;
  }

  const S& operator[](int i) const { return c_[i]; }
  const Coeffs& coeffs() const { return c_; }
  S& coeff_ref(int i) { return c_[i]; }

  bool is_zero() const {
    for (int i = 0; i < 8; ++i)
      if (!scalar_traits<S>::is_zero(c_[i])) return false;
    return true;
  }

  friend Octonion operator+(const Octonion& a, const Octonion& b) { return Octonion(Coeffs(a.c_ + b.c_)); }
  friend Octonion operator-(const Octonion& a, const Octonion& b) { return Octonion(Coeffs(a.c_ - b.c_)); }
  friend Octonion operator-(const Octonion& a) { return Octonion(Coeffs(-a.c_)); }
  friend Octonion operator*(const S& s, const Octonion& a) { return Octonion(Coeffs(s * a.c_)); }
  friend Octonion operator*(const Octonion& a, const S& s) { return Octonion(Coeffs(a.c_ * s)); }

  Octonion& operator+=(const Octonion& o) { c_ += o.c_; return *this; }
  Octonion& operator-=(const Octonion& o) { c_ -= o.c_; return *this; }

  friend bool operator==(const Octonion& a, const Octonion& b) {
    for (int i = 0; i < 8; ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }
  friend bool operator!=(const Octonion& a, const Octonion& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Octonion& a) {
    os << "(";
    for (int i = 0; i < 8; ++i) {
      if (i) os << ", ";
      if constexpr (scalar_traits<S>::is_exact)
        os << a.c_[i].str();
      else
        os << a.c_[i];
    }
    return os << ")";
  }

 private:
  Coeffs c_;
};

/// Bilinear product from the Xi-generated table. Zero coefficients of the
/// left factor are skipped; basis-sparse operands are common in the slice
/// calculus and exact-mode scalar products dominate the cost.
template <class S>
Octonion<S> mul(const Octonion<S>& a, const Octonion<S>& b) {
  const BasisTable& t = basis_table();
  Octonion<S> out;
  for (int i = 0; i < 8; ++i) {
    if (scalar_traits<S>::is_zero(a[i])) continue;
    for (int j = 0; j < 8; ++j) {
      if (scalar_traits<S>::is_zero(b[j])) continue;
      S term = a[i] * b[j];
      if (t.sign[i][j] > 0)
        out.coeff_ref(t.index[i][j]) += term;
      else
        out.coeff_ref(t.index[i][j]) -= term;
    }
  }
  return out;
}

/// Exact-mode product over a common denominator: both factors are lifted to
/// integer coordinate vectors, the 64 table terms run in integer arithmetic
/// with one gcd per output coefficient at the end. Several times faster than
/// coefficient-wise mpq arithmetic, which matters for the sampled-identity
/// batteries.
inline Octonion<Rational> mul(const Octonion<Rational>& a, const Octonion<Rational>& b) {
  const BasisTable& t = basis_table();
  mpz_class da(1), db(1);
  for (int i = 0; i < 8; ++i) {
    mpz_lcm(da.get_mpz_t(), da.get_mpz_t(), mpq_denref(a[i].raw().get_mpq_t()));
    mpz_lcm(db.get_mpz_t(), db.get_mpz_t(), mpq_denref(b[i].raw().get_mpq_t()));
  }
  std::array<mpz_class, 8> ia, ib, acc;
  for (int i = 0; i < 8; ++i) {
    mpz_divexact(ia[i].get_mpz_t(), da.get_mpz_t(), mpq_denref(a[i].raw().get_mpq_t()));
    ia[i] *= mpz_class(mpq_numref(a[i].raw().get_mpq_t()));
    mpz_divexact(ib[i].get_mpz_t(), db.get_mpz_t(), mpq_denref(b[i].raw().get_mpq_t()));
    ib[i] *= mpz_class(mpq_numref(b[i].raw().get_mpq_t()));
  }
  for (int i = 0; i < 8; ++i) {
    if (mpz_sgn(ia[i].get_mpz_t()) == 0) continue;
    for (int j = 0; j < 8; ++j) {
      if (mpz_sgn(ib[j].get_mpz_t()) == 0) continue;
      mpz_class& c = acc[t.index[i][j]];
      if (t.sign[i][j] > 0)
        mpz_addmul(c.get_mpz_t(), ia[i].get_mpz_t(), ib[j].get_mpz_t());
      else
        mpz_submul(c.get_mpz_t(), ia[i].get_mpz_t(), ib[j].get_mpz_t());
    }
  }
  const mpz_class den = da * db;
  Eigen::Matrix<Rational, 8, 1> out;
  for (int k = 0; k < 8; ++k) out[k] = Rational(mpq_class(acc[k], den));
  return Octonion<Rational>(out);
}

template <class S>
Octonion<S> conj(const Octonion<S>& x) {
  typename Octonion<S>::Coeffs c = -x.coeffs();
  c[0] = x[0];
  return Octonion<S>(c);
}

/// Squared modulus, |x|^2 = x conj(x) = sum of squared coefficients.
template <class S>
S norm_sq(const Octonion<S>& x) {
  S acc = S(0);
  for (int i = 0; i < 8; ++i) acc += x[i] * x[i];
  return acc;
}

inline double norm(const Octonion<double>& x) { return std::sqrt(norm_sq(x)); }

template <class S>
Octonion<S> inverse(const Octonion<S>& x) {
  const S n = norm_sq(x);
  if (scalar_traits<S>::is_zero(n)) throw std::domain_error("division by zero octonion");
  return conj(x) * (S(1) / n);
}

/// [a,b,c] = (ab)c - a(bc); trilinear and alternating.
template <class S>
Octonion<S> associator(const Octonion<S>& a, const Octonion<S>& b, const Octonion<S>& c) {
  return mul(mul(a, b), c) - mul(a, mul(b, c));
}

/// [a,b] = ab - ba.
template <class S>
Octonion<S> commutator(const Octonion<S>& a, const Octonion<S>& b) {
  return mul(a, b) - mul(b, a);
}

/// Integer power via repeated multiplication; associativity of powers of a
/// single element is guaranteed by the Artin theorem.
template <class S>
Octonion<S> pow(const Octonion<S>& x, int n) {
  if (n < 0) return pow(inverse(x), -n);
  Octonion<S> acc = Octonion<S>::one();
  for (int i = 0; i < n; ++i) acc = mul(acc, x);
  return acc;
}

/// Matrix of the operator c -> a*c on basis coordinates.
///
/// Composition is matrix product and deliberately kept explicit in the API:
/// compose(L_a, L_b) != left_mul(a*b) in general, which is exactly the
/// non-associativity the operator-valued Cauchy kernel has to track.
template <class S>
class LeftMulOperator {
 public:
  using Matrix = Eigen::Matrix<S, 8, 8>;

  LeftMulOperator() { m_.setConstant(S(0)); }
  explicit LeftMulOperator(const Matrix& m) : m_(m) {}

  static LeftMulOperator identity() {
    LeftMulOperator id;
    for (int i = 0; i < 8; ++i) id.m_(i, i) = S(1);
    return id;
  }

  const Matrix& matrix() const { return m_; }

  Octonion<S> apply(const Octonion<S>& c) const {
    return Octonion<S>(typename Octonion<S>::Coeffs(m_ * c.coeffs()));
  }

  friend bool operator==(const LeftMulOperator& a, const LeftMulOperator& b) {
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        if (!(a.m_(i, j) == b.m_(i, j))) return false;
    return true;
  }
  friend bool operator!=(const LeftMulOperator& a, const LeftMulOperator& b) { return !(a == b); }

 private:
  Matrix m_;
};

template <class S>
LeftMulOperator<S> left_mul(const Octonion<S>& a) {
  const BasisTable& t = basis_table();
  typename LeftMulOperator<S>::Matrix m;
  m.setConstant(S(0));
  for (int j = 0; j < 8; ++j)
    for (int i = 0; i < 8; ++i) {
      if (scalar_traits<S>::is_zero(a[i])) continue;
      if (t.sign[i][j] > 0)
        m(t.index[i][j], j) += a[i];
      else
        m(t.index[i][j], j) -= a[i];
    }
  return LeftMulOperator<S>(m);
}

/// compose(L, M) applies M first, then L.
template <class S>
LeftMulOperator<S> compose(const LeftMulOperator<S>& l, const LeftMulOperator<S>& m) {
  return LeftMulOperator<S>(typename LeftMulOperator<S>::Matrix(l.matrix() * m.matrix()));
}

template <class S>
Octonion<S> to_octonion(const Eigen::Matrix<S, 8, 1>& c) {
  return Octonion<S>(c);
}

inline Octonion<double> to_double(const Octonion<Rational>& x) {
  Eigen::Matrix<double, 8, 1> c;
  for (int i = 0; i < 8; ++i) c[i] = x[i].to_double();
  return Octonion<double>(c);
}

inline Octonion<double> to_double(const Octonion<double>& x) { return x; }

}  // namespace oslice
