#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <vector>

#include "oslice/stem.hpp"

namespace oslice {

/// Multi-index k in Z^{p+1}; negative entries act as sentinels (P_k = 0).
using MultiIndex = std::vector<int>;

inline int multi_abs(const MultiIndex& k) { return std::accumulate(k.begin(), k.end(), 0); }

inline bool multi_nonnegative(const MultiIndex& k) {
  return std::all_of(k.begin(), k.end(), [](int v) { return v >= 0; });
}

template <class S>
S multi_factorial(const MultiIndex& k) {
  S f = S(1);
  for (int v : k)
    for (int j = 2; j <= v; ++j) f *= scalar_traits<S>::from_int(j);
  return f;
}

inline MultiIndex unit_index(int len, int i) {
  MultiIndex e(len, 0);
  e[i] = 1;
  return e;
}

inline MultiIndex minus_unit(const MultiIndex& k, int i) {
  MultiIndex out = k;
  out[i] -= 1;
  return out;
}

/// All k in N^{slots} with |k| = degree, lexicographic order.
inline std::vector<MultiIndex> multi_indices_of_degree(int slots, int degree) {
  std::vector<MultiIndex> out;
  MultiIndex cur(slots, 0);
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == slots - 1) {
      cur[pos] = remaining;
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      cur[pos] = v;
      rec(pos + 1, remaining - v);
    }
  };
  if (slots == 0) return out;
  rec(0, degree);
  return out;
}

enum class FueterSide { left, right };

/// Fueter variable z_l = x_l + r (omega e_l), or x_l + r (e_l omega) for
/// the right variant. e_0 is central, so z_0 is the same on both sides.
template <class S>
Octonion<S> fueter_var(int ell, const SplitPoint<S>& s, FueterSide side = FueterSide::left) {
  if (ell < 0 || ell > s.sig.p) throw std::out_of_range("fueter_var: index must be in 0..p");
  const Octonion<S> e = Octonion<S>::basis(ell);
  Octonion<S> img = (side == FueterSide::left) ? mul(s.omega, e) : mul(e, s.omega);
  Octonion<S> z = img * s.r;
  z.coeff_ref(0) += s.xp[ell];
  return z;
}

/// Binary association tree on n ordered factor slots. Leaves are the slots
/// in order; evaluation multiplies per the tree shape.
class AssocTree {
 public:
  static AssocTree leaf() {
    AssocTree t;
    t.nodes_.push_back({-1, -1});
    t.root_ = 0;
    return t;
  }

  /// ((x1 x2) x3) ... xn
  static AssocTree l_fold(int n) {
    check_arity(n);
    AssocTree t;
    int acc = t.add_leaf();
    for (int i = 1; i < n; ++i) acc = t.add_node(acc, t.add_leaf());
    t.root_ = acc;
    return t;
  }

  /// x1 (... (x_{n-1} xn))
  static AssocTree r_fold(int n) {
    check_arity(n);
    AssocTree t;
    std::vector<int> leaves(n);
    for (int i = 0; i < n; ++i) leaves[i] = t.add_leaf();
    int acc = leaves[n - 1];
    for (int i = n - 2; i >= 0; --i) acc = t.add_node(leaves[i], acc);
    t.root_ = acc;
    return t;
  }

  /// All Catalan(n-1) association orders on n slots, enumerated as
  /// (left size, right size) splits.
  static std::vector<AssocTree> enumerate(int n) {
    check_arity(n);
    std::function<std::vector<AssocTree>(int)> gen = [&](int m) {
      std::vector<AssocTree> res;
      if (m == 1) {
        res.push_back(AssocTree::leaf());
        return res;
      }
      for (int lsize = 1; lsize < m; ++lsize) {
        auto lefts = gen(lsize);
        auto rights = gen(m - lsize);
        for (const auto& lt : lefts)
          for (const auto& rt : rights) {
            AssocTree t;
            int l = t.graft(lt);
            int r = t.graft(rt);
            t.root_ = t.add_node(l, r);
            res.push_back(std::move(t));
          }
      }
      return res;
    };
    return gen(n);
  }

  int leaf_count() const {
    int n = 0;
    for (const auto& nd : nodes_)
      if (nd.left < 0) ++n;
    return n;
  }

  template <class S>
  Octonion<S> apply(const std::vector<Octonion<S>>& factors) const {
    if (static_cast<int>(factors.size()) != leaf_count())
      throw std::invalid_argument("AssocTree::apply: factor count does not match leaves");
    int next_leaf = 0;
    return eval_node<S>(root_, factors, next_leaf);
  }

 private:
  struct Node {
    int left, right;  // both -1 for a leaf
  };

  static void check_arity(int n) {
    if (n < 1) throw std::invalid_argument("AssocTree: need at least one factor");
  }

  int add_leaf() {
    nodes_.push_back({-1, -1});
    return static_cast<int>(nodes_.size()) - 1;
  }

  int add_node(int l, int r) {
    nodes_.push_back({l, r});
    return static_cast<int>(nodes_.size()) - 1;
  }

  int graft(const AssocTree& o) {
    const int offset = static_cast<int>(nodes_.size());
    for (const auto& nd : o.nodes_)
      nodes_.push_back({nd.left < 0 ? -1 : nd.left + offset, nd.right < 0 ? -1 : nd.right + offset});
    return o.root_ + offset;
  }

  template <class S>
  Octonion<S> eval_node(int idx, const std::vector<Octonion<S>>& factors, int& next_leaf) const {
    const Node& nd = nodes_[idx];
    if (nd.left < 0) return factors[next_leaf++];
    Octonion<S> l = eval_node<S>(nd.left, factors, next_leaf);
    Octonion<S> r = eval_node<S>(nd.right, factors, next_leaf);
    return mul(l, r);
  }

  std::vector<Node> nodes_;
  int root_ = -1;
};

template <class S>
Octonion<S> ordered_product(const std::vector<Octonion<S>>& factors, const AssocTree& tree) {
  return tree.apply(factors);
}

/// Sorted slot list (j_1 <= ... <= j_k) realizing the multi-index k.
inline std::vector<int> alignment_of(const MultiIndex& k) {
  std::vector<int> a;
  for (size_t i = 0; i < k.size(); ++i)
    for (int c = 0; c < k[i]; ++c) a.push_back(static_cast<int>(i));
  return a;
}

enum class PermutationStrategy {
  distinct,  // multiset permutations, each arrangement once (library path)
  all        // all |k|! slot orderings, each arrangement k! times (oracle)
};

/// Symmetrized Fueter polynomial value
///   P_k(x) = (1/|k|!) sum over the |k|!/k! distinguishable permutations of
///            the Fueter-variable products, taken in the given association
///            order.
/// P_0 = 1, and any negative entry of k gives 0. The result does not depend
/// on the tree; the oracle strategy enumerates all |k|! orderings and
/// rescales by 1/k!.
template <class S>
Octonion<S> fueter_poly_eval(const MultiIndex& k, const SplitPoint<S>& s, const AssocTree& tree,
                             FueterSide side = FueterSide::left,
                             PermutationStrategy strategy = PermutationStrategy::distinct) {
  if (static_cast<int>(k.size()) != s.sig.p + 1)
    throw std::invalid_argument("fueter_poly_eval: multi-index length must be p+1");
  if (!multi_nonnegative(k)) return Octonion<S>::zero();
  const int n = multi_abs(k);
  if (n == 0) return Octonion<S>::one();

  std::vector<Octonion<S>> z(s.sig.p + 1);
  for (int ell = 0; ell <= s.sig.p; ++ell) z[ell] = fueter_var(ell, s, side);

  Octonion<S> acc;
  std::vector<Octonion<S>> factors(n);
  if (strategy == PermutationStrategy::distinct) {
    std::vector<int> slots = alignment_of(k);
    do {
      for (int i = 0; i < n; ++i) factors[i] = z[slots[i]];
      acc += tree.apply(factors);
    } while (std::next_permutation(slots.begin(), slots.end()));
    S scale = S(1) / multi_factorial<S>(MultiIndex{n});
    return acc * scale;
  }

  const std::vector<int> base = alignment_of(k);
  std::vector<int> positions(n);
  std::iota(positions.begin(), positions.end(), 0);
  do {
    for (int i = 0; i < n; ++i) factors[i] = z[base[positions[i]]];
    acc += tree.apply(factors);
  } while (std::next_permutation(positions.begin(), positions.end()));
  S scale = S(1) / (multi_factorial<S>(MultiIndex{n}) * multi_factorial<S>(k));
  return acc * scale;
}

/// Symmetrized product with a trailing constant factor a, the form whose
/// tree-independence the theory actually states.
template <class S>
Octonion<S> fueter_poly_eval_appended(const MultiIndex& k, const SplitPoint<S>& s,
                                      const Octonion<S>& a, const AssocTree& tree,
                                      FueterSide side = FueterSide::left) {
  if (!multi_nonnegative(k)) return Octonion<S>::zero();
  const int n = multi_abs(k);
  if (n == 0) return a;
  std::vector<Octonion<S>> z(s.sig.p + 1);
  for (int ell = 0; ell <= s.sig.p; ++ell) z[ell] = fueter_var(ell, s, side);
  Octonion<S> acc;
  std::vector<int> slots = alignment_of(k);
  std::vector<Octonion<S>> factors(n + 1);
  do {
    for (int i = 0; i < n; ++i) factors[i] = z[slots[i]];
    factors[n] = a;
    acc += tree.apply(factors);
  } while (std::next_permutation(slots.begin(), slots.end()));
  S scale = S(1) / multi_factorial<S>(MultiIndex{n});
  return acc * scale;
}

/// Generalized partial-slice Cauchy-Kovalevskaya extension of a polynomial
/// f0(x_p):
///   F1 = sum_k r^{2k}/(2k)! (-Lap)^k f0
///   F2 = sum_k r^{2k+1}/(2k+1)! (-Lap)^k (D_{x_p} f0)
/// The series terminates for polynomials, and the result satisfies the
/// generalized Cauchy-Riemann system exactly.
template <class S>
StemFunction<S> ck_extension(const OctPolynomial<S>& f0) {
  if (f0.depends_on_r()) throw std::invalid_argument("ck_extension: f0 must not depend on r");
  const SliceSignature sig = f0.signature();
  const int rv = sig.p + 1;

  OctPolynomial<S> f1(sig), f2(sig);
  OctPolynomial<S> lap_even = f0;                // (-Lap)^k f0
  OctPolynomial<S> lap_odd = apply_Dxp(f0);      // (-Lap)^k (D f0)
  for (int k = 0;; ++k) {
    if (lap_even.is_zero() && lap_odd.is_zero()) break;
    OctPolynomial<S> r_even = OctPolynomial<S>::variable(sig, rv);
    // r^{2k} and r^{2k+1} monomials
    Exponents e_even(sig.p + 2, 0), e_odd(sig.p + 2, 0);
    e_even[rv] = 2 * k;
    e_odd[rv] = 2 * k + 1;
    OctPolynomial<S> mon_even(sig), mon_odd(sig);
    mon_even.add_term(e_even, Octonion<S>::one());
    mon_odd.add_term(e_odd, Octonion<S>::one());

    f1 = f1 + scalar_traits<S>::reciprocal_factorial(2 * k) * (mon_even * lap_even);
    f2 = f2 + scalar_traits<S>::reciprocal_factorial(2 * k + 1) * (mon_odd * lap_odd);

    lap_even = -laplacian_xp(lap_even);
    lap_odd = -laplacian_xp(lap_odd);
  }
  return StemFunction<S>(f1, f2);
}

/// V_k = CK[x_p^k] / k!, the canonical stem form of P_k.
template <class S>
StemFunction<S> v_poly(const MultiIndex& k, SliceSignature sig) {
  if (static_cast<int>(k.size()) != sig.p + 1)
    throw std::invalid_argument("v_poly: multi-index length must be p+1");
  if (!multi_nonnegative(k)) throw std::invalid_argument("v_poly: negative multi-index");
  const S scale = S(1) / multi_factorial<S>(k);
  return scale * ck_extension(OctPolynomial<S>::xp_monomial(sig, k));
}

/// V_{k - eps_i} with the sentinel convention: zero stem when the shifted
/// index has a negative entry.
template <class S>
StemFunction<S> v_poly_or_zero(const MultiIndex& k, SliceSignature sig) {
  if (!multi_nonnegative(k)) return constant_stem(sig, Octonion<S>::zero());
  return v_poly<S>(k, sig);
}

}  // namespace oslice
